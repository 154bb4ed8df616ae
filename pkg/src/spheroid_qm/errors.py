"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ValidationError(ValueError):
    """An input object violates its geometric invariant (e.g. off-surface point)."""


class ConvergenceError(RuntimeError):
    """Adaptive quadrature hit its depth limit before meeting the tolerance.

    The best available estimate is kept on the exception so callers can
    decide whether it is usable.
    """

    def __init__(self, message, estimate=None, err_est=None):
        super().__init__(message)
        self.estimate = estimate
        self.err_est = err_est


class ResolutionError(RuntimeError):
    """A grid is too coarse to resolve the requested state."""

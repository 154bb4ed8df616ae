"""Adaptive Gauss quadrature, central differences and a tridiagonal eigenvalue kernel."""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import ConvergenceError, DomainError

__all__ = ["QuadratureSpec", "integrate", "central_diff", "eig_tridiag"]

TOL_ENV_VAR = "SPHEROID_QUAD_TOL"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for :func:`integrate`.

    ``base_order`` is the number of Gauss-Legendre nodes per panel; the
    error estimate compares it against a rule of roughly half the order.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    base_order: int = 31
    max_depth: int = 40

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be >= 1")
        if self.base_order < 3:
            raise DomainError("base_order must be >= 3")

    @classmethod
    def from_env(cls, **overrides) -> "QuadratureSpec":
        """Defaults, with ``rel_tol`` taken from $SPHEROID_QUAD_TOL if set."""
        raw = os.environ.get(TOL_ENV_VAR)
        if raw is not None and "rel_tol" not in overrides:
            try:
                overrides["rel_tol"] = float(raw)
            except ValueError as exc:
                raise DomainError(f"{TOL_ENV_VAR}={raw!r} is not a number") from exc
        return cls(**overrides)


@lru_cache(maxsize=None)
def _gauss_pair(order: int):
    hi = np.polynomial.legendre.leggauss(order)
    lo = np.polynomial.legendre.leggauss(order // 2)
    return hi, lo


def _panel(f, a, b, rules):
    (xh, wh), (xl, wl) = rules
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    fh = np.asarray(f(mid + half * xh), dtype=float)
    fl = np.asarray(f(mid + half * xl), dtype=float)
    if fh.shape != xh.shape or fl.shape != xl.shape:
        raise DomainError("integrand must map an array of nodes to an array of the same shape")
    hi = half * float(np.dot(wh, fh))
    lo = half * float(np.dot(wl, fl))
    return hi, abs(hi - lo)


def integrate(f, lo: float, hi: float, spec: QuadratureSpec | None = None):
    """Integrate a vectorized ``f`` over [lo, hi].

    Globally adaptive bisection: the panel with the largest error estimate is
    split until the summed estimate meets ``max(abs_tol, rel_tol*|I|)``.
    Nodes are interior, so integrable endpoint singularities need no special
    handling. Returns ``(value, err_est)``.
    """
    spec = spec or QuadratureSpec()
    if not lo < hi:
        raise DomainError(f"integrate needs lo < hi, got [{lo}, {hi}]")
    rules = _gauss_pair(spec.base_order)

    value, err = _panel(f, lo, hi, rules)
    # heap entries: (-err, lo, hi, depth, value, err); the lo key keeps pops deterministic
    heap = [(-err, lo, hi, 0, value, err)]
    total, total_err = value, err
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        _, a, b, depth, v, e = heapq.heappop(heap)
        if depth >= spec.max_depth:
            raise ConvergenceError(
                f"max_depth={spec.max_depth} reached on [{a:.6g}, {b:.6g}] "
                f"with error estimate {total_err:.3g}",
                estimate=total,
                err_est=total_err,
            )
        m = 0.5 * (a + b)
        v1, e1 = _panel(f, a, m, rules)
        v2, e2 = _panel(f, m, b, rules)
        heapq.heappush(heap, (-e1, a, m, depth + 1, v1, e1))
        heapq.heappush(heap, (-e2, m, b, depth + 1, v2, e2))
        # re-sum in panel order instead of updating incrementally, so the result
        # does not drift with the order of refinements
        panels = sorted(heap, key=lambda t: t[1])
        total = sum(t[4] for t in panels)
        total_err = sum(t[5] for t in panels)
    return total, total_err


def central_diff(f, x: float, h: float, order: int = 1):
    """Second-order central difference of ``f`` at ``x`` (first or second derivative)."""
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    if order == 1:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if order == 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    raise DomainError(f"order must be 1 or 2, got {order}")


def eig_tridiag(diag, offdiag, k_lowest: int):
    """The ``k_lowest`` smallest eigenvalues of a symmetric tridiagonal matrix, ascending.

    Bisection on Sturm sequence counts (LAPACK ``stebz``), run to the tightest
    absolute tolerance so small eigenvalues keep full relative accuracy.
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag, dtype=float)
    if d.size == 0:
        raise DomainError("empty matrix")
    if e.size != d.size - 1:
        raise DomainError(f"offdiag must have length {d.size - 1}, got {e.size}")
    if not 1 <= k_lowest <= d.size:
        raise DomainError(f"k_lowest must be in [1, {d.size}], got {k_lowest}")
    if d.size == 1:
        return d.copy()
    return eigvalsh_tridiagonal(
        d,
        e,
        select="i",
        select_range=(0, k_lowest - 1),
        lapack_driver="stebz",
        tol=2.0 * np.finfo(float).tiny,
    )

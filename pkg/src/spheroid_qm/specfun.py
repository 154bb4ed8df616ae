"""Real special functions: Gamma, Pochhammer, terminating 2F1 and Jacobi polynomials.

Everything here accepts scalars; functions of ``x`` or ``z`` also accept numpy
arrays and evaluate elementwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "JacobiParams",
    "gamma_fn",
    "log_gamma",
    "pochhammer",
    "hyp2f1_terminating",
    "jacobi_p",
    "jacobi_p_deriv",
    "wallis_integral",
]

# Above this argument Gamma is evaluated as exp(log Gamma).
_LOG_PATH_THRESHOLD = 30.0


@dataclass(frozen=True)
class JacobiParams:
    """Degree and indices of a Jacobi polynomial P_k^(alpha, beta)."""

    k: int
    alpha: float
    beta: float

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"Jacobi degree must be a nonnegative integer, got {self.k}")
        if self.alpha <= -1 or self.beta <= -1:
            raise DomainError(
                f"Jacobi indices must exceed -1, got alpha={self.alpha}, beta={self.beta}"
            )


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def gamma_fn(x: float) -> float:
    """Gamma(x) for x > 0.

    Large arguments go through ``log_gamma`` so that callers assembling ratios
    can switch to ``exp(sum of log_gamma)`` without changing code paths.
    """
    if not x > 0:
        raise DomainError(f"gamma_fn needs x > 0, got {x}")
    if x > _LOG_PATH_THRESHOLD:
        return math.exp(math.lgamma(x))
    return math.gamma(x)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise DomainError(f"pochhammer needs k >= 0, got {k}")
    out = 1.0
    for j in range(k):
        out *= a + j
    return out


def hyp2f1_terminating(neg_deg: int, b: float, c: float, z):
    """Gauss 2F1(-neg_deg, b; c; z), a polynomial of degree ``neg_deg`` in z.

    Summed term by term in ascending order; ``c`` may not be a nonpositive
    integer that a denominator (c)_j would hit.
    """
    if neg_deg < 0 or int(neg_deg) != neg_deg:
        raise DomainError(f"neg_deg must be a nonnegative integer, got {neg_deg}")
    for j in range(neg_deg):
        if c + j == 0:
            raise DomainError(f"c={c} makes (c)_j vanish for j <= {neg_deg}")
    z = np.asarray(z, dtype=float)
    total = np.ones_like(z)
    term = np.ones_like(z)
    for j in range(neg_deg):
        term = term * ((-neg_deg + j) * (b + j) / ((c + j) * (j + 1))) * z
        total = total + term
    return total if total.ndim else float(total)


def jacobi_p(p: JacobiParams, x):
    """P_k^(alpha, beta)(x) on [-1, 1] by the three-term recurrence in degree."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise DomainError("jacobi_p is defined here only for |x| <= 1")
    k, a, b = p.k, p.alpha, p.beta
    prev = np.ones_like(x)
    if k == 0:
        return prev if prev.ndim else float(prev)
    cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    for n in range(2, k + 1):
        s = 2 * n + a + b
        c1 = 2.0 * n * (n + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b)
        c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s
        prev, cur = cur, (c2 * cur - c3 * prev) / c1
    return cur if cur.ndim else float(cur)


def jacobi_p_deriv(p: JacobiParams, x, m: int):
    """m-th derivative of P_k^(alpha, beta) at x.

    Uses the index-shift identity
    d^m/dx^m P_k^(a,b) = Gamma(a+b+k+1+m) / (2^m Gamma(a+b+k+1)) P_{k-m}^(a+m, b+m).
    """
    if m < 0:
        raise DomainError(f"derivative order must be >= 0, got {m}")
    if m == 0:
        return jacobi_p(p, x)
    if m > p.k:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        return out if out.ndim else 0.0
    s = p.alpha + p.beta + p.k + 1.0
    coef = math.exp(math.lgamma(s + m) - math.lgamma(s)) / 2.0**m
    shifted = JacobiParams(p.k - m, p.alpha + m, p.beta + m)
    return coef * jacobi_p(shifted, x)


def wallis_integral(n: float) -> float:
    """Integral of (sin t)^n over [0, pi/2]."""
    if n < 0:
        raise DomainError(f"wallis_integral needs n >= 0, got {n}")
    return math.sqrt(math.pi) * math.exp(math.lgamma((1.0 + n) / 2.0) - math.lgamma(1.0 + n / 2.0)) / 2.0

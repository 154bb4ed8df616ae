"""Free particle on the sphere (exact) and on the spheroid to first order in eps.

Units: hbar = 1, unit mass. States are the highest-weight spherical modes
psi_n = a_n (sin chi)^n e^{i n phi} on the upper hemisphere, where
tan^2 chi = lam rho^2 and the invariant area element is (sin chi / lam) dchi dphi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import SurfaceParams, TangentPoint
from .levels import LevelRow, LevelTable
from .numerics import QuadratureSpec, integrate

__all__ = [
    "FreeState",
    "energy0",
    "norm_coefficient",
    "norm_integral",
    "wavefunction",
    "shift1_closed",
    "shift1_quadrature",
    "offdiag_element",
    "spectrum",
]

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class FreeState:
    n: int
    surface: SurfaceParams

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a nonnegative integer, got {self.n}")

    @property
    def norm(self) -> float:
        return norm_coefficient(self.n, self.surface.lam)


def energy0(n: int, s: SurfaceParams) -> float:
    """Sphere eigenvalue lam n (n + 1) / 2."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return 0.5 * s.lam * n * (n + 1)


def norm_coefficient(n: int, lam: float) -> float:
    """a_n = sqrt(lam Gamma(3/2 + n) / (pi^(3/2) Gamma(1 + n)))."""
    return math.sqrt(lam / math.pi**1.5 * math.exp(math.lgamma(1.5 + n) - math.lgamma(1.0 + n)))


def norm_integral(st: FreeState, spec: QuadratureSpec | None = None) -> float:
    """Quadrature of the invariant norm (2 pi / lam) a_n^2 int sin(chi)^(2n+1) dchi."""
    a2 = st.norm**2
    val, _ = integrate(lambda c: np.sin(c) ** (2 * st.n + 1), 0.0, HALF_PI, spec)
    return 2.0 * math.pi / st.surface.lam * a2 * val


def wavefunction(st: FreeState, t: TangentPoint) -> complex:
    lam = st.surface.lam
    r2 = t.x**2 + t.y**2
    sin_chi = math.sqrt(lam * r2 / (1.0 + lam * r2))
    return st.norm * sin_chi**st.n * cmath.exp(1j * st.n * t.phi)


def shift1_closed(st: FreeState) -> float:
    """First-order energy shift from the Gamma-ratio closed form.

    The 2 n^2 Gamma(n)/Gamma(1+n) factor is taken as its limit 2n so that n = 0
    is regular; the remaining ratios are assembled from log Gamma.
    """
    n = st.n
    lam, eps = st.surface.lam, st.surface.eps
    lg = math.lgamma
    r1 = math.exp(lg(1.5 + n) - lg(0.5 + n))
    r2 = math.exp(lg(2.0 + n) + lg(1.5 + n) - lg(1.0 + n) - lg(2.5 + n))
    bracket = n * (2 * n + 1) - 2.0 * n * r1 - (n * n + n - 0.75) * r2
    return 0.5 * eps * lam * bracket


def shift1_quadrature(st: FreeState, spec: QuadratureSpec | None = None, full_output: bool = False):
    """First-order energy shift as the chi-integral of its symmetrized matrix element.

    -pi eps a_n^2 int sin(chi) [2 n^2 s^(2n-2) + (n^2 + n - 3/4) s^(2n+2) - n (2n+1) s^(2n)]
    """
    n = st.n
    eps = st.surface.eps
    a2 = st.norm**2

    def integrand(c):
        s = np.sin(c)
        out = (n * n + n - 0.75) * s ** (2 * n + 3) - n * (2 * n + 1) * s ** (2 * n + 1)
        if n > 0:
            out = out + 2.0 * n * n * s ** (2 * n - 1)
        return out

    val, err = integrate(integrand, 0.0, HALF_PI, spec)
    pre = -math.pi * eps * a2
    if full_output:
        return pre * val, abs(pre) * err
    return pre * val


def _radial_form(m: int, n: int, lam: float, spec: QuadratureSpec | None):
    """int rho drho [(D U_m)' U_n' + m n D U_m U_n / rho^2] with U_k = D^{-3/4} a_k sin^k.

    Written in chi, with s = sin chi, c = cos chi:
    s c (c^-1/2 f_m)' (c^3/2 f_n)' + m n f_m f_n / s.
    """
    am, an = norm_coefficient(m, lam), norm_coefficient(n, lam)

    def integrand(c):
        s, co = np.sin(c), np.cos(c)
        fm, fn = s**m, s**n
        dfm = m * s ** max(m - 1, 0) * co if m else np.zeros_like(c)
        dfn = n * s ** max(n - 1, 0) * co if n else np.zeros_like(c)
        dw = co**-0.5 * dfm + 0.5 * co**-1.5 * s * fm
        du = co**1.5 * dfn - 1.5 * co**0.5 * s * fn
        return s * co * dw * du + m * n * fm * fn / s

    val, err = integrate(integrand, 0.0, HALF_PI, spec)
    return am * an * val, am * an * err


def offdiag_element(m: int, n: int, s: SurfaceParams, spec: QuadratureSpec | None = None) -> complex:
    """Symmetrized matrix element <m| -(eps/4)(D p0^2 + p0^2 D) |n> for m != n.

    Evaluated as a radial integral times a numerically integrated azimuthal
    factor int_0^{2 pi} e^{i (n - m) phi} dphi.
    """
    if m == n:
        raise DomainError("diagonal elements are the energy shifts; use shift1_closed")
    if m < 0 or n < 0:
        raise DomainError("quantum numbers must be nonnegative")
    # <p0 D psi_m | p0 psi_n> and <p0 psi_m | p0 D psi_n> share the radial form with m, n swapped
    r_mn, _ = _radial_form(m, n, s.lam, spec)
    r_nm, _ = _radial_form(n, m, s.lam, spec)
    dm = n - m
    re, _ = integrate(lambda p: np.cos(dm * p), 0.0, 2.0 * math.pi, spec)
    im, _ = integrate(lambda p: np.sin(dm * p), 0.0, 2.0 * math.pi, spec)
    return -0.25 * s.eps * (r_mn + r_nm) * complex(re, im)


def spectrum(n_max: int, s: SurfaceParams, spec: QuadratureSpec | None = None) -> LevelTable:
    """Level table for n = 0..n_max; each shift is reported in closed form and by quadrature."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    table = LevelTable(kind="free", lam=s.lam, eps=s.eps)
    for n in range(n_max + 1):
        st = FreeState(n, s)
        closed = shift1_closed(st)
        quad, qerr = shift1_quadrature(st, spec, full_output=True)
        table.rows.append(
            LevelRow(n=n, l=None, E0=energy0(n, s), dE1=closed,
                     dE1_err_est=max(qerr, abs(closed - quad)), dE1_quad=quad)
        )
    return table

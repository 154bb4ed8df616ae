"""Higgs isotropic oscillator on the sphere and its first-order shifts on the spheroid.

Eigenstates are labelled by (n, l) with l = -n, -n+2, ..., n. The radial
factor uses |l| and the radial quantum number k_r = (n - |l|)/2:

    phi(chi) = N sin^|l| chi cos^(beta+1/2) chi 2F1(-k_r, k_r+|l|+beta+1; |l|+1; sin^2 chi)

with Omega = sqrt(k + lam^2/4), beta = Omega/lam and k the spring constant
(omega^2, or omega under the literal coupling). N comes from quadrature of
the invariant norm (2 pi/lam) int sin(chi) phi^2 dchi = 1; the closed-form
Gamma expression is carried alongside as a diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .geometry import SurfaceParams, spring_constant
from .levels import LevelRow, LevelTable
from .numerics import QuadratureSpec, integrate
from .specfun import JacobiParams, hyp2f1_terminating, jacobi_p

__all__ = [
    "OscParams",
    "OscState",
    "NormDiagnostic",
    "valid_states",
    "energy0",
    "norm_closed",
    "norm_quadrature",
    "normalization_diagnostic",
    "radial_wavefunction",
    "radial_wavefunction_hyp",
    "radial_derivative",
    "overlap",
    "shift_kinetic",
    "shift_kinetic_xform",
    "shift_potential",
    "shift_total",
    "level_table",
]

HALF_PI = 0.5 * math.pi
NORM_REL_TOL = 1e-8


@dataclass(frozen=True)
class OscParams:
    omega: float
    surface: SurfaceParams
    coupling: str = "squared"

    def __post_init__(self):
        spring_constant(self.omega, self.coupling)

    @classmethod
    def from_values(cls, lam: float, omega: float, eps: float = 0.0, coupling: str = "squared"):
        return cls(omega, SurfaceParams.from_curvature(lam, eps), coupling)

    @property
    def lam(self) -> float:
        return self.surface.lam

    @property
    def eps(self) -> float:
        return self.surface.eps

    @property
    def spring(self) -> float:
        return spring_constant(self.omega, self.coupling)

    @property
    def Omega(self) -> float:
        # the literal reading keeps the printed Omega = sqrt(omega^2 + lam^2/4)
        return math.sqrt(self.omega**2 + 0.25 * self.lam**2)

    @property
    def beta(self) -> float:
        return self.Omega / self.lam

    def with_eps(self, eps: float) -> "OscParams":
        return OscParams(self.omega, SurfaceParams.from_curvature(self.lam, eps), self.coupling)


@dataclass(frozen=True)
class OscState:
    n: int
    l: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a nonnegative integer, got {self.n}")
        if int(self.l) != self.l or abs(self.l) > self.n or (self.n - abs(self.l)) % 2:
            raise DomainError(f"invalid pairing (n={self.n}, l={self.l}): need |l| <= n, n - |l| even")

    @property
    def abs_l(self) -> int:
        return abs(self.l)

    @property
    def k_r(self) -> int:
        return (self.n - abs(self.l)) // 2


def valid_states(n: int) -> list[OscState]:
    return [OscState(n, l) for l in range(-n, n + 1, 2)]


def energy0(st: OscState, p: OscParams) -> float:
    """Sphere eigenvalue (n + 1) Omega + (lam/2) (n + 1)^2."""
    return (st.n + 1) * p.Omega + 0.5 * p.lam * (st.n + 1) ** 2


def _unnormalized(st: OscState, p: OscParams, chi):
    """sin^|l| cos^(beta+1/2) times the terminating 2F1, evaluated through Jacobi P."""
    k, l, beta = st.k_r, st.abs_l, p.beta
    s = np.sin(chi)
    c = np.cos(chi)
    x = np.clip(1.0 - 2.0 * s * s, -1.0, 1.0)
    ratio = math.exp(math.lgamma(k + 1) + math.lgamma(l + 1) - math.lgamma(k + l + 1))
    return ratio * s**l * c ** (beta + 0.5) * jacobi_p(JacobiParams(k, l, beta), x)


def norm_closed(st: OscState, p: OscParams) -> float:
    """Closed-form Gamma expression for N with (k, l) -> (k_r, |l|).

    N^2 = 2 lam Gamma(k+l+1) Gamma(k+l+beta+1) (2k+l+beta+1) / (k! Gamma(l+1)^2 Gamma(k+beta+1))
    """
    k, l, beta = st.k_r, st.abs_l, p.beta
    lg = math.lgamma
    log_n2 = (
        math.log(2.0 * p.lam)
        + lg(k + l + 1)
        + lg(k + l + beta + 1)
        + math.log(2 * k + l + beta + 1)
        - lg(k + 1)
        - 2.0 * lg(l + 1)
        - lg(k + beta + 1)
    )
    return math.exp(0.5 * log_n2)


@lru_cache(maxsize=4096)
def norm_quadrature(st: OscState, p: OscParams, spec: QuadratureSpec | None = None) -> float:
    """N such that (2 pi / lam) int_0^{pi/2} sin(chi) phi^2 dchi = 1."""
    st = OscState(st.n, abs(st.l))

    def density(c):
        return np.sin(c) * _unnormalized(st, p, c) ** 2

    # large beta makes the raw density tiny; rescale to unit peak so abs_tol stays meaningful
    scale = float(np.max(density(np.linspace(0.0, HALF_PI, 2049)[:-1])))
    val, _ = integrate(lambda c: density(c) / scale, 0.0, HALF_PI, spec)
    return 1.0 / math.sqrt(2.0 * math.pi / p.lam * val * scale)


@dataclass(frozen=True)
class NormDiagnostic:
    state: OscState
    quadrature: float
    closed: float

    @property
    def ratio(self) -> float:
        return self.closed / self.quadrature

    @property
    def rel_dev(self) -> float:
        return abs(self.ratio - 1.0)

    @property
    def consistent(self) -> bool:
        return self.rel_dev <= NORM_REL_TOL

    @property
    def name(self) -> str:
        return "closed_form_normalization_ok" if self.consistent else "closed_form_normalization_mismatch"


def normalization_diagnostic(st: OscState, p: OscParams, spec: QuadratureSpec | None = None) -> NormDiagnostic:
    """Compare the quadrature normalization (authoritative) with the Gamma closed form."""
    return NormDiagnostic(st, norm_quadrature(st, p, spec), norm_closed(st, p))


def radial_wavefunction(st: OscState, p: OscParams, chi, spec: QuadratureSpec | None = None):
    """Normalized radial factor phi_{n,l}(chi) on [0, pi/2)."""
    chi = np.asarray(chi, dtype=float)
    if np.any(chi < 0) or np.any(chi >= HALF_PI):
        raise DomainError("chi must lie in [0, pi/2)")
    out = norm_quadrature(st, p, spec) * _unnormalized(st, p, chi)
    return out if out.ndim else float(out)


def radial_wavefunction_hyp(st: OscState, p: OscParams, chi, spec: QuadratureSpec | None = None):
    """Same as :func:`radial_wavefunction` but summing the terminating 2F1 directly."""
    chi = np.asarray(chi, dtype=float)
    k, l, beta = st.k_r, st.abs_l, p.beta
    s2 = np.sin(chi) ** 2
    f = hyp2f1_terminating(k, k + l + beta + 1.0, l + 1.0, s2)
    out = norm_quadrature(st, p, spec) * np.sin(chi) ** l * np.cos(chi) ** (beta + 0.5) * f
    return out if out.ndim else float(out)


def radial_derivative(st: OscState, p: OscParams, x, spec: QuadratureSpec | None = None):
    """d phi / d chi written in x = 1 - 2 sin^2 chi through Jacobi polynomials.

    -N C 2^-(l/2 + beta/2 - 3/4) [ -(l/2) (1-x)^((l-1)/2) (1+x)^(beta/2+3/4) P
        + (2 beta + 1)/4 (1-x)^((l+1)/2) (1+x)^(beta/2-1/4) P
        + (1-x)^((l+1)/2) (1+x)^(beta/2+3/4) Gamma(l+beta+k+2)/(2 Gamma(l+beta+k+1)) P' ]
    with C = k! Gamma(l+1) / Gamma(k+l+1), P = P_k^(l, beta)(x), P' = P_{k-1}^(l+1, beta+1)(x).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= -1.0) or np.any(x > 1.0):
        raise DomainError("x must lie in (-1, 1]")
    k, l, beta = st.k_r, st.abs_l, p.beta
    lg = math.lgamma
    big_n = norm_quadrature(st, p, spec)
    c_ratio = math.exp(lg(k + 1) + lg(l + 1) - lg(k + l + 1))
    pre = -big_n * c_ratio * 2.0 ** -(0.5 * l + 0.5 * beta - 0.75)
    om, op = 1.0 - x, 1.0 + x
    pk = jacobi_p(JacobiParams(k, l, beta), x)
    body = 0.25 * (2.0 * beta + 1.0) * om ** (0.5 * (l + 1)) * op ** (0.5 * beta - 0.25) * pk
    if l > 0:
        body = body - 0.5 * l * om ** (0.5 * (l - 1)) * op ** (0.5 * beta + 0.75) * pk
    if k > 0:
        dcoef = 0.5 * (l + beta + k + 1.0)  # Gamma(l+beta+k+2) / (2 Gamma(l+beta+k+1))
        pk1 = jacobi_p(JacobiParams(k - 1, l + 1, beta + 1), x)
        body = body + om ** (0.5 * (l + 1)) * op ** (0.5 * beta + 0.75) * dcoef * pk1
    out = pre * body
    return out if out.ndim else float(out)


def _dphi_dchi(st: OscState, p: OscParams, chi, spec):
    return radial_derivative(st, p, 1.0 - 2.0 * np.sin(chi) ** 2, spec)


def overlap(a: OscState, b: OscState, p: OscParams, spec: QuadratureSpec | None = None) -> float:
    """Radial inner product (2 pi / lam) int sin(chi) phi_a phi_b dchi."""
    val, _ = integrate(
        lambda c: np.sin(c) * radial_wavefunction(a, p, c, spec) * radial_wavefunction(b, p, c, spec),
        0.0, HALF_PI, spec,
    )
    return 2.0 * math.pi / p.lam * val


def shift_kinetic(st: OscState, p: OscParams, spec: QuadratureSpec | None = None, full_output: bool = False):
    """-(eps/2) <(1 + lam rho^2) p0^2>, symmetrized, as a chi-integral.

    -eps pi int sin(chi) [cos^2 phi'^2 - cos sin phi phi' - (3/4) sin^2 phi^2 + l^2 phi^2 / sin^2] dchi
    """
    eps, l2 = p.eps, st.abs_l**2

    def integrand(c):
        s, co = np.sin(c), np.cos(c)
        f = radial_wavefunction(st, p, c, spec)
        df = _dphi_dchi(st, p, c, spec)
        out = co * co * df * df - co * s * f * df - 0.75 * s * s * f * f
        if l2:
            out = out + l2 * f * f / (s * s)
        return s * out

    val, err = integrate(integrand, 0.0, HALF_PI, spec)
    pre = -eps * math.pi
    return (pre * val, abs(pre) * err) if full_output else pre * val


def shift_kinetic_xform(st: OscState, p: OscParams, spec: QuadratureSpec | None = None) -> float:
    """The kinetic shift integrated over x = 1 - 2 sin^2 chi in [-1, 1].

    With S = (1-x)/2, C = (1+x)/2 and sin(chi) dchi = dx / (4 sqrt(C)):
    -(eps pi / 4) int dx C^-1/2 [C Phi^2 - sqrt(C S) phi Phi - (3/4) S phi^2 + l^2 phi^2 / S]
    """
    eps, l2 = p.eps, st.abs_l**2

    def integrand(x):
        sm, cp = 0.5 * (1.0 - x), 0.5 * (1.0 + x)
        chi = np.arcsin(np.sqrt(sm))
        f = radial_wavefunction(st, p, chi, spec)
        big_phi = radial_derivative(st, p, x, spec)
        out = cp * big_phi**2 - np.sqrt(cp * sm) * f * big_phi - 0.75 * sm * f * f
        if l2:
            out = out + l2 * f * f / sm
        return out / np.sqrt(cp)

    val, _ = integrate(integrand, -1.0, 1.0, spec)
    return -0.25 * eps * math.pi * val


def shift_potential(st: OscState, p: OscParams, spec: QuadratureSpec | None = None, full_output: bool = False):
    """-(eps k / 2) <(1/(1 + lam rho^2) + 1) rho^2> = -(eps k pi/lam^2) int sin (sin^2 + tan^2) phi^2."""
    eps, k, lam = p.eps, p.spring, p.lam

    def integrand(c):
        s = np.sin(c)
        f = radial_wavefunction(st, p, c, spec)
        return s * (s * s + np.tan(c) ** 2) * f * f

    val, err = integrate(integrand, 0.0, HALF_PI, spec)
    pre = -eps * k * math.pi / lam**2
    return (pre * val, abs(pre) * err) if full_output else pre * val


def shift_total(st: OscState, p: OscParams, spec: QuadratureSpec | None = None, full_output: bool = False):
    """First-order shift: expectation of the perturbation in the (n, l) state, no mixing."""
    kin, kerr = shift_kinetic(st, p, spec, full_output=True)
    pot, perr = shift_potential(st, p, spec, full_output=True)
    return (kin + pot, kerr + perr) if full_output else kin + pot


def level_table(n_max: int, p: OscParams, spec: QuadratureSpec | None = None) -> LevelTable:
    """Rows for every valid (n, l) with n <= n_max."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    table = LevelTable(kind="osc", lam=p.lam, eps=p.eps, omega=p.omega, coupling=p.coupling)
    cache: dict[tuple[int, int], tuple[float, float]] = {}
    for n in range(n_max + 1):
        for st in valid_states(n):
            key = (st.n, st.abs_l)
            if key not in cache:
                cache[key] = shift_total(st, p, spec, full_output=True)
            d, err = cache[key]
            table.rows.append(LevelRow(n=st.n, l=st.l, E0=energy0(st, p), dE1=d, dE1_err_est=err))
    return table

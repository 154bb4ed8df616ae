"""Spheroid, enclosing sphere and tangent-plane coordinates.

The spheroid (q1^2 + q2^2)/b^2 + q3^2/a^2 = 1 is mapped onto the sphere of
radius a by scaling the equatorial coordinates by a/b, and the sphere onto
the plane tangent at the north pole by gnomonic projection. The curvature is
lam = 1/a^2 and the small parameter is eps = a^2/b^2 - 1.

Oscillator strengths follow the ``coupling`` convention: ``"squared"`` uses
V = (omega^2/2) s^2, ``"literal"`` uses V = (omega/2) s^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ValidationError

__all__ = [
    "SurfaceParams",
    "TangentPoint",
    "EmbeddedPoint",
    "MetricTensor2",
    "ClassicalState",
    "Hamiltonians",
    "spring_constant",
    "project_spheroid_to_sphere",
    "tangent_to_spheroid",
    "gnomonic_from_sphere",
    "metric_tangent",
    "metric_spheroid_coords",
    "sphere_measure",
    "potential_osc",
    "potential_spheroid_coords",
    "kinetic_energy",
    "classical_momenta",
    "classical_hamiltonians",
    "h_eps_printed",
]

ON_SURFACE_TOL = 1e-12
COUPLINGS = ("squared", "literal")


@dataclass(frozen=True)
class SurfaceParams:
    """Polar radius ``a`` and equatorial radius ``b`` of the spheroid.

    When built from (lam, eps) those values are kept as given, so that tiny
    eccentricities do not lose relative precision to a^2/b^2 - 1.
    """

    a: float
    b: float
    _lam: float | None = field(default=None, repr=False, compare=False)
    _eps: float | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError(f"radii must be positive, got a={self.a}, b={self.b}")

    @classmethod
    def from_curvature(cls, lam: float, eps: float) -> "SurfaceParams":
        """Build from curvature lam = 1/a^2 and eps = a^2/b^2 - 1."""
        if not lam > 0:
            raise DomainError(f"curvature must be positive, got {lam}")
        if not eps > -1:
            raise DomainError(f"eps must exceed -1, got {eps}")
        a = 1.0 / math.sqrt(lam)
        return cls(a, a / math.sqrt(1.0 + eps), float(lam), float(eps))

    @property
    def lam(self) -> float:
        return self._lam if self._lam is not None else 1.0 / self.a**2

    @property
    def eps(self) -> float:
        return self._eps if self._eps is not None else self.a**2 / self.b**2 - 1.0

    @property
    def is_sphere(self) -> bool:
        return self.eps == 0

    def sphere(self) -> "SurfaceParams":
        """The enclosing sphere (same polar radius, eps = 0)."""
        return SurfaceParams(self.a, self.a, self.lam, 0.0)


@dataclass(frozen=True)
class TangentPoint:
    """Cartesian point (x, y) on the plane tangent at the north pole."""

    x: float
    y: float

    @property
    def rho(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        return math.atan2(self.y, self.x) % (2.0 * math.pi)

    def chi(self, lam: float) -> float:
        """Polar angle on the sphere: tan^2(chi) = lam rho^2."""
        return math.atan(math.sqrt(lam) * self.rho)


@dataclass(frozen=True)
class EmbeddedPoint:
    q1: float
    q2: float
    q3: float

    @property
    def upper(self) -> bool:
        return self.q3 >= 0

    def as_array(self) -> np.ndarray:
        return np.array([self.q1, self.q2, self.q3])


class MetricTensor2(NamedTuple):
    g11: float
    g12: float
    g22: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])


@dataclass(frozen=True)
class ClassicalState:
    """Tangent-plane position and velocity."""

    x: float
    y: float
    vx: float
    vy: float

    @property
    def pos(self) -> np.ndarray:
        return np.array([self.x, self.y])

    @property
    def vel(self) -> np.ndarray:
        return np.array([self.vx, self.vy])


def spring_constant(omega: float, coupling: str = "squared") -> float:
    """Coefficient k in V = (k/2) s^2."""
    if omega < 0:
        raise DomainError(f"omega must be >= 0, got {omega}")
    if coupling == "squared":
        return omega * omega
    if coupling == "literal":
        return omega
    raise DomainError(f"coupling must be one of {COUPLINGS}, got {coupling!r}")


def _residual(p: EmbeddedPoint, s: SurfaceParams) -> float:
    return (p.q1**2 + p.q2**2) / s.b**2 + p.q3**2 / s.a**2 - 1.0


def project_spheroid_to_sphere(p: EmbeddedPoint, s: SurfaceParams) -> EmbeddedPoint:
    """Scale the equatorial coordinates by a/b, landing on the sphere of radius a."""
    if abs(_residual(p, s)) > ON_SURFACE_TOL:
        raise ValidationError(f"point {p} is off the spheroid (residual {_residual(p, s):.3g})")
    r = s.a / s.b
    return EmbeddedPoint(r * p.q1, r * p.q2, p.q3)


def tangent_to_spheroid(t: TangentPoint, s: SurfaceParams, sheet: str = "upper") -> EmbeddedPoint:
    """Point of the spheroid whose sphere image projects gnomonically onto ``t``."""
    if sheet not in ("upper", "lower"):
        raise DomainError(f"sheet must be 'upper' or 'lower', got {sheet!r}")
    root = math.sqrt(s.a**2 + t.x**2 + t.y**2)
    sign = 1.0 if sheet == "upper" else -1.0
    return EmbeddedPoint(s.b * t.x / root, s.b * t.y / root, sign * s.a**2 / root)


def gnomonic_from_sphere(p: EmbeddedPoint, s: SurfaceParams) -> TangentPoint:
    """Inverse gnomonic projection of a sphere point (radius a, q3 != 0)."""
    if p.q3 == 0:
        raise DomainError("equatorial points have no gnomonic image")
    return TangentPoint(s.a * p.q1 / abs(p.q3), s.a * p.q2 / abs(p.q3))


def metric_tangent(t: TangentPoint, s: SurfaceParams) -> MetricTensor2:
    """Induced spheroid metric in tangent-plane coordinates (exact in eps)."""
    lam, eps = s.lam, s.eps
    d = 1.0 + lam * (t.x**2 + t.y**2)
    c = lam / d * (1.0 - eps / d)
    pre = 1.0 / (d * (1.0 + eps))
    return MetricTensor2(
        pre * (1.0 - c * t.x * t.x),
        -pre * c * t.x * t.y,
        pre * (1.0 - c * t.y * t.y),
    )


def sphere_measure(rho, lam: float):
    """Determinant g(rho) = (1 + lam rho^2)^-3 of the sphere metric; sqrt(g) is the area weight."""
    rho = np.asarray(rho, dtype=float)
    return (1.0 + lam * rho * rho) ** -3


def metric_spheroid_coords(q1: float, q2: float, s: SurfaceParams) -> MetricTensor2:
    """Metric coefficients G_ab = delta_ab + (a/b)^2 q_a q_b / (b^2 - q1^2 - q2^2)."""
    den = s.b**2 - q1 * q1 - q2 * q2
    if den <= 0:
        raise DomainError("chart is singular at or beyond the equator q1^2 + q2^2 >= b^2")
    f = (s.a / s.b) ** 2 / den
    return MetricTensor2(1.0 + f * q1 * q1, f * q1 * q2, 1.0 + f * q2 * q2)


def potential_osc(t: TangentPoint, s: SurfaceParams, omega: float, coupling: str = "squared") -> float:
    """Oscillator potential (k/2) rho^2 ((1+eps)^-1 + lam rho^2) / (1 + lam rho^2)."""
    k = spring_constant(omega, coupling)
    r2 = t.x**2 + t.y**2
    lr2 = s.lam * r2
    return 0.5 * k * r2 * (1.0 / (1.0 + s.eps) + lr2) / (1.0 + lr2)


def potential_spheroid_coords(q1: float, q2: float, s: SurfaceParams, omega: float,
                              coupling: str = "squared") -> float:
    """(k/2) G_ab q_a q_b with the metric of :func:`metric_spheroid_coords`."""
    k = spring_constant(omega, coupling)
    g = metric_spheroid_coords(q1, q2, s)
    return 0.5 * k * (g.g11 * q1 * q1 + 2.0 * g.g12 * q1 * q2 + g.g22 * q2 * q2)


def kinetic_energy(c: ClassicalState, s: SurfaceParams) -> float:
    """T = (v^2 - lam (x.v)^2 (1 - eps/D) / D) / (2 D (1 + eps)), D = 1 + lam rho^2."""
    lam, eps = s.lam, s.eps
    d = 1.0 + lam * (c.x**2 + c.y**2)
    xv = c.x * c.vx + c.y * c.vy
    v2 = c.vx**2 + c.vy**2
    return (v2 - lam * xv * xv / d * (1.0 - eps / d)) / (2.0 * d * (1.0 + eps))


def _sphere_momentum(c: ClassicalState, lam: float) -> np.ndarray:
    d = 1.0 + lam * (c.x**2 + c.y**2)
    xv = c.x * c.vx + c.y * c.vy
    return (c.vel - lam * xv * c.pos / d) / d


def classical_momenta(c: ClassicalState, s: SurfaceParams):
    """Canonical momentum on the spheroid and the sphere momentum p0, both from velocities."""
    lam, eps = s.lam, s.eps
    d = 1.0 + lam * (c.x**2 + c.y**2)
    xv = c.x * c.vx + c.y * c.vy
    p = (c.vel - lam * xv * c.pos / d * (1.0 - eps / d)) / (d * (1.0 + eps))
    return p, _sphere_momentum(c, lam)


class Hamiltonians(NamedTuple):
    exact: float
    sphere: float
    eps_term: float


def classical_hamiltonians(c: ClassicalState, s: SurfaceParams, omega: float,
                           coupling: str = "squared") -> Hamiltonians:
    """Exact Hamiltonian, the Higgs sphere Hamiltonian and its first-order eps correction.

    All three are functions of the same (position, velocity) state; the sphere
    part is written through pi = p0 + lam x (x.p0) and L = x cross p0. The
    correction is -(eps/2) [D p0^2 + k rho^2 / D], so that
    ``exact - sphere - eps_term`` is O(eps^2).
    """
    lam, eps = s.lam, s.eps
    k = spring_constant(omega, coupling)
    t = TangentPoint(c.x, c.y)
    lagrangian = kinetic_energy(c, s) - potential_osc(t, s, omega, coupling)
    p, p0 = classical_momenta(c, s)
    h_exact = float(c.vel @ p) - lagrangian

    r2 = c.x**2 + c.y**2
    d = 1.0 + lam * r2
    xp0 = float(c.pos @ p0)
    pi = p0 + lam * c.pos * xp0
    ang = c.x * p0[1] - c.y * p0[0]
    h0 = 0.5 * (float(pi @ pi) + lam * ang * ang) + 0.5 * k * r2
    h_eps = -0.5 * eps * (d * float(p0 @ p0) + k * r2 / d)
    return Hamiltonians(h_exact, h0, h_eps)


def h_eps_printed(c: ClassicalState, s: SurfaceParams, omega: float,
                  coupling: str = "squared") -> float:
    """-(eps/2) [D p0^2 + k (1/D + 1) rho^2]: the correction with the extra (k/2) rho^2 term.

    This is the form the quantum perturbation operator is built on. It differs
    from the exact first-order correction by -(eps/2) k rho^2.
    """
    lam, eps = s.lam, s.eps
    k = spring_constant(omega, coupling)
    p0 = _sphere_momentum(c, lam)
    r2 = c.x**2 + c.y**2
    d = 1.0 + lam * r2
    return -0.5 * eps * (d * float(p0 @ p0) + k * (1.0 / d + 1.0) * r2)

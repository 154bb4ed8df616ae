"""Finite-difference radial eigensolver on the hemisphere, used to check the closed forms.

Sector m of the sphere Hamiltonian is

    -(lam/2) [f'' + cot(chi) f' - m^2 f / sin^2 chi] + V(chi) f,   chi in (0, pi/2)

with V = 0 (free) or V = (k / (2 lam)) tan^2 chi (oscillator). The grid is
staggered, chi_j = (j + 1/2) h with h = (pi/2)/N, so neither endpoint is a
node. Writing the operator in flux form with the sin(chi) weight and setting
u = sqrt(sin chi) f gives a symmetric tridiagonal matrix. The flux through
chi = 0 vanishes because sin(0) = 0; at the equator the free problem is
reflecting (Neumann) and the oscillator one is closed (Dirichlet).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import free_particle, oscillator
from .errors import DomainError, ResolutionError
from .geometry import SurfaceParams, spring_constant
from .numerics import eig_tridiag

__all__ = [
    "RadialProblem",
    "TridiagonalSystem",
    "OracleReport",
    "OscValidation",
    "build_problem",
    "sector_eigenvalues",
    "validate_free",
    "validate_osc",
    "convergence_slope",
    "grid_shift",
]

HALF_PI = 0.5 * math.pi
REL_TOL = 1e-3
SHIFT_REL_TOL = 1e-4


@dataclass(frozen=True)
class RadialProblem:
    m: int
    surface: SurfaceParams
    potential: str = "free"
    omega: float = 0.0
    coupling: str = "squared"
    n_grid: int = 4000
    boundary: str | None = None

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise DomainError(f"m must be a nonnegative integer, got {self.m}")
        if self.potential not in ("free", "oscillator"):
            raise DomainError(f"potential must be 'free' or 'oscillator', got {self.potential!r}")
        if self.n_grid < 100:
            raise DomainError(f"n_grid must be >= 100, got {self.n_grid}")
        if self.boundary not in (None, "neumann", "dirichlet"):
            raise DomainError(f"boundary must be 'neumann' or 'dirichlet', got {self.boundary!r}")
        spring_constant(self.omega, self.coupling)

    @property
    def bc(self) -> str:
        if self.boundary is not None:
            return self.boundary
        return "neumann" if self.potential == "free" else "dirichlet"

    @property
    def h(self) -> float:
        return HALF_PI / self.n_grid

    def nodes(self) -> np.ndarray:
        return (np.arange(self.n_grid) + 0.5) * self.h

    def with_grid(self, n_grid: int) -> "RadialProblem":
        return RadialProblem(self.m, self.surface, self.potential, self.omega,
                             self.coupling, n_grid, self.boundary)


class TridiagonalSystem(NamedTuple):
    diag: np.ndarray
    offdiag: np.ndarray
    chi: np.ndarray
    h: float


def build_problem(rp: RadialProblem) -> TridiagonalSystem:
    lam = rp.surface.lam
    h = rp.h
    chi = rp.nodes()
    s = np.sin(chi)
    s_face = np.sin(np.arange(rp.n_grid + 1) * h)  # faces at chi = j h, j = 0..N
    c2 = 0.5 * lam / (h * h)

    diag = c2 * (s_face[1:] + s_face[:-1]) / s
    if rp.bc == "neumann":
        diag[-1] -= c2 * s_face[-1] / s[-1]
    else:
        # ghost value f_N = -f_{N-1} puts the zero on the face chi = pi/2
        diag[-1] += c2 * s_face[-1] / s[-1]
    diag += 0.5 * lam * rp.m**2 / (s * s)
    if rp.potential == "oscillator":
        k = spring_constant(rp.omega, rp.coupling)
        diag += 0.5 * k / lam * np.tan(chi) ** 2
    offdiag = -c2 * s_face[1:-1] / np.sqrt(s[:-1] * s[1:])
    return TridiagonalSystem(diag, offdiag, chi, h)


def sector_eigenvalues(rp: RadialProblem, k: int) -> np.ndarray:
    sysm = build_problem(rp)
    return eig_tridiag(sysm.diag, sysm.offdiag, k)


@dataclass
class OracleReport:
    sector: int
    grid: int
    computed: list[float]
    reference: list[float]
    rel_err: list[float]
    passed: bool
    kind: str = "free"
    coupling: str | None = None
    reference_label: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _rel(computed, reference, floor: float) -> list[float]:
    return [abs(c - r) / max(abs(r), floor) for c, r in zip(computed, reference)]


def validate_free(s: SurfaceParams, m_max: int = 3, k_eigs: int = 3, n_grid: int = 4000) -> list[OracleReport]:
    """Sphere free-particle sectors against lam N (N + 1) / 2, N = m, m+2, ...

    Only N - m even survives the reflecting equator. A zero reference is
    compared on the scale of lam.
    """
    if m_max > 5 or k_eigs > 4:
        raise DomainError("validate_free supports m_max <= 5 and k_eigs <= 4")
    lam = s.lam
    reports = []
    for m in range(m_max + 1):
        rp = RadialProblem(m, s.sphere(), "free", n_grid=n_grid)
        ev = sector_eigenvalues(rp, k_eigs).tolist()
        big_n = [m + 2 * j for j in range(k_eigs)]
        ref = [0.5 * lam * N * (N + 1) for N in big_n]
        err = _rel(ev, ref, lam)
        reports.append(OracleReport(m, n_grid, ev, ref, err, all(e <= REL_TOL for e in err),
                                    kind="free", reference_label=[f"N={N}" for N in big_n]))
    return reports


@dataclass
class OscValidation:
    """Oscillator sectors checked under both coupling conventions."""

    omega: float
    squared: list[OracleReport]
    literal: list[OracleReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.squared)

    @property
    def matching(self) -> list[str]:
        return [name for name, reps in (("squared", self.squared), ("literal", self.literal))
                if all(r.passed for r in reps)]

    def to_dict(self) -> dict:
        return {
            "omega": self.omega,
            "squared": [r.to_dict() for r in self.squared],
            "literal": [r.to_dict() for r in self.literal],
            "matching": self.matching,
            "pass": self.passed,
        }


def validate_osc(s: SurfaceParams, omega: float, l_max: int = 3, n_grid: int = 4000,
                 k_eigs: int = 2) -> OscValidation:
    """Oscillator sectors l <= l_max against (n+1) Omega + (lam/2)(n+1)^2 for n = l, l+2, ..."""
    if l_max > 4:
        raise DomainError("validate_osc supports l_max <= 4")
    params = oscillator.OscParams(omega, s.sphere())
    out = {}
    for coupling in ("squared", "literal"):
        reports = []
        for l in range(l_max + 1):
            rp = RadialProblem(l, s.sphere(), "oscillator", omega, coupling, n_grid)
            ev = sector_eigenvalues(rp, k_eigs).tolist()
            ns = [l + 2 * j for j in range(k_eigs)]
            ref = [oscillator.energy0(oscillator.OscState(n, l), params) for n in ns]
            err = _rel(ev, ref, 1e-300)
            reports.append(OracleReport(l, n_grid, ev, ref, err, all(e <= REL_TOL for e in err),
                                        kind="oscillator", coupling=coupling,
                                        reference_label=[f"n={n}" for n in ns]))
        out[coupling] = reports
    return OscValidation(omega, out["squared"], out["literal"])


def convergence_slope(rp: RadialProblem, reference: float, grids=(500, 1000, 2000, 4000), index: int = 0):
    """Least-squares slope of log|E_grid - reference| against log h."""
    hs, errs = [], []
    for n in grids:
        ev = sector_eigenvalues(rp.with_grid(n), index + 1)[index]
        hs.append(HALF_PI / n)
        errs.append(abs(ev - reference))
    slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
    return float(slope), errs


def _grid_state(rp: RadialProblem, index: int):
    """index-th eigenvector of the sector as f(chi_j), normalized with the discrete measure."""
    sysm = build_problem(rp)
    _, vec = eigh_tridiagonal(sysm.diag, sysm.offdiag, select="i", select_range=(index, index))
    u = vec[:, 0]
    s = np.sin(sysm.chi)
    lam = rp.surface.lam
    u = u / math.sqrt(2.0 * math.pi / lam * sysm.h * float(u @ u))
    f = u / np.sqrt(s)
    # fix the sign so f > 0 next to the pole
    j0 = int(np.argmax(np.abs(f) > 1e-8 * np.max(np.abs(f))))
    return sysm, f * np.sign(f[j0])


def _grid_expectation(rp: RadialProblem, index: int, eps: float, spring: float) -> float:
    """<psi| -(eps/4)(D p0^2 + p0^2 D) - (eps k/2)(1/D + 1) rho^2 |psi> on the grid.

    The kinetic part is the quadratic form -(eps/2) Re <p0 D psi | p0 psi>,
    which in chi reads -eps pi int s [c^2 f'^2 - c s f f' - (3/4) s^2 f^2 + m^2 f^2 / s^2].
    The radial bracket is sampled on cell faces with f' the difference of
    neighbouring nodes and f their average; the two half cells at the ends
    take the nearest face value. The m^2 and potential terms use the nodes.
    """
    sysm, f = _grid_state(rp, index)
    chi, h = sysm.chi, sysm.h
    lam, m = rp.surface.lam, rp.m
    s, c = np.sin(chi), np.cos(chi)
    face = chi[:-1] + 0.5 * h
    sf, cf = np.sin(face), np.cos(face)
    df = np.diff(f) / h
    fa = 0.5 * (f[1:] + f[:-1])
    g = sf * (cf * cf * df * df - cf * sf * fa * df - 0.75 * sf * sf * fa * fa)
    radial = h * (g.sum() + 0.5 * (g[0] + g[-1]))
    angular = m * m * h * float(np.sum(f * f / s))
    kinetic = -eps * math.pi * (radial + angular)
    weight = 2.0 * math.pi / lam * h * s
    potential = -0.5 * eps * spring * float(np.sum(weight * np.tan(chi) ** 2 / lam * (1.0 + c * c) * f * f))
    return kinetic + potential


def grid_shift(st, p, rp: RadialProblem | None = None, n_grid: int = 4000) -> float:
    """First-order shift computed entirely on the finite-difference grid.

    ``st`` is a :class:`~spheroid_qm.free_particle.FreeState` (``p`` is then its
    SurfaceParams, or None) or an :class:`~spheroid_qm.oscillator.OscState`
    with ``p`` an OscParams. The state is the matching eigenvector of the
    sphere sector, not the closed-form wavefunction. The value is extrapolated
    from grids N and N/2; the difference between them serves as the error
    estimate and raises :class:`ResolutionError` above 1e-4 relative.
    """
    if isinstance(st, free_particle.FreeState):
        surface = st.surface
        eps, spring, m, index = surface.eps, 0.0, st.n, 0
        base = rp or RadialProblem(m, surface.sphere(), "free", n_grid=n_grid)
    elif isinstance(st, oscillator.OscState):
        surface = p.surface
        eps, spring, m, index = surface.eps, p.spring, st.abs_l, st.k_r
        base = rp or RadialProblem(m, surface.sphere(), "oscillator", p.omega, p.coupling, n_grid)
    else:
        raise DomainError(f"unsupported state type {type(st).__name__}")
    if base.m != m:
        raise DomainError(f"radial problem sector {base.m} does not match state sector {m}")
    if base.n_grid < 2000:
        raise ResolutionError(f"grid_shift needs n_grid >= 2000, got {base.n_grid}")
    if eps == 0:
        return 0.0

    fine = _grid_expectation(base, index, eps, spring)
    coarse = _grid_expectation(base.with_grid(base.n_grid // 2), index, eps, spring)
    est = abs(fine - coarse) / 3.0
    if est > SHIFT_REL_TOL * abs(fine):
        raise ResolutionError(
            f"estimated discretization error {est / abs(fine):.2e} (relative) exceeds {SHIFT_REL_TOL:g}"
        )
    return fine + (fine - coarse) / 3.0

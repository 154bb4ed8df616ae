"""Invariant suites behind ``spheroid-qm validate``.

Each check returns a plain dict with at least ``name``, ``pass`` and a
``value``/``tol`` pair, so the report serializes to JSON directly. Checks in
``diagnostics`` are informational and never affect the overall pass flag.
"""

from __future__ import annotations

import math

import numpy as np

from . import free_particle as fp
from . import oracle
from . import oscillator as osc
from .geometry import (
    ClassicalState,
    SurfaceParams,
    TangentPoint,
    classical_hamiltonians,
    classical_momenta,
    metric_tangent,
    tangent_to_spheroid,
)
from .numerics import QuadratureSpec
from .specfun import JacobiParams, hyp2f1_terminating, jacobi_p, pochhammer

__all__ = ["PRESETS", "SUITES", "embedding_metric_fd", "decomposition_slope", "run_suites"]

PRESETS = {
    "fig2a": (0.8, 1.0, 0.1),
    "fig2b": (1.0, 1.0, 0.1),
    "fig2c": (1.0, 1.4, 0.1),
}
SEED = 20240611


def _check(name: str, value: float, tol: float, **extra) -> dict:
    ok = bool(np.isfinite(value) and value <= tol)
    return {"name": name, "pass": ok, "value": float(value), "tol": tol, **extra}


def embedding_metric_fd(t: TangentPoint, s: SurfaceParams) -> np.ndarray:
    """First fundamental form of the embedding (x, y) -> spheroid by central differences."""
    h = 1e-5 * (1.0 + max(abs(t.x), abs(t.y)))

    def r(x, y):
        return tangent_to_spheroid(TangentPoint(x, y), s).as_array()

    jx = (r(t.x + h, t.y) - r(t.x - h, t.y)) / (2 * h)
    jy = (r(t.x, t.y + h) - r(t.x, t.y - h)) / (2 * h)
    jac = np.column_stack([jx, jy])
    return jac.T @ jac


def decomposition_slope(c: ClassicalState, lam: float, omega: float,
                        eps_values=(1e-4, 3e-4, 1e-3, 3e-3, 1e-2)):
    """log-log slope of |H_exact - H0 - H_eps| against eps at a fixed tangent-plane state."""
    resid = []
    for eps in eps_values:
        h = classical_hamiltonians(c, SurfaceParams.from_curvature(lam, eps), omega)
        resid.append(abs(h.exact - h.sphere - h.eps_term))
    slope = np.polyfit(np.log(eps_values), np.log(resid), 1)[0]
    return float(slope), resid


def _random_states(rng, count):
    for _ in range(count):
        x, y = rng.uniform(-2.0, 2.0, 2)
        vx, vy = rng.uniform(-1.5, 1.5, 2)
        yield ClassicalState(x, y, vx, vy)


def suite_specfun(spec: QuadratureSpec) -> list[dict]:
    worst = 0.0
    for k in range(8):
        for a, b in ((0.0, 0.5), (2.0, 1.3), (3.0, 2.7)):
            x = np.linspace(-1, 1, 41)
            direct = jacobi_p(JacobiParams(k, a, b), x)
            via_hyp = pochhammer(a + 1, k) / math.factorial(k) * hyp2f1_terminating(k, k + a + b + 1, a + 1, (1 - x) / 2)
            worst = max(worst, float(np.max(np.abs(direct - via_hyp) / np.maximum(1.0, np.abs(direct)))))
    return [_check("jacobi_vs_hyp2f1", worst, 1e-11)]


def suite_free(spec: QuadratureSpec) -> list[dict]:
    worst = 0.0
    for lam in (0.5, 1.0, 2.0):
        s = SurfaceParams.from_curvature(lam, 0.1)
        for n in range(21):
            st = fp.FreeState(n, s)
            a, q = fp.shift1_closed(st), fp.shift1_quadrature(st, spec)
            worst = max(worst, abs(a - q) / abs(a))
    s = SurfaceParams.from_curvature(1.0, 0.1)
    const = max(abs(fp.shift1_closed(fp.FreeState(0, s)) - 0.025),
                abs(fp.shift1_closed(fp.FreeState(1, s)) + 0.05))
    offd = max(abs(fp.offdiag_element(m, n, s, spec)) for n in range(9) for m in range(n))
    norm = max(abs(fp.norm_integral(fp.FreeState(n, s), spec) - 1.0) for n in range(9))
    zero = max(abs(fp.shift1_closed(fp.FreeState(n, SurfaceParams.from_curvature(1.0, 0.0)))) for n in range(21))
    return [
        _check("free_closed_vs_quadrature", worst, 1e-8),
        _check("free_shift_constants", const, 1e-10),
        _check("free_offdiagonal_vanish", offd, 1e-10),
        _check("free_normalization", norm, 1e-10),
        _check("free_eps0_zero_shift", zero, 1e-12),
    ]


def suite_oscillator(spec: QuadratureSpec) -> tuple[list[dict], list[dict]]:
    checks, diags = [], []
    chi = np.linspace(0.05, 0.5 * math.pi - 0.05, 60)
    norm_dev = orth = deriv = sym = zero = closed_dev = 0.0
    for lam, om, eps in PRESETS.values():
        p = osc.OscParams.from_values(lam, om, eps)
        for n in range(9):
            for st in osc.valid_states(n):
                d = osc.normalization_diagnostic(st, p, spec)
                closed_dev = max(closed_dev, d.rel_dev)
                norm_dev = max(norm_dev, abs(osc.overlap(st, st, p, spec) - 1.0))
                if n >= 2:
                    other = osc.OscState(n - 2, st.l) if abs(st.l) <= n - 2 else None
                    if other is not None:
                        orth = max(orth, abs(osc.overlap(st, other, p, spec)))
                if n <= 6:
                    x = np.cos(2 * chi)
                    h = 1e-5
                    fd = (osc.radial_wavefunction(st, p, chi + h, spec) - osc.radial_wavefunction(st, p, chi - h, spec)) / (2 * h)
                    analytic = osc.radial_derivative(st, p, x, spec)
                    deriv = max(deriv, float(np.max(np.abs(analytic - fd))))
        for n in range(5):
            for st in osc.valid_states(n):
                if st.l > 0:
                    sym = max(sym, abs(osc.shift_total(st, p, spec) - osc.shift_total(osc.OscState(n, -st.l), p, spec)))
        p0 = p.with_eps(0.0)
        zero = max(zero, max(abs(osc.shift_total(st, p0, spec)) for n in range(5) for st in osc.valid_states(n)))
    flat = osc.OscParams.from_values(1e-3, 1.0, 0.01)
    virial = max(abs(osc.shift_total(st, flat, spec) / (0.01 * (n + 1) * 1.0) + 1.5) / 1.5
                 for n in range(5) for st in osc.valid_states(n))
    checks += [
        _check("osc_normalization", norm_dev, 1e-8),
        _check("osc_orthogonality", orth, 1e-8),
        _check("osc_derivative_identity", deriv, 1e-6),
        _check("osc_l_symmetry", sym, 1e-10),
        _check("osc_eps0_zero_shift", zero, 1e-12),
        _check("osc_flat_limit_virial", virial, 5e-3),
    ]
    diags.append({
        "name": "osc_closed_norm_constant",
        "value": closed_dev,
        "note": "closed-form normalization constant vs quadrature; the ratio squared is 2 pi",
        "ratio_squared_minus_2pi": abs(osc.normalization_diagnostic(osc.OscState(0, 0),
                                       osc.OscParams.from_values(1.0, 1.0), spec).ratio ** 2 - 2 * math.pi),
    })
    for name, (lam, om, eps) in PRESETS.items():
        t = osc.level_table(3, osc.OscParams.from_values(lam, om, eps), spec)
        diags.append({"name": f"splitting_{name}", "lambda": lam, "omega": om,
                      "widths": {str(k): v for k, v in t.splitting_widths().items()},
                      "mean_width": t.mean_splitting_width(3)})
    return checks, diags


def suite_oracle(spec: QuadratureSpec) -> tuple[list[dict], list[dict]]:
    s = SurfaceParams.from_curvature(1.0, 0.1)
    free = oracle.validate_free(s, 3, 3)
    ov = oracle.validate_osc(s, 1.4, 3)
    slope, _ = oracle.convergence_slope(oracle.RadialProblem(1, s.sphere(), "free"), 1.0)
    worst_shift = 0.0
    for lam, om, eps in PRESETS.values():
        p = osc.OscParams.from_values(lam, om, eps)
        for n in range(5):
            for st in osc.valid_states(n):
                worst_shift = max(worst_shift, abs(oracle.grid_shift(st, p) / osc.shift_total(st, p, spec) - 1.0))
    literal_miss = min(min(r.rel_err) for r in ov.literal)
    checks = [
        {"name": "oracle_free_spectrum", "pass": all(r.passed for r in free),
         "reports": [r.to_dict() for r in free]},
        {"name": "oracle_osc_spectrum", "pass": ov.passed, "report": ov.to_dict()},
        _check("oracle_convergence_slope", abs(slope - 2.0), 0.2, slope=slope),
        {"name": "oracle_literal_coupling_mismatch", "pass": literal_miss > 1e-2, "value": literal_miss, "min": 1e-2},
        _check("oracle_grid_shift_agreement", worst_shift, 1e-4),
    ]
    return checks, []


def suite_geometry(spec: QuadratureSpec) -> list[dict]:
    rng = np.random.default_rng(SEED)
    metric = 0.0
    for _ in range(100):
        lam = rng.uniform(0.3, 2.0)
        eps = rng.uniform(-0.3, 0.5)
        x, y = rng.uniform(-2.0, 2.0, 2)
        s = SurfaceParams.from_curvature(lam, eps)
        t = TangentPoint(x, y)
        metric = max(metric, float(np.max(np.abs(metric_tangent(t, s).matrix() - embedding_metric_fd(t, s)))))
    ident = 0.0
    for c in _random_states(rng, 100):
        lam = rng.uniform(0.3, 2.0)
        _, p0 = classical_momenta(c, SurfaceParams.from_curvature(lam, 0.1))
        d = 1.0 + lam * (c.x**2 + c.y**2)
        lhs = float(c.pos @ c.vel)
        ident = max(ident, abs(lhs - float(p0 @ c.pos) * d * d) / max(1.0, abs(lhs)))
    slope, _ = decomposition_slope(ClassicalState(0.7, -0.4, 0.3, 0.9), 1.0, 1.0)
    return [
        _check("geometry_metric_vs_embedding", metric, 1e-7),
        _check("geometry_momentum_identity", ident, 1e-12),
        _check("geometry_decomposition_slope", abs(slope - 2.0), 0.1, slope=slope),
    ]


def _wrap(fn):
    def run(spec):
        out = fn(spec)
        return out if isinstance(out, tuple) else (out, [])
    return run


SUITES = {
    "specfun": _wrap(suite_specfun),
    "free": _wrap(suite_free),
    "oscillator": _wrap(suite_oscillator),
    "oracle": _wrap(suite_oracle),
    "geometry": _wrap(suite_geometry),
}


def run_suites(names, spec: QuadratureSpec | None = None) -> dict:
    spec = spec or QuadratureSpec()
    if "all" in names:
        names = list(SUITES)
    report = {"suites": {}, "diagnostics": [], "pass": True}
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        checks, diags = SUITES[name](spec)
        report["suites"][name] = checks
        report["diagnostics"] += diags
        report["pass"] = report["pass"] and all(c["pass"] for c in checks)
    return report

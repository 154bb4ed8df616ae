"""Higgs oscillator on the sphere and its level splitting on the spheroid.

Each sphere level n is (n+1)-fold degenerate in l. The spheroid perturbation
depends on l only through l^2, so +l and -l stay together and level n breaks
into floor(n/2) + 1 distinct sublevels. The script prints the three parameter
sets of the level diagrams and writes one SVG per set next to this file.
"""

from pathlib import Path

from spheroid_qm import oscillator as osc
from spheroid_qm.levels import emit_level_svg
from spheroid_qm.validation import PRESETS

here = Path(__file__).resolve().parent
for name, (lam, omega, eps) in PRESETS.items():
    p = osc.OscParams.from_values(lam, omega, eps)
    sphere = osc.level_table(3, p.with_eps(0.0))
    spheroid = osc.level_table(3, p)
    print(f"{name}: lam = {lam}, omega = {omega}, eps = {eps}, Omega = {p.Omega:.6f}")
    for n in spheroid.levels():
        shifts = ", ".join(f"{v:+.5f}" for v in spheroid.distinct_shifts(n))
        print(f"  n={n}  E0={sphere.rows_for(n)[0].E0:8.4f}  shifts: {shifts}  width {spheroid.splitting_width(n):.5f}")
    print(f"  mean width over n <= 3: {spheroid.mean_splitting_width(3):.5f}\n")
    emit_level_svg((sphere, spheroid), here / f"levels_{name}.svg")

# Width as a function of curvature at fixed omega: it grows with lam,
# starting from zero in the flat limit where every shift is -1.5 eps (n+1) omega.
print("mean width vs lam (omega = 1, eps = 0.1):")
for lam in (0.2, 0.5, 0.8, 1.0, 1.5, 2.0):
    t = osc.level_table(3, osc.OscParams.from_values(lam, 1.0, 0.1))
    print(f"  lam = {lam:3.1f}: {t.mean_splitting_width(3):.5f}")

flat = osc.OscParams.from_values(1e-3, 1.0, 0.01)
print("\nnear-flat ratios dE / (eps (n+1) omega):",
      [round(osc.shift_total(st, flat) / (0.01 * (st.n + 1)), 4) for st in osc.valid_states(4)])

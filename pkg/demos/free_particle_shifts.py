"""Free particle on a slightly flattened sphere.

On the sphere of curvature lam the highest-weight modes sin^n(chi) e^{i n phi}
have E = lam n (n+1) / 2. Stretching the equator (eps > 0) shifts them at
first order; the shift has a Gamma-ratio closed form and an integral form,
and this script compares the two and shows the simplified rational form
-(eps lam / 2)(n^2 + n - 3/4)(n + 1)/(n + 3/2).
"""

from spheroid_qm import free_particle as fp
from spheroid_qm.geometry import SurfaceParams

lam, eps = 1.0, 0.1
s = SurfaceParams.from_curvature(lam, eps)
print(f"surface: a = {s.a:.4f}, b = {s.b:.4f}  (lam = {lam}, eps = {eps})\n")
print(f"{'n':>3} {'E0':>8} {'closed':>14} {'quadrature':>14} {'rational':>14}")
for n in range(8):
    st = fp.FreeState(n, s)
    rational = -0.5 * eps * lam * (n * n + n - 0.75) * (n + 1) / (n + 1.5)
    print(f"{n:>3} {fp.energy0(n, s):>8.3f} {fp.shift1_closed(st):>14.10f} "
          f"{fp.shift1_quadrature(st):>14.10f} {rational:>14.10f}")

# The ground state is pushed up, everything else comes down.
print("\nn = 0 shift equals eps lam / 4:", fp.shift1_closed(fp.FreeState(0, s)), eps * lam / 4)

# Off-diagonal elements between different n vanish by the azimuthal integral,
# so the diagonal shift is the whole first-order story in this basis.
worst = max(abs(fp.offdiag_element(m, n, s)) for n in range(6) for m in range(n))
print(f"largest off-diagonal element for n <= 5: {worst:.2e}")

"""Exponential integrability of the conjugate on either side of pi/2.

For f = c * rho_E with E a half circle the conjugate is
(2c/pi) log|tan(t/2)|. At c = pi/2 its super-level sets have measure
4 arctan(exp(-lambda)), so exp of the conjugate is not integrable; for
smaller c every jump is below pi and it is.
"""

import numpy as np

from conjugate_lab import circle, distribution as dist
from conjugate_lab.circle import ArcSet

E = ArcSet([(0.0, np.pi)])
for c in (np.pi / 4, 1.2, np.pi / 2):
    v = dist.verdict(c, E)
    print(f"c={c:.4f}: {v.verdict:15s} via {v.theorem}", f"alpha={v.alpha:.4f}" if v.alpha else "")

g = circle.rho(E) * (np.pi / 2)
vals = dist.conjugate_on_graded(g, 40, n_base=1 << 14)
lam = np.array([0.5, 1, 2, 4, 6])
curve = dist.distribution_curve(vals, lam)
print("lambda   measured   4 arctan(e^-lambda)")
for l, m in zip(lam, curve.measures):
    print(f"{l:6.2f}  {m:9.6f}  {4 * np.arctan(np.exp(-l)):9.6f}")

print("depth   raw cell sum   corrected (inf = divergent)")
for depth in (10, 20, 30, 40):
    ei = dist.exp_integral(dist.conjugate_on_graded(g, depth))
    print(f"{depth:5d}  {ei.raw:12.4f}  {ei.value:12.4f}")

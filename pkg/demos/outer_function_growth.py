"""Integral means of the outer function exp(i X_f / 2) on circles r -> 1.

With f = c * rho_E the square means stay bounded for c = pi/4 and grow
without bound, though only logarithmically in 1/(1 - r), for c = pi/2.
"""

import numpy as np

from conjugate_lab import circle, poisson
from conjugate_lab.circle import ArcSet

E = ArcSet([(0.0, np.pi)])
radii = [0.5, 0.9, 0.99, 0.999, 1 - 1e-4, 1 - 1e-5, 1 - 1e-6]
for c in (np.pi / 4, np.pi / 2):
    curve = poisson.hardy_growth(circle.rho(E) * c, 2.0, radii)
    print(f"c = {c:.4f}")
    for r, m in curve.rows():
        print(f"   1-r = {1 - r:7.0e}   mean = {m:10.5f}")

"""Conjugate of the signed indicator of a half circle, computed three ways.

The closed form has logarithmic singularities at the two endpoints. The
FFT multiplier and the principal-value rule both sample the symbol by cell
averages on a uniform grid, and agree with the closed form away from the
endpoints.
"""

import numpy as np

from conjugate_lab import circle, conjugator
from conjugate_lab.circle import ArcSet

f = circle.rho(ArcSet([(0.0, np.pi)]))
for n in (1024, 4096, 16384):
    theta, exact, fft, pv, rep = conjugator.cross_check(f, n, exclusion=0.1)
    far = np.isfinite(exact) & (np.abs(np.sin(theta)) > np.sin(0.1))
    print(f"n={n:6d}  max|pv-exact|={rep.cross_error:.2e}  max|fft-exact|="
          f"{np.max(np.abs(fft[far] - exact[far])):.2e}")

t = np.array([0.5, 1.0, 2.0, 3.0])
print("exp((pi/2) conj) :", np.exp(np.pi / 2 * conjugator.conjugate_step_exact(f, t)))
print("|tan(t/2)|       :", np.abs(np.tan(t / 2)))

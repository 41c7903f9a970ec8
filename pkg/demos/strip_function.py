"""The harmonic measure g_lambda of the upper wall pieces of the strip,
checked against the Poisson integral of the image arc in the disk."""

import numpy as np

from conjugate_lab import poisson, strip
from conjugate_lab.circle import ArcSet

lam = 1.0
y0 = lam + 2
arc = ArcSet([(np.angle(np.tan((np.pi / 2 + 1j * y0) / 2)),
               np.angle(np.tan((-np.pi / 2 + 1j * y0) / 2)))]).indicator()
for tau in (0.0 + 0j, 0.5 + 2j, -1.2 + 3j, 0.3 + 6j):
    g = strip.g_lambda(tau, lam)
    w = strip.strip_to_disk(tau)
    print(f"tau={tau!s:10s} g={g:.12f} disk={poisson.herglotz(arc, w).real:.12f}")

rows = strip.heatmap(lam, np.linspace(-1.5, 1.5, 7), np.linspace(-2, 8, 6))
print("heatmap rows (x, y, g):", rows.shape)

"""A bounded real symbol with a jump of exactly pi whose conjugate still has
an integrable exponential.

The sine series h is continuous and vanishes at t0 only like
pi/log(1/|t - t0|); its conjugate -2 g(|t - t0|) pulls exp(conj f) down from
1/|t - t0| to 1/(|t - t0| log^2 |t - t0|).
"""

import numpy as np

from conjugate_lab import distribution as dist, series

spec = series.JumpSymbolSpec()
d = 10.0 ** -np.arange(2, 9)
e = np.exp(series.jump_conjugate(spec, spec.t0 + d))
print("offset     exp(conj f)   ratio to 1/(x log^2 x)")
for x, v in zip(d, e):
    print(f"{x:8.0e}  {v:12.4e}  {v / series.envelope(x):8.4f}")

for depth in (20, 30, 40):
    ei = dist.exp_integral(dist.conjugate_on_graded(spec, depth))
    print(f"depth {depth}: integral of exp(conj f) = {ei.value:.6f} (raw {ei.raw:.6f})")

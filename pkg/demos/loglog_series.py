"""The cosine series sum cos(nx)/(n log n) grows like log log(1/x) + B.

Partial sums carry a guaranteed remainder bound; the constant B is fixed by
a direct sum plus a midpoint-rule tail estimate.
"""

import numpy as np

from conjugate_lab import series

B = series.constant_B()
print(f"B = {B:.12f}")
print("      x       series    asymptote    error   5*rate")
for k in range(2, 7):
    x = 10.0 ** -k
    s = series.loglog_cos_series(x, 1e-2)
    a = series.asymptote(x)
    print(f"{x:8.0e}  {s.value:10.6f}  {a:10.6f}  {s.value - a:+8.4f}  {5 * series.decay_rate(x):7.4f}")

xs = 10.0 ** -np.arange(8, 13)
print("fast path near 0:", np.round(series.loglog_cos_values(xs) - series.asymptote(xs), 5))

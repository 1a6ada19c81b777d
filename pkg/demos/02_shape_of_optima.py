"""Which support shapes win as the density parameter s moves.

For each s the optimum is a partition of the colors, or (for fractional s)
a partition plus the union of two of its parts.  A dense numeric search
over all 2^q - 1 subsets is run alongside as a cross-check for q = 4.

Run: python3 demos/02_shape_of_optima.py
"""

import numpy as np

from chromopt import colorsets as cs
from chromopt import kkt

q = 6
print(f"q = {q}")
print(f"{'s':>6} {'OPT':>14}  shape")
for s in np.linspace(1.25, q, 20):
    rep = kkt.global_solve(q, float(s))
    cls = cs.classify_support(cs.support_graph(rep.best.weight_vector()))
    print(f"{s:6.3f} {rep.opt_value:14.10f}  {cls} sizes={list(rep.best.candidate.sizes)}"
          + (f"  (+{len(rep.ties)} ties)" if rep.ties else ""))

print("\ndense oracle, q = 4")
for s in (1.5, 2.0, 2.75, 3.5):
    closed = kkt.global_solve(4, s).opt_value
    brute = kkt.brute_opt(4, s, restarts=32)
    print(f"  s={s:<5} closed form {closed:.10f}  dense search {brute:.10f}  diff {abs(closed - brute):.1e}")

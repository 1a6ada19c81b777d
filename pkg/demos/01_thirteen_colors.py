"""Thirteen colors, density 9/20: the balanced vector is not optimal.

Run: python3 demos/01_thirteen_colors.py
"""

import math

from chromopt import colorsets as cs
from chromopt import counterexamples as ce
from chromopt import kkt

bal = ce.balanced_vector(13, 10)
alt = ce.q13_vector()

print("balanced 10-partition of 13 colors")
print(f"  objective   {cs.obj(bal):.12f}   (0.3 ln 2 = {0.3 * math.log(2):.12f})")
print(f"  pair sum    {cs.esum(bal):.12f}   (threshold 0.45)")

print("eleven classes: two pairs and nine singletons")
for m, w in alt.items():
    print(f"  {cs.colors_of(m)!s:>8}  {w:.12f}")
print(f"  objective   {cs.obj(alt):.12f}")
print(f"  pair sum    {cs.esum(alt):.12f}")
print(f"  gain        {cs.obj(alt) - cs.obj(bal):.6e}")

rep = kkt.global_solve(13, 10)
print(f"global optimum over admissible shapes: {rep.opt_value:.12f}")
print(f"  shape {rep.best.candidate.kind} sizes {list(rep.best.candidate.sizes)}")
print(f"  candidates evaluated: {rep.candidates_evaluated}")

# the same block drops into larger instances
for s, q in [(12, 15), (20, 30), (40, 70)]:
    v = ce.embed_counterexample(s, q)
    gap = cs.obj(v) - cs.obj(ce.balanced_vector(q, s))
    print(f"embedded at s={s:>2} q={q:>2}: gain {gap:.3e}, feasible={cs.feasible(v, s)}")

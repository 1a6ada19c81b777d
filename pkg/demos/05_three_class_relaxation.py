"""The relaxation with three classes, traced along its constraint circle.

With part sizes equal to weights the objective is F = sum a ln a.  Points
with sum 1 and sum of squares 1/s form a circle parametrized by theta;
F has a strict local minimum at theta = pi/3, where two weights coincide.

Run: python3 demos/05_three_class_relaxation.py > theta.csv
"""

import math
import sys

from chromopt import relaxation as rx

s = 2.0
prof = rx.f_theta_profile(s, grid=33)
sys.stdout.write(prof.to_csv())

d1, d2 = rx.f_theta_derivatives(s, math.pi / 3)
print(f"# F'(pi/3)  difference {prof.d1:.2e}  exact {d1:.2e}", file=sys.stderr)
print(f"# F''(pi/3) difference {prof.d2:.6f}  exact {d2:.6f}", file=sys.stderr)
for k in (3, 4, 5):
    sol = rx.relaxed_solve(s, k, 0.02)
    print(f"# k={k} pinned={sol.ell} F={sol.F:.6f} bound={rx.relaxed_bound(s, 0.02, sol.ell):.6f} "
          f"-ln s={-math.log(s):.6f}", file=sys.stderr)

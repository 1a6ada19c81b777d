"""A one-parameter family that beats the balanced vector for large s.

Sizes t+1 (r-1 times), t (s-r+1 times) and one singleton, weighted by a
closed form.  Inside the range 50 t ln t <= r <= min(s/2, 1.5 t^2 ln^2 t)
the gain Y - X is guaranteed positive; outside it can still be positive.

Run: python3 demos/03_large_s_family.py
"""

import math

from chromopt import counterexamples as ce

for s, t, r in [(3400, 13, 1700), (3700, 14, 1850), (10000, 14, 2000), (50000, 20, 20000)]:
    rep = ce.construct_counterexample(s, t, r)
    print(f"s={s:>6} t={t:>3} r={r:>6}  Y-X={rep.Y - rep.X:+.3e}  "
          f"in range={rep.hypothesis!s:5}  valid={rep.valid}")

t = 13
print(f"\nfor t={t}: 50 t ln t = {50 * t * math.log(t):.2f}, 1.5 t^2 ln^2 t = {1.5 * t * t * math.log(t) ** 2:.2f}")
print("the window is empty, so r=1700 only wins numerically")

s = 50000
hits = ce.scan_counterexamples(s, 20 * s)
print(f"\nscan s={s} around q0={20 * s}: {len(hits)} values of q, first {hits[:3]}")

"""Exact coloring counts of Turan graphs and their exponential rate.

The number of proper q-colorings of T_s(n) grows like exp(rate * n); the
rate tends to the optimum of the weight problem.  Counts are exact big
integers from a Stirling-number formula, checked here against brute force.

Run: python3 demos/04_counting_colorings.py
"""

from chromopt import graphs as gr
from chromopt import kkt

parts = [2, 2, 1]
g = gr.complete_multipartite(parts)
for q in range(2, 6):
    a = gr.count_colorings_brute(g, q).count
    b = gr.count_colorings_dc(g, q).count
    c = gr.count_colorings_multipartite(parts, q).count
    print(f"K_{{2,2,1}} q={q}: brute {a}  deletion-contraction {b}  formula {c}")

for q, s, ns in [(3, 2, range(20, 201, 45)), (13, 10, range(40, 401, 90))]:
    opt = kkt.global_solve(q, s).opt_value
    print(f"\nq={q} s={s}  optimum {opt:.6f}")
    for n in ns:
        rate = gr.log_rate(gr.turan_parts(n, s), q)
        print(f"  n={n:>3} rate {rate:.6f}  gap {rate - opt:.5f}")

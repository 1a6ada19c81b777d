"""Self-check suites run by ``chromopt verify``.

Each suite returns a list of ``Check`` records; a suite passes when all of
its checks do.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import colorsets as cs
from . import counterexamples as ce
from . import graphs as gr
from . import kkt
from . import relaxation as rx
from . import supports as sp


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def suite_spectra(seed: int = 0) -> list[Check]:
    out = []
    c5 = 2 * math.cos(2 * math.pi / 5)
    c5b = 2 * math.cos(4 * math.pi / 5)
    roots = sorted(np.roots([1, -2, -2, 2]).real, reverse=True)
    expected = {
        "3K1": (sp.three_k1(), [0, 0, 0]),
        "C4": (sp.cycle(4), [2, 0, 0, -2]),
        "C5": (sp.cycle(5), [2, c5, c5, c5b, c5b]),
        "C5+": (sp.c5_plus(), sorted([roots[0], roots[1], 0.0, roots[2], -2.0], reverse=True)),
    }
    for name, (g, want) in expected.items():
        got = sp.eigenvalues(g)
        err = float(np.max(np.abs(got - np.asarray(want, dtype=float))))
        out.append(Check(f"eigenvalues {name}", err <= 1e-9, f"max error {err:.3g}"))
        out.append(Check(f"three nonnegative eigenvalues {name}", sp.count_nonneg_eigenvalues(g) == 3))
    return out


def suite_oracle(seed: int = 0) -> list[Check]:
    out = []
    for q in (2, 3, 4):
        for s in (1 + (q - 1) * 0.37, float(q)):
            closed = kkt.global_solve(q, s).opt_value
            brute = kkt.brute_opt(q, s, restarts=16, seed=seed)
            gap = abs(closed - brute)
            out.append(Check(f"brute vs closed form q={q} s={s:.4g}", gap <= 1e-6, f"gap {gap:.3g}"))
    return out


def suite_monotonic(seed: int = 0) -> list[Check]:
    out = []
    for q in (3, 5, 8, 13):
        grid = np.linspace(1.05, q, 25)
        vals = [kkt.global_solve(q, float(s)).opt_value for s in grid]
        dec = all(a > b for a, b in zip(vals, vals[1:]))
        upper = all(v <= math.log(q) - math.log(s) + 1e-12 for v, s in zip(vals, grid))
        out.append(Check(f"OPT strictly decreasing in s, q={q}", dec))
        out.append(Check(f"OPT <= ln q - ln s, q={q}", upper))
    return out


def suite_counting(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(40):
        n = rng.randint(1, 7)
        q = rng.randint(1, 4)
        edges = tuple(e for e in combinations(range(n), 2) if rng.random() < 0.5)
        g = gr.ColoredGraph(n, edges)
        if gr.count_colorings_brute(g, q).count != gr.count_colorings_dc(g, q).count:
            mismatches += 1
    out = [Check("brute == deletion-contraction", mismatches == 0, f"{mismatches} mismatches")]
    bad = 0
    for _ in range(15):
        parts = [rng.randint(1, 3) for _ in range(rng.randint(1, 4))]
        q = rng.randint(1, 5)
        g = gr.complete_multipartite(parts)
        if q ** g.n > 10 ** 6:
            continue
        if gr.count_colorings_brute(g, q).count != gr.count_colorings_multipartite(parts, q).count:
            bad += 1
    out.append(Check("brute == multipartite formula", bad == 0, f"{bad} mismatches"))
    return out


def suite_relaxation(seed: int = 0) -> list[Check]:
    out = []
    for s in (1.5, 2.0, 2.5, 3 - 1e-6):
        d1, d2 = rx.f_theta_derivatives(s, math.pi / 3)
        prof = rx.f_theta_profile(s)
        out.append(Check(f"F'(pi/3) = 0, s={s}", abs(prof.d1) <= 1e-6 and abs(d1) <= 1e-9))
        out.append(Check(f"F''(pi/3) > 0, s={s}", d2 > 0, f"{d2:.3g}"))
    for s, k, delta in [(2.0, 3, 0.0), (2.5, 3, 0.01), (3.7, 6, 0.02)]:
        sol = rx.relaxed_solve(s, k, delta)
        out.append(Check(f"F <= -ln s, s={s} k={k}", sol.F <= -math.log(s) + 1e-12))
        bound = rx.relaxed_bound(s, delta, sol.ell)
        out.append(Check(f"F <= pinned bound, s={s} k={k}", sol.F <= bound + 1e-12))
    return out


def suite_counterexample(seed: int = 0) -> list[Check]:
    v = ce.q13_vector()
    out = [
        Check("q13 beats balanced", cs.obj(v) - cs.obj(ce.balanced_vector(13, 10)) > 2e-3),
        Check("q13 feasible", cs.feasible(v, 10)),
    ]
    rep = ce.construct_counterexample(3400, 13, 1700)
    out.append(Check("(3400, 13, 1700) has Y > X", rep.beats_turan, f"Y-X={rep.Y - rep.X:.3g}"))
    out.append(Check("scan s=50000 nonempty", bool(ce.scan_counterexamples(50000, 20 * 50000))))
    return out


SUITES = {
    "spectra": suite_spectra,
    "oracle": suite_oracle,
    "monotonic": suite_monotonic,
    "counting": suite_counting,
    "relaxation": suite_relaxation,
    "counterexample": suite_counterexample,
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](seed)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name](seed)

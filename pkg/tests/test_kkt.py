import math

import numpy as np
import pytest
from scipy.optimize import minimize

from chromopt import colorsets as cs
from chromopt import counterexamples as ce
from chromopt import kkt
from chromopt.supports import SizedCandidate, enum_p_candidates, enum_q_candidates

LN2 = math.log(2)


def expanded_residuals(p, s):
    v = p.weight_vector()
    return abs(cs.vsum(v) - 1), abs(cs.esum(v) - cs.edge_threshold(s))


@pytest.mark.parametrize("s", range(2, 12))
def test_pk_q_is_s_plus_2(s):
    p = kkt.solve_pk(SizedCandidate("P", (2,) + (1,) * s), s)
    assert p.lam == pytest.approx(s * LN2, abs=1e-12)
    assert p.mu == pytest.approx(-(s - 1) / (s + 1) * LN2, abs=1e-12)
    assert p.objective == pytest.approx(2 / (s + 1) * LN2, abs=1e-12)


@pytest.mark.parametrize("t,s", [(2, 3), (3, 4), (5, 2)])
def test_pk_balanced(t, s):
    p = kkt.solve_pk(SizedCandidate("P", (t,) * s), s)
    assert p.objective == pytest.approx(math.log(t))
    assert all(a == pytest.approx(1 / s) for a in p.alphas)


def test_pk_q13_beats_balanced():
    p = kkt.solve_pk(SizedCandidate("P", (2, 2) + (1,) * 9), 10)
    assert p.objective > 0.3 * LN2
    assert p.objective == pytest.approx(ce.q13_objective_exact(), abs=1e-12)
    assert np.allclose(p.alphas, ce.q13_weights(), atol=1e-12)


def test_pk_rejects_too_few_parts():
    with pytest.raises(ValueError):
        kkt.solve_pk(SizedCandidate("P", (3, 2)), 2.5)


def test_pk_degenerate_two_value():
    p = kkt.solve_pk(SizedCandidate("P", (2, 2, 2)), 2.5)
    x, y = kkt.two_value_weights(3, 2.5)
    assert p.alphas == pytest.approx((x, x, y))
    assert x >= y
    assert p.objective == pytest.approx(LN2)
    assert max(expanded_residuals(p, 2.5)) <= 1e-9


def test_qk_examples():
    p = kkt.solve_qk(SizedCandidate("Q", (1, 1)), 1.5)
    assert p is not None and p.beta > 0
    assert p.objective == pytest.approx(kkt.brute_opt(2, 1.5, restarts=16), abs=1e-6)
    p = kkt.solve_qk(SizedCandidate("Q", (2, 1)), 1.2)
    assert abs(sum(p.alphas) - 1) <= 1e-9
    assert max(expanded_residuals(p, 1.2)) <= 1e-9
    with pytest.raises(ValueError):
        kkt.solve_qk(SizedCandidate("Q", (2, 1, 1)), 2.0)


def test_qk_nonpositive_beta_gives_none():
    # a huge merged pair pushes beta below zero
    assert kkt.solve_qk(SizedCandidate("Q", (1, 1, 8, 8)), 3.5) is None


def _restricted_max(c, s):
    """SLSQP on the candidate's own coordinates, many starts."""
    v0 = kkt.solve_pk(c, s) if c.kind == "P" else kkt.solve_qk(c, s)
    classes = c.color_classes()
    sets = classes + ([classes[0] + classes[1]] if c.kind == "Q" else [])
    logs = np.log([len(x) for x in sets])
    n = len(sets)
    dis = np.array([[0.0 if set(a) & set(b) else 1.0 for b in sets] for a in sets])
    np.fill_diagonal(dis, 0)
    cons = [{"type": "eq", "fun": lambda a: a.sum() - 1},
            {"type": "ineq", "fun": lambda a: a @ dis @ a / 2 - cs.edge_threshold(s)}]
    rng = np.random.default_rng(0)
    best = -np.inf
    for _ in range(20):
        r = minimize(lambda a: -logs @ a, rng.dirichlet(np.ones(n)), method="SLSQP",
                     bounds=[(0, 1)] * n, constraints=cons, options={"ftol": 1e-14, "maxiter": 500})
        if r.success and (r.x @ dis @ r.x / 2 >= cs.edge_threshold(s) - 1e-10):
            best = max(best, -r.fun)
    return v0, best


@pytest.mark.parametrize("sizes,s", [((3, 2, 1), 2.4), ((2, 2, 1, 1), 3.3), ((4, 1, 1), 2.0)])
def test_pk_matches_restricted_numeric(sizes, s):
    p, best = _restricted_max(SizedCandidate("P", sizes), s)
    assert p.objective == pytest.approx(best, abs=1e-6)


@pytest.mark.parametrize("q,s", [(3, 1.5), (4, 2.5), (5, 3.4), (7, 4.2), (13, 10), (20, 7.5)])
def test_report_invariants(q, s):
    rep = kkt.global_solve(q, s)
    assert rep.best.feasible
    for p in [rep.best] + rep.ties:
        assert min(p.alphas) >= -1e-12
        r1, r2 = expanded_residuals(p, s)
        # the quadratic constraint is active at the optimum
        assert r1 <= 1e-9 and r2 <= 1e-9
        assert rep.best.objective >= p.objective - 1e-9
    assert rep.opt_value <= math.log(q) - math.log(s) + 1e-12


def test_global_examples():
    assert kkt.global_solve(5, 5).opt_value == 0.0
    assert kkt.global_solve(13, 10).opt_value >= ce.q13_objective_exact() - 1e-12
    with pytest.raises(ValueError):
        kkt.global_solve(3, 1.0)
    with pytest.raises(ValueError):
        kkt.global_solve(3, 3.5)
    with pytest.raises(ValueError):
        kkt.global_solve(31, 5)


@pytest.mark.parametrize("q", [4, 6, 9])
def test_integer_s_partition_only(q):
    for s in range(2, q + 1):
        rep = kkt.global_solve(q, s)
        assert rep.best.candidate.kind == "P"
        assert all(p.candidate.kind == "P" for p in rep.ties)


def test_monotone_in_s():
    for q in (4, 7, 11):
        vals = [kkt.global_solve(q, s).opt_value for s in np.linspace(1.01, q, 40)]
        assert all(a > b for a, b in zip(vals, vals[1:]))


def test_paranoid_never_beats_default():
    for q, s in [(5, 2.5), (6, 3.3), (8, 4.5)]:
        a = kkt.global_solve(q, s).opt_value
        b = kkt.global_solve(q, s, paranoid=True)
        assert b.opt_value == pytest.approx(a, abs=1e-9)
        assert b.candidates_evaluated > kkt.global_solve(q, s).candidates_evaluated


def test_evaluated_counts_candidates():
    q, s = 6, 3.5
    rep = kkt.global_solve(q, s)
    n = sum(1 for k in range(4, 6) for _ in enum_p_candidates(q, k)) + len(list(enum_q_candidates(q, 4)))
    assert rep.candidates_evaluated == n


def test_brute_examples():
    assert kkt.brute_opt(2, 2, restarts=8) == pytest.approx(0.0, abs=1e-9)
    assert kkt.brute_opt(3, 2, restarts=64) == pytest.approx(kkt.global_solve(3, 2).opt_value, abs=1e-6)
    assert kkt.brute_opt(4, 2.5, restarts=32) == pytest.approx(kkt.global_solve(4, 2.5).opt_value, abs=1e-6)
    with pytest.raises(ValueError):
        kkt.brute_opt(6, 2)


def test_brute_deterministic():
    assert kkt.brute_opt(3, 1.7, restarts=4, seed=3) == kkt.brute_opt(3, 1.7, restarts=4, seed=3)


def test_project_simplex():
    rng = np.random.default_rng(1)
    for _ in range(50):
        y = rng.normal(size=7) * 3
        x = kkt.project_simplex(y)
        assert x.min() >= 0 and x.sum() == pytest.approx(1.0)
        # optimality: no simplex vertex is closer than the projection
        for e in np.eye(7):
            assert np.linalg.norm(y - x) <= np.linalg.norm(y - e) + 1e-12


def test_json_shape():
    d = kkt.global_solve(4, 2.5).to_dict()
    assert set(d) == {"q", "s", "opt", "best", "ties", "evaluated"}
    assert {"kind", "sizes", "alphas", "lambda", "mu"} <= set(d["best"])

"""Closed-form stationary points and the structure-guided solver.

By the structure theorem every optimal weight vector is supported either on
a k-partition of the colors (``ceil(s) <= k``) or, for non-integer ``s``, on
a ``ceil(s)``-partition plus the union of two of its parts.  For a fixed
shape the KKT conditions pin the weights down in closed form, so OPT is the
best closed-form value over an enumeration of part sizes.
"""

from __future__ import annotations

import math
from itertools import combinations
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import colorsets as cs
from .supports import SizedCandidate, enum_p_candidates, enum_q_candidates

NEG_TOL = 1e-12
TIE_TOL = 1e-9
INT_TOL = 1e-12
MAX_Q = 30


@dataclass(frozen=True)
class StationaryPoint:
    candidate: SizedCandidate
    alphas: tuple[float, ...]  # part weights, then beta for kind Q
    lam: float
    mu: float
    objective: float
    feasible: bool

    @property
    def beta(self) -> float | None:
        return self.alphas[-1] if self.candidate.kind == "Q" else None

    def weight_vector(self) -> cs.WeightVector:
        c = self.candidate
        classes = c.color_classes()
        pairs = [(cls, a) for cls, a in zip(classes, self.alphas[: c.k])]
        if c.kind == "Q":
            pairs.append((classes[0] + classes[1], self.alphas[-1]))
        return cs.WeightVector.from_sets(c.q, pairs)

    def to_dict(self) -> dict:
        d = self.candidate.to_dict()
        d.update(alphas=list(self.alphas), **{"lambda": self.lam, "mu": self.mu},
                 objective=self.objective)
        return d


@dataclass(frozen=True)
class SolveReport:
    q: int
    s: float
    best: StationaryPoint
    ties: list[StationaryPoint] = field(default_factory=list)
    candidates_evaluated: int = 0

    @property
    def opt_value(self) -> float:
        return self.best.objective

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "s": self.s,
            "opt": self.opt_value,
            "best": self.best.to_dict(),
            "ties": [t.to_dict() for t in self.ties],
            "evaluated": self.candidates_evaluated,
        }


def _is_int(x: float) -> bool:
    return abs(x - round(x)) <= INT_TOL


def two_value_weights(k: int, s: float) -> tuple[float, float]:
    """``(x, y)`` with ``(k-1)x + y = 1`` and ``(k-1)x^2 + y^2 = 1/s``.

    Picks the root with ``x >= y`` when it keeps ``y >= 0``, the other root
    otherwise.  Requires ``k >= s``.
    """
    if k == 1:
        return 1.0, 1.0
    disc = (k - 1) * (k / s - 1.0)
    if disc < 0:
        if disc > -1e-12:
            disc = 0.0
        else:
            raise ValueError(f"no two-value solution for k={k} < s={s}")
    d = math.sqrt(disc) / ((k - 1) * k)
    x = 1.0 / k + d
    y = 1.0 - (k - 1) * x
    if y < -NEG_TOL:
        x = 1.0 / k - d
        y = 1.0 - (k - 1) * x
    return x, y


def min_parts(s: float) -> int:
    """``ceil(s)``, with ``s`` within rounding of an integer treated as integral."""
    return round(s) if _is_int(s) else math.ceil(s)


def _check_s(s: float) -> None:
    if not s > 1:
        raise ValueError(f"s must exceed 1, got {s}")


def solve_pk(c: SizedCandidate, s: float) -> StationaryPoint | None:
    """Interior KKT point for weights on a fixed k-partition."""
    if c.kind != "P":
        raise ValueError("solve_pk needs a P candidate")
    _check_s(s)
    k = c.k
    if k < min_parts(s):
        raise ValueError(f"k={k} parts cannot carry density s={s}")
    logs = np.log(np.asarray(c.sizes, dtype=float))
    s1 = float(logs.mean())
    if _is_int(s) and k == round(s):
        alphas = (1.0 / k,) * k
        return StationaryPoint(c, alphas, 0.0, s1, s1, True)
    var = float(np.mean((logs - s1) ** 2))
    if var <= 1e-15:
        # all parts equal: objective is flat on the feasible set
        x, y = two_value_weights(k, s)
        alphas = (x,) * (k - 1) + (y,)
        return StationaryPoint(c, alphas, 0.0, s1, s1, True)
    lam = k * math.sqrt(s / (k - s) * var)
    mu = s1 - lam / k
    alphas = tuple(float(a) for a in (logs - mu) / lam)
    if min(alphas) < -NEG_TOL:
        return None
    return StationaryPoint(c, alphas, lam, mu, mu + lam / s, True)


def solve_qk(c: SizedCandidate, s: float) -> StationaryPoint | None:
    """Interior KKT point for a k-partition plus the union of parts 1 and 2."""
    if c.kind != "Q":
        raise ValueError("solve_qk needs a Q candidate")
    _check_s(s)
    k = c.k
    if abs(k - 1 - s) <= INT_TOL:
        raise ValueError(f"k - 1 = s = {s} admits no interior point")
    a1, a2 = c.sizes[0], c.sizes[1]
    logs = np.log(np.asarray(c.sizes, dtype=float))
    log_union = math.log(a1 + a2)
    log_ratio = math.log(a1 * a2 / (a1 + a2))
    s1 = (log_union + float(logs[2:].sum())) / (k - 1)
    s2 = (-(log_ratio ** 2) + float((logs ** 2).sum())) / (k - 1)
    d = s / (k - 1 - s) * (s2 - s1 * s1)
    if d <= 0:
        return None
    lam = (k - 1) * math.sqrt(d)
    mu = s1 - lam / (k - 1)
    alpha1 = math.log((a1 + a2) / a2) / lam
    alpha2 = math.log((a1 + a2) / a1) / lam
    beta = (log_ratio - mu) / lam
    rest = [float(x) for x in (logs[2:] - mu) / lam]
    alphas = (alpha1, alpha2, *rest, beta)
    if beta <= 0 or min(alphas) < -NEG_TOL:
        return None
    return StationaryPoint(c, alphas, lam, mu, mu + lam / s, True)


def constraint_residuals(p: StationaryPoint, s: float) -> tuple[float, float]:
    """``(|sum - 1|, |quadratic form - 1/s|)`` in the candidate coordinates."""
    a = np.asarray(p.alphas)
    if p.candidate.kind == "P":
        quad = float(a @ a)
    else:
        beta = a[-1]
        quad = float(a[:-1] @ a[:-1] + beta ** 2 + 2 * beta * (a[0] + a[1]))
    return abs(float(a.sum()) - 1.0), abs(quad - 1.0 / s)


def _order_key(p: StationaryPoint):
    return p.candidate.sort_key()


def global_solve(q: int, s: float, paranoid: bool = False) -> SolveReport:
    """OPT over the shapes allowed by the structure theorem.

    With ``paranoid`` the Q shapes are swept for every feasible k instead of
    only ``ceil(s)``.
    """
    if not (1 < s <= q):
        raise ValueError(f"need 1 < s <= q, got s={s}, q={q}")
    if q > MAX_Q:
        raise ValueError(f"q={q} exceeds the supported maximum {MAX_Q}")
    kmin = min_parts(s)
    kmax = q if kmin == q else q - 1
    points: list[StationaryPoint] = []
    evaluated = 0
    for k in range(kmin, kmax + 1):
        for c in enum_p_candidates(q, k):
            evaluated += 1
            p = solve_pk(c, s)
            if p is not None:
                points.append(p)
    if paranoid:
        q_ks = [k for k in range(max(2, kmin), q + 1) if abs(k - 1 - s) > INT_TOL]
    elif not _is_int(s) and kmin >= 2:
        q_ks = [kmin]
    else:
        q_ks = []
    for k in q_ks:
        for c in enum_q_candidates(q, k):
            evaluated += 1
            p = solve_qk(c, s)
            if p is not None:
                points.append(p)
    if not points:
        raise RuntimeError(f"no stationary point found for q={q}, s={s}")
    points.sort(key=_order_key)
    best = max(points, key=lambda p: p.objective)
    ties = [p for p in points if p is not best and p.objective >= best.objective - TIE_TOL]
    return SolveReport(q, float(s), best, ties, evaluated)


# independent numeric oracle over all 2^q - 1 coordinates


def project_simplex(y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort method)."""
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, len(y) + 1)
    rho = np.nonzero(u - css / ind > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    return np.maximum(y - theta, 0.0)


def _dense_problem(q: int):
    masks = np.arange(1, 1 << q)
    sizes = np.array([int(m).bit_count() for m in masks])
    gain = np.log(sizes)
    disjoint = (masks[:, None] & masks[None, :]) == 0
    return masks, gain, disjoint.astype(float)


def _repair(x: np.ndarray, anchor: np.ndarray, dmat: np.ndarray, c: float) -> np.ndarray:
    """Move ``x`` toward ``anchor`` just far enough to restore the edge constraint.

    Along ``(1-t)x + t*anchor`` the edge functional is a quadratic in ``t``;
    the smallest ``t`` in [0, 1] reaching ``c`` is taken.
    """
    ex = 0.5 * x @ dmat @ x
    if ex >= c:
        return x
    ea = 0.5 * anchor @ dmat @ anchor
    b = 0.5 * x @ dmat @ anchor
    # E(t) = ex (1-t)^2 + 2 b t (1-t) + ea t^2
    coef = [ex - 2 * b + ea, 2 * b - 2 * ex, ex - c]
    roots = [r.real for r in np.roots(coef) if abs(r.imag) < 1e-12 and -1e-12 <= r.real <= 1 + 1e-12]
    t = min(roots) if roots else 1.0
    t = min(1.0, max(0.0, t) + 1e-15)
    y = (1 - t) * x + t * anchor
    if 0.5 * y @ dmat @ y < c - 1e-15:
        return anchor
    return y


def _clique_anchor(z: np.ndarray, dmat: np.ndarray, threshold: float = 1e-9) -> np.ndarray:
    """Uniform weights on a largest pairwise-disjoint family inside the support of ``z``.

    Among vectors supported there this maximizes the edge functional, so it is
    the cheapest direction back into the feasible set when the optimum sits
    on a sliver of it.
    """
    supp = [i for i in np.argsort(-z) if z[i] > threshold]
    best: tuple[int, ...] = ()
    for size in range(len(supp), 0, -1):
        for sub in combinations(supp, size):
            if all(dmat[i, j] for i, j in combinations(sub, 2)):
                best = sub
                break
        if best:
            break
    out = np.zeros_like(z)
    out[list(best)] = 1.0 / len(best)
    return out


def brute_opt(q: int, s: float, restarts: int = 64, iters: int = 300, seed: int = 0) -> float:
    """Best feasible objective from randomized penalty ascent plus SLSQP polish.

    Each restart runs projected gradient ascent on the simplex with a
    quadratic penalty for the edge constraint (penalty x10 every 100
    iterations, step 0.1/sqrt(iter)), then polishes with SLSQP from both the
    ascent result and the random start.  The final
    point is pulled back into the feasible set before it is scored, so the
    returned value is always attained by a feasible vector.
    """
    if q > 5:
        raise ValueError("brute_opt is limited to q <= 5")
    if not (1 < s <= q):
        raise ValueError(f"need 1 < s <= q, got s={s}, q={q}")
    masks, gain, dmat = _dense_problem(q)
    c = cs.edge_threshold(s)
    anchor = np.array([1.0 / q if int(m).bit_count() == 1 else 0.0 for m in masks])
    children = np.random.SeedSequence(seed).spawn(restarts)
    constraints = [
        {"type": "eq", "fun": lambda z: z.sum() - 1.0, "jac": lambda z: np.ones_like(z)},
        {"type": "ineq", "fun": lambda z: 0.5 * z @ dmat @ z - c, "jac": lambda z: dmat @ z},
    ]
    best = -math.inf
    for child in children:
        rng = np.random.default_rng(child)
        start = project_simplex(rng.exponential(size=len(masks)))
        x = start.copy()
        penalty = 1.0
        for it in range(1, iters + 1):
            viol = max(0.0, c - 0.5 * x @ dmat @ x)
            grad = gain + penalty * viol * (dmat @ x)
            x = project_simplex(x + 0.1 * grad / math.sqrt(it))
            if it % 100 == 0:
                penalty *= 10.0
        # the ascent can stall on the full-set vertex, so polish both points
        for x0 in (x, start):
            res = minimize(
                lambda z: -(gain @ z),
                x0,
                jac=lambda z: -gain,
                method="SLSQP",
                bounds=[(0.0, 1.0)] * len(masks),
                constraints=constraints,
                options={"ftol": 1e-13, "maxiter": 100},
            )
            z = np.clip(res.x, 0.0, None)
            z = z / z.sum()
            target = _clique_anchor(z, dmat)
            if 0.5 * target @ dmat @ target < c:
                target = anchor
            z = _repair(z, target, dmat, c)
            if 0.5 * z @ dmat @ z >= c - 1e-12:
                best = max(best, float(gain @ z))
    return best

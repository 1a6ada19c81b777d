"""Weight vectors that beat the balanced (Turan) vector, and the benchmarks.

The balanced vector puts weight ``1/s`` on each class of a balanced
``s``-partition of the colors; it is the optimization-side image of the
Turan graph ``T_s(n)``.  Everything here either builds a feasible vector
with a strictly larger objective or bounds the balanced objective.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import colorsets as cs

MARGIN = 1e-12
SQRT5 = math.sqrt(5.0)


def balanced_sizes(q: int, s: int) -> list[int]:
    """Sizes of a balanced ``s``-partition of ``q``, larger classes first."""
    if not (1 <= s <= q):
        raise ValueError(f"need 1 <= s <= q, got s={s}, q={q}")
    t, r = divmod(q, s)
    return [t + 1] * r + [t] * (s - r)


def vector_from_sizes(sizes, weights, q: int | None = None) -> cs.WeightVector:
    """Vector on consecutive color runs of the given sizes."""
    q = sum(sizes) if q is None else q
    entries = {}
    start = 0
    for a, w in zip(sizes, weights):
        entries[((1 << a) - 1) << start] = w
        start += a
    return cs.WeightVector(q, entries)


def balanced_vector(q: int, s: int) -> cs.WeightVector:
    sizes = balanced_sizes(q, s)
    return vector_from_sizes(sizes, [1.0 / s] * s, q)


def balanced_objective(q: int, s: int) -> float:
    t, r = divmod(q, s)
    return r / s * math.log(t + 1) + (s - r) / s * math.log(t)


def balanced_lower_bound(q: int, s: int) -> float:
    if not (1 <= s <= q):
        raise ValueError(f"need 1 <= s <= q, got s={s}, q={q}")
    return math.log(q) - math.log(s) - s * s / (2.0 * q * q)


# the (10, 13) construction

Q13_PAIR = 1 / 11 + 3 * SQRT5 / 110
Q13_SINGLE = 1 / 11 - SQRT5 / 165
Q13_SIZES = (2, 2) + (1,) * 9


def q13_weights() -> list[float]:
    return [Q13_PAIR] * 2 + [Q13_SINGLE] * 9


def q13_vector() -> cs.WeightVector:
    """Eleven classes over 13 colors that beat the 10-balanced vector."""
    return vector_from_sizes(Q13_SIZES, q13_weights(), 13)


def q13_objective_exact() -> float:
    return (2 / 11 + 3 * SQRT5 / 55) * math.log(2)


def embed_counterexample(s: int, q: int) -> cs.WeightVector | None:
    """Balanced vector with a 10-class block swapped for the scaled 13-color vector.

    Needs three classes of size 2 and seven of size 1 in the balanced
    vector; returns ``None`` if they are missing.
    """
    if s < 10 or not (s + 3 <= q <= 2 * s - 7):
        raise ValueError(f"need s >= 10 and s+3 <= q <= 2s-7, got s={s}, q={q}")
    sizes = balanced_sizes(q, s)
    twos = sizes.count(2)
    ones = sizes.count(1)
    if twos < 3 or ones < 7:
        return None
    # untouched classes first, then the 13 colors of the replaced block
    rest = [2] * (twos - 3) + [1] * (ones - 7) + [a for a in sizes if a > 2]
    rest.sort(reverse=True)
    scale = 10.0 / s
    new_sizes = rest + list(Q13_SIZES)
    weights = [1.0 / s] * len(rest) + [scale * w for w in q13_weights()]
    return vector_from_sizes(new_sizes, weights, q)


# the (s, t, r) family


def hypothesis_holds(s: int, t: int, r: int) -> bool:
    """Range conditions ``t >= 2`` and ``50 t ln t <= r <= min(s/2, 1.5 t^2 ln^2 t)``."""
    if t < 2:
        return False
    lt = math.log(t)
    return 50 * t * lt <= r <= min(s / 2, 1.5 * t * t * lt * lt)


def family_sizes(s: int, t: int, r: int) -> list[int]:
    return [t + 1] * (r - 1) + [t] * (s - r + 1) + [1]


def _family_moments(s: int, t: int, r: int) -> tuple[float, float]:
    """Mean and variance of ``ln A_i`` over the ``s+1`` family sizes."""
    counts = np.array([r - 1, s - r + 1, 1], dtype=float)
    logs = np.array([math.log(t + 1), math.log(t), 0.0])
    n = s + 1
    mean = float(counts @ logs) / n
    var = float(counts @ (logs - mean) ** 2) / n
    return mean, var


def family_xy(s: int, t: int, r: int) -> tuple[float, float]:
    """``(X, Y)``: balanced objective and the constructed objective."""
    x = r / s * math.log(t + 1) + (s - r) / s * math.log(t)
    mean, var = _family_moments(s, t, r)
    return x, mean + math.sqrt(var / s)


@dataclass(frozen=True)
class CounterexampleReport:
    s: int
    t: int
    r: int
    q: int
    X: float
    Y: float
    alphas: list[float]
    sizes: list[int]
    hypothesis: bool
    beats_turan: bool
    margin_too_small: bool
    sum_residual: float
    square_residual: float

    @property
    def valid(self) -> bool:
        return self.hypothesis and self.beats_turan and min(self.alphas) >= 0

    def weight_vector(self) -> cs.WeightVector:
        return vector_from_sizes(self.sizes, self.alphas, self.q)

    def to_dict(self, include_alphas: bool = True) -> dict:
        d = asdict(self)
        d["valid"] = self.valid
        if not include_alphas:
            d.pop("alphas")
            d.pop("sizes")
        return d


def construct_counterexample(s: int, t: int, r: int) -> CounterexampleReport:
    if t < 2:
        raise ValueError("t must be at least 2")
    if s < 1:
        raise ValueError("s must be positive")
    if not (0 < r < s):
        raise ValueError(f"need 0 < r < s, got r={r}, s={s}")
    sizes = family_sizes(s, t, r)
    logs = np.log(np.asarray(sizes, dtype=float))
    mean, var = _family_moments(s, t, r)
    alphas = (logs - mean) / ((s + 1) * math.sqrt(s * var)) + 1.0 / (s + 1)
    x, y = family_xy(s, t, r)
    gap = y - x
    return CounterexampleReport(
        s=s,
        t=t,
        r=r,
        q=s * t + r,
        X=x,
        Y=y,
        alphas=[float(a) for a in alphas],
        sizes=sizes,
        hypothesis=hypothesis_holds(s, t, r),
        beats_turan=gap >= MARGIN,
        margin_too_small=abs(gap) < MARGIN,
        sum_residual=abs(math.fsum(alphas) - 1.0),
        square_residual=abs(math.fsum(alphas * alphas) - 1.0 / s),
    )


def hypothesis_window(s: int, t: int) -> range:
    """All ``r`` satisfying the range conditions for this ``(s, t)``."""
    if t < 2:
        return range(0)
    lt = math.log(t)
    lo = math.ceil(50 * t * lt)
    hi = math.floor(min(s / 2, 1.5 * t * t * lt * lt))
    # guard the float rounding at both ends
    while lo <= hi and not hypothesis_holds(s, t, lo):
        lo += 1
    while hi >= lo and not hypothesis_holds(s, t, hi):
        hi -= 1
    return range(lo, hi + 1)


def scan_counterexamples(s: int, q0: int, criterion: str = "hypothesis") -> list[int]:
    """All ``q`` within ``s`` of ``q0`` of the form ``st + r`` that the family refutes.

    ``criterion="hypothesis"`` accepts ``(t, r)`` inside the proven range;
    ``"numeric"`` accepts any ``0 < r < s`` with ``Y > X`` by at least the margin.
    """
    if s < 1 or q0 < 1:
        raise ValueError("s and q0 must be positive")
    if criterion not in ("hypothesis", "numeric"):
        raise ValueError(f"unknown criterion {criterion!r}")
    lo_q, hi_q = q0 - s, q0 + s
    found = set()
    t_lo = max(2, (q0 - s) // s - 1)
    t_hi = -(-(q0 + s) // s) + 1
    for t in range(t_lo, t_hi + 1):
        if criterion == "hypothesis":
            rs = hypothesis_window(s, t)
        else:
            rs = range(max(1, lo_q - s * t), min(s - 1, hi_q - s * t) + 1)
        for r in rs:
            q = s * t + r
            if not (lo_q <= q <= hi_q) or not (0 < r < s):
                continue
            if criterion == "numeric":
                x, y = family_xy(s, t, r)
                if y - x < MARGIN:
                    continue
            found.add(q)
    return sorted(found)

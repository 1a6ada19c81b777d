"""Weight vectors indexed by nonempty color subsets.

A color set is stored as an integer bitmask: color ``c`` (1-based) is bit
``c - 1``.  A :class:`WeightVector` is a sparse map from masks to
nonnegative weights, together with the number of colors ``q``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

ZERO_WEIGHT = 1e-12
DEFAULT_TOL = 1e-9


def mask_of(colors: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based colors."""
    m = 0
    for c in colors:
        if c < 1:
            raise ValueError(f"colors are 1-based, got {c}")
        m |= 1 << (c - 1)
    return m


def colors_of(mask: int) -> list[int]:
    """Ascending 1-based colors in ``mask``."""
    out = []
    c = 1
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return out


def full_mask(q: int) -> int:
    return (1 << q) - 1


@dataclass(frozen=True, order=True)
class ColorSet:
    """A subset of ``[q]``; ``mask`` is its bit pattern."""

    mask: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        if self.mask < 0 or self.mask > full_mask(self.q):
            raise ValueError(f"mask {self.mask} is not a subset of [{self.q}]")

    @classmethod
    def from_colors(cls, colors: Iterable[int], q: int) -> "ColorSet":
        return cls(mask_of(colors), q)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def colors(self) -> list[int]:
        return colors_of(self.mask)

    def isdisjoint(self, other: "ColorSet") -> bool:
        return not (self.mask & other.mask)


@dataclass(frozen=True)
class WeightVector:
    """Sparse nonnegative weights on nonempty subsets of ``[q]``.

    ``entries`` maps bitmasks to weights.  Masks are validated; the sign of
    a weight is not, so that slightly negative solver output can still be
    represented and rejected by :func:`feasible`.
    """

    q: int
    entries: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        full = full_mask(self.q)
        clean = {}
        for m, w in self.entries.items():
            m = int(m)
            w = float(w)
            if m < 0 or m > full:
                raise ValueError(f"mask {m} is not a subset of [{self.q}]")
            if not math.isfinite(w):
                raise ValueError("weights must be finite")
            if w == 0.0:
                continue
            clean[m] = clean.get(m, 0.0) + w
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def from_sets(cls, q: int, weighted: Iterable[tuple[Iterable[int], float]]) -> "WeightVector":
        """Build from ``(colors, weight)`` pairs; repeated sets accumulate."""
        entries: dict[int, float] = {}
        for colors, w in weighted:
            m = mask_of(colors)
            entries[m] = entries.get(m, 0.0) + float(w)
        return cls(q, entries)

    def support(self, threshold: float = ZERO_WEIGHT) -> list[int]:
        """Masks carrying weight above ``threshold``, ascending."""
        return [m for m, w in self.entries.items() if w > threshold]

    def weight(self, mask: int) -> float:
        return self.entries.get(mask, 0.0)

    def items(self):
        return self.entries.items()

    def __len__(self):
        return len(self.entries)

    def scaled(self, factor: float) -> "WeightVector":
        return WeightVector(self.q, {m: factor * w for m, w in self.entries.items()})

    def __add__(self, other: "WeightVector") -> "WeightVector":
        if other.q != self.q:
            raise ValueError("cannot add vectors over different q")
        out = dict(self.entries)
        for m, w in other.entries.items():
            out[m] = out.get(m, 0.0) + w
        return WeightVector(self.q, out)

    # serialization

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "entries": [{"set": colors_of(m), "weight": w} for m, w in self.entries.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "WeightVector":
        q = int(data["q"])
        return cls.from_sets(q, ((e["set"], e["weight"]) for e in data["entries"]))

    @classmethod
    def from_json(cls, text: str) -> "WeightVector":
        return cls.from_dict(json.loads(text))


def _check_nonempty(v: WeightVector) -> None:
    if v.entries.get(0, 0.0) > 0.0:
        raise ValueError("the empty color set carries positive weight")


def obj(v: WeightVector) -> float:
    """Objective: sum of ``weight * ln|A|`` over the support."""
    _check_nonempty(v)
    return math.fsum(w * math.log(m.bit_count()) for m, w in v.entries.items() if m)


def vsum(v: WeightVector) -> float:
    return math.fsum(v.entries.values())


def _pairwise_disjoint(masks: list[int]) -> bool:
    union = 0
    total = 0
    for m in masks:
        union |= m
        total += m.bit_count()
    return total == union.bit_count()


def esum(v: WeightVector) -> float:
    """Sum of ``w_A * w_B`` over unordered pairs of disjoint support sets."""
    masks = [m for m in v.entries if m]
    weights = [v.entries[m] for m in masks]
    if _pairwise_disjoint(masks):
        # every pair counts: (V^2 - sum w^2) / 2
        s = math.fsum(weights)
        return 0.5 * (s * s - math.fsum(w * w for w in weights))
    total = []
    for i, j in combinations(range(len(masks)), 2):
        if not masks[i] & masks[j]:
            total.append(weights[i] * weights[j])
    return math.fsum(total)


def edge_threshold(s: float) -> float:
    """Minimal value of :func:`esum` in the feasible set: ``(s-1)/(2s)``."""
    return (s - 1.0) / (2.0 * s)


def feasible(v: WeightVector, s: float, tol: float = DEFAULT_TOL) -> bool:
    if s <= 1:
        raise ValueError("s must exceed 1")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if any(w < -tol for w in v.entries.values()):
        return False
    if abs(vsum(v) - 1.0) > tol:
        return False
    return esum(v) >= edge_threshold(s) - tol


def residuals(v: WeightVector, s: float) -> tuple[float, float]:
    """``(|V - 1|, |E - (s-1)/(2s)|)`` for checking tight optima."""
    return abs(vsum(v) - 1.0), abs(esum(v) - edge_threshold(s))


@dataclass(frozen=True)
class SupportGraph:
    """Disjointness graph on the positively weighted sets, ascending masks."""

    q: int
    vertices: tuple[int, ...]
    adjacency: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))


def disjointness_matrix(masks: list[int]) -> np.ndarray:
    n = len(masks)
    adj = np.zeros((n, n), dtype=bool)
    for i, j in combinations(range(n), 2):
        if not masks[i] & masks[j]:
            adj[i, j] = adj[j, i] = True
    return adj


def support_graph(v: WeightVector, threshold: float = ZERO_WEIGHT) -> SupportGraph:
    verts = v.support(threshold)
    return SupportGraph(v.q, tuple(verts), disjointness_matrix(verts))


@dataclass(frozen=True)
class SupportClass:
    tag: str  # "Partition", "NearPartition" or "Other"
    k: int | None = None

    def __str__(self):
        return self.tag if self.k is None else f"{self.tag}({self.k})"


def _is_partition(masks: list[int], q: int) -> bool:
    if not masks or 0 in masks:
        return False
    return _pairwise_disjoint(masks) and _union(masks) == full_mask(q)


def _union(masks: Iterable[int]) -> int:
    u = 0
    for m in masks:
        u |= m
    return u


def classify_support(g: SupportGraph) -> SupportClass:
    """Partition(k), NearPartition(k) or Other, judged on the sets themselves."""
    masks = list(g.vertices)
    if _is_partition(masks, g.q):
        return SupportClass("Partition", len(masks))
    if len(masks) >= 3:
        for x in masks:
            rest = [m for m in masks if m != x]
            if not _is_partition(rest, g.q):
                continue
            inside = [m for m in rest if m & x]
            if len(inside) == 2 and _union(inside) == x:
                return SupportClass("NearPartition", len(rest))
    return SupportClass("Other")


def complete_cover(v: WeightVector, mask: int) -> WeightVector:
    """Replace support set ``mask`` by its union with the uncovered colors."""
    missing = full_mask(v.q) & ~_union(v.support())
    if mask not in v.entries:
        raise KeyError(mask)
    out = dict(v.entries)
    w = out.pop(mask)
    out[mask | missing] = out.get(mask | missing, 0.0) + w
    return WeightVector(v.q, out)

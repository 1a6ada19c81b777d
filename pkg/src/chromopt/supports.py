"""Candidate support shapes and small-graph spectral / induced-subgraph tools."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

import numpy as np

EIG_EPS = 1e-9


@dataclass(frozen=True)
class SizedCandidate:
    """Support shape described by class sizes only.

    Kind ``"P"``: a k-partition of ``[q]`` with the given part sizes
    (nonincreasing).  Kind ``"Q"``: a k-partition plus the union of the first
    two parts; ``sizes[:2]`` is the merged pair, ``sizes[2:]`` nonincreasing.
    """

    kind: str
    sizes: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("P", "Q"):
            raise ValueError(f"unknown candidate kind {self.kind!r}")
        if not self.sizes or min(self.sizes) < 1:
            raise ValueError("sizes must be positive")
        if self.kind == "Q" and len(self.sizes) < 2:
            raise ValueError("a Q candidate needs at least two parts")

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def q(self) -> int:
        return sum(self.sizes)

    @property
    def merged(self) -> tuple[int, int] | None:
        """1-based positions of the merged pair (Q only)."""
        return (1, 2) if self.kind == "Q" else None

    def sort_key(self):
        return (self.kind, self.k, self.sizes)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "sizes": list(self.sizes)}
        if self.kind == "Q":
            d["merged"] = list(self.merged)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def color_classes(self) -> list[list[int]]:
        """Parts as ascending runs of 1-based colors."""
        parts = []
        start = 1
        for a in self.sizes:
            parts.append(list(range(start, start + a)))
            start += a
        return parts


def partitions_into(n: int, k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into exactly ``k`` positive parts, nonincreasing."""
    if largest is None:
        largest = n
    if k == 0:
        if n == 0:
            yield ()
        return
    # the first part is at least ceil(n/k) and leaves >= k-1 for the rest
    hi = min(largest, n - (k - 1))
    lo = -(-n // k)
    for first in range(hi, lo - 1, -1):
        for rest in partitions_into(n - first, k - 1, first):
            yield (first,) + rest


def enum_p_candidates(q: int, k: int) -> Iterator[SizedCandidate]:
    if k < 1 or k > q:
        raise ValueError(f"need 1 <= k <= q, got k={k}, q={q}")
    for sizes in partitions_into(q, k):
        yield SizedCandidate("P", sizes)


def enum_q_candidates(q: int, k: int) -> Iterator[SizedCandidate]:
    """Each partition of ``q`` into ``k`` parts with each distinct merged pair.

    Candidates are deduplicated on (merged-pair sizes, remaining sizes), since
    the objective only sees sizes.
    """
    if k < 2:
        raise ValueError(f"Q candidates need k >= 2, got {k}")
    if k > q:
        raise ValueError(f"need k <= q, got k={k}, q={q}")
    for sizes in partitions_into(q, k):
        seen = set()
        for i, j in combinations(range(k), 2):
            pair = (sizes[i], sizes[j])  # nonincreasing already
            if pair in seen:
                continue
            seen.add(pair)
            rest = list(sizes)
            del rest[j]
            del rest[i]
            yield SizedCandidate("Q", pair + tuple(rest))


# small graphs


@dataclass(frozen=True)
class SmallGraph:
    n: int
    adjacency: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=bool)
        if a.shape != (self.n, self.n):
            raise ValueError("adjacency shape does not match n")
        if not np.array_equal(a, a.T) or a.diagonal().any():
            raise ValueError("adjacency must be symmetric with zero diagonal")
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def from_edges(cls, n: int, edges) -> "SmallGraph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            a[u, v] = a[v, u] = True
        return cls(n, a)

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.sum()) // 2


def empty_graph(n: int) -> SmallGraph:
    return SmallGraph(n, np.zeros((n, n), dtype=bool))


def three_k1() -> SmallGraph:
    return empty_graph(3)


def cycle(n: int) -> SmallGraph:
    return SmallGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> SmallGraph:
    return SmallGraph.from_edges(n, combinations(range(n), 2))


def c5_plus() -> SmallGraph:
    """C5 with one chord added."""
    return SmallGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])


def eigenvalues(g) -> np.ndarray:
    """Adjacency eigenvalues, descending."""
    a = np.asarray(g.adjacency, dtype=float)
    if a.shape[0] < 1:
        raise ValueError("graph has no vertices")
    return np.linalg.eigvalsh(a)[::-1]


def count_nonneg_eigenvalues(g, eps: float = EIG_EPS) -> int:
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return int(np.sum(eigenvalues(g) >= -eps))


def has_induced(pattern: SmallGraph, g) -> bool:
    """Exhaustive search for an induced copy of ``pattern`` in ``g``.

    ``g`` may be any object with an ``adjacency`` matrix.  A pattern with more
    vertices than ``g`` has no induced copy.
    """
    p = pattern.n
    if p > 6:
        raise ValueError("patterns are limited to 6 vertices")
    adj = np.asarray(g.adjacency, dtype=bool)
    n = adj.shape[0]
    if p > n:
        return False
    pat = pattern.adjacency
    pat_edges = pattern.num_edges
    perms = [list(pi) for pi in permutations(range(p))]
    for sub in combinations(range(n), p):
        block = adj[np.ix_(sub, sub)]
        if int(block.sum()) // 2 != pat_edges:
            continue
        for pi in perms:
            if np.array_equal(block[np.ix_(pi, pi)], pat):
                return True
    return False

"""Graphs built from weight vectors, exact proper-coloring counts, edit distances."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable

import numpy as np

from . import colorsets as cs

BRUTE_LIMIT = 10 ** 8
DC_MAX_N = 18
DC_MAX_M = 60
DC_BUDGET = 2_000_000


class RecursionBudgetExceeded(RuntimeError):
    """Deletion-contraction gave up; the count is unknown, not wrong."""


@dataclass(frozen=True)
class ColoredGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        clean = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (min(u, v), max(u, v))
            if e in clean:
                raise ValueError(f"duplicate edge {e}")
            clean.add(e)
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def add_edge(self, u: int, v: int) -> "ColoredGraph":
        return ColoredGraph(self.n, self.edges + ((u, v),))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ColoredGraph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows:
            raise ValueError("empty graph file")
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
        if len(edges) != m:
            raise ValueError(f"header says {m} edges, found {len(edges)}")
        for u, v in edges:
            if u >= v:
                raise ValueError(f"edge lines must have u < v, got {u} {v}")
        return cls(n, tuple(edges))


def read_graph(path) -> ColoredGraph:
    with open(path) as fh:
        return ColoredGraph.from_text(fh.read())


def write_graph(g: ColoredGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(g.to_text())


def complete_multipartite(part_sizes: Iterable[int]) -> ColoredGraph:
    """Complete multipartite graph on contiguous vertex blocks."""
    blocks = []
    start = 0
    for a in part_sizes:
        blocks.append(range(start, start + a))
        start += a
    edges = [(u, v) for b1, b2 in combinations(blocks, 2) for u in b1 for v in b2]
    return ColoredGraph(start, tuple(edges))


def turan_parts(n: int, s: int) -> list[int]:
    if not (1 <= s <= n):
        raise ValueError(f"need 1 <= s <= n, got s={s}, n={n}")
    t, r = divmod(n, s)
    return [t + 1] * r + [t] * (s - r)


def build_turan(n: int, s: int) -> ColoredGraph:
    return complete_multipartite(turan_parts(n, s))


def cluster_sizes(v: cs.WeightVector, n: int) -> dict[int, int]:
    """Largest-remainder rounding of ``w_A * n``; ties go to the smaller mask."""
    masks = v.support()
    if n < len(masks):
        raise ValueError(f"n={n} is smaller than the support size {len(masks)}")
    if abs(cs.vsum(v) - 1.0) > cs.DEFAULT_TOL:
        raise ValueError("weights must sum to 1")
    exact = {m: v.weight(m) * n for m in masks}
    sizes = {m: math.floor(x) for m, x in exact.items()}
    short = n - sum(sizes.values())
    order = sorted(masks, key=lambda m: (-(exact[m] - sizes[m]), m))
    for m in order[:short]:
        sizes[m] += 1
    return sizes


def build_g_alpha(v: cs.WeightVector, n: int) -> ColoredGraph:
    """Clusters of size about ``w_A * n``, fully joined when their sets are disjoint."""
    sizes = cluster_sizes(v, n)
    blocks = {}
    start = 0
    for m in sorted(sizes):
        blocks[m] = range(start, start + sizes[m])
        start += sizes[m]
    edges = []
    for a, b in combinations(sorted(blocks), 2):
        if not a & b:
            edges.extend((u, w) for u in blocks[a] for w in blocks[b])
    return ColoredGraph(n, tuple(edges))


# counting


@dataclass(frozen=True)
class CountResult:
    count: int
    q: int
    method: str


def count_colorings_brute(g: ColoredGraph, q: int) -> CountResult:
    """Enumerate all ``q^n`` assignments in vectorized chunks."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    if q ** g.n > BRUTE_LIMIT:
        raise ValueError(f"q^n = {q ** g.n} exceeds {BRUTE_LIMIT}")
    if g.n == 0:
        return CountResult(1, q, "brute")
    if q == 0:
        return CountResult(0, q, "brute")
    total = 0
    chunk = 1 << 20
    us = np.array([u for u, _ in g.edges], dtype=np.int64)
    vs = np.array([v for _, v in g.edges], dtype=np.int64)
    powers = q ** np.arange(g.n, dtype=np.int64)
    for lo in range(0, q ** g.n, chunk):
        idx = np.arange(lo, min(lo + chunk, q ** g.n), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % q
        if len(us):
            ok = np.all(digits[:, us] != digits[:, vs], axis=1)
            total += int(ok.sum())
        else:
            total += len(idx)
    return CountResult(total, q, "brute")


def _components(n: int, adj: list[set]) -> list[list[int]]:
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    return comps


def _relabel_key(vertices: list[int], adj: list[set]) -> tuple:
    """An exact encoding of the induced graph after a degree-based relabeling.

    Isomorphic graphs often, not always, share a key; that only costs cache
    hits, never correctness.
    """
    vs = set(vertices)
    deg = {u: len(adj[u] & vs) for u in vertices}
    sig = {u: (deg[u], tuple(sorted(deg[w] for w in adj[u] & vs))) for u in vertices}
    order = sorted(vertices, key=lambda u: (sig[u], u))
    pos = {u: i for i, u in enumerate(order)}
    edges = sorted(
        (min(pos[u], pos[w]), max(pos[u], pos[w])) for u in vertices for w in adj[u] & vs if u < w
    )
    return (len(vertices), tuple(edges))


def falling_factorial(q: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= q - i
    return out


def count_colorings_dc(g: ColoredGraph, q: int, budget: int = DC_BUDGET) -> CountResult:
    """Deletion-contraction with memoization; exact integer arithmetic."""
    if g.n > DC_MAX_N or g.m > DC_MAX_M:
        raise ValueError(f"deletion-contraction limited to n <= {DC_MAX_N}, m <= {DC_MAX_M}")
    calls = 0
    memo: dict[tuple, int] = {}

    def solve(n: int, edges: tuple) -> int:
        nonlocal calls
        calls += 1
        if calls > budget:
            raise RecursionBudgetExceeded(f"more than {budget} subproblems")
        m = len(edges)
        if m == 0:
            return q ** n
        adj = [set() for _ in range(n)]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        comps = _components(n, adj)
        if len(comps) > 1:
            out = 1
            for comp in comps:
                out *= solve_component(comp, adj)
                if out == 0:
                    return 0
            return out
        return solve_component(comps[0], adj)

    def solve_component(comp: list[int], adj: list[set]) -> int:
        k = len(comp)
        m = sum(len(adj[u]) for u in comp) // 2
        if m == 0:
            return q ** k
        if m == k - 1:  # tree
            return q * (q - 1) ** m
        if m == k * (k - 1) // 2:
            return falling_factorial(q, k)
        key = _relabel_key(comp, adj)
        if key in memo:
            return memo[key]
        n, edges = key
        # pivot: first edge of a highest-degree vertex
        deg = [0] * n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        piv = max(range(n), key=lambda u: (deg[u], -u))
        e = next(x for x in edges if piv in x)
        deleted = tuple(x for x in edges if x != e)
        # contract e = (a, b): b merges into a, indices above b shift down
        a, b = e
        merged = set()
        for u, v in deleted:
            u = a if u == b else u
            v = a if v == b else v
            u -= u > b
            v -= v > b
            if u != v:
                merged.add((min(u, v), max(u, v)))
        val = solve(n, deleted) - solve(n - 1, tuple(sorted(merged)))
        memo[key] = val
        return val

    return CountResult(solve(g.n, g.edges), q, "deletion_contraction")


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind, exact."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def _stirling_row(n: int) -> list[int]:
    row = [1] + [0] * n  # S(0, k)
    for i in range(1, n + 1):
        new = [0] * (n + 1)
        for k in range(1, i + 1):
            new[k] = k * row[k] + row[k - 1]
        row = new
    return row


def count_colorings_multipartite(part_sizes: Iterable[int], q: int) -> CountResult:
    """Colorings of a complete multipartite graph.

    Parts receive pairwise disjoint color sets; a part of size ``n_i`` using
    exactly ``t_i`` colors contributes ``S(n_i, t_i)`` surjections up to
    labeling, and the labeled color choice is the falling factorial
    ``(q)_{t_1 + ... + t_k}``.
    """
    parts = [int(a) for a in part_sizes if a > 0]
    if any(a < 0 for a in part_sizes):
        raise ValueError("part sizes must be nonnegative")
    if sum(parts) > 400 or q > 64:
        raise ValueError("limited to total size 400 and q <= 64")
    if q < 0:
        raise ValueError("q must be nonnegative")
    # dp[T] = sum over (t_i) with sum T of prod S(n_i, t_i)
    dp = [1]
    for a in parts:
        row = _stirling_row(a)
        top = min(len(dp) - 1 + a, q)
        new = [0] * (top + 1)
        for T, w in enumerate(dp):
            if not w:
                continue
            for t in range(1, min(a, top - T) + 1):
                new[T + t] += w * row[t]
        dp = new
    total = sum(w * falling_factorial(q, T) for T, w in enumerate(dp))
    return CountResult(total, q, "multipartite")


def log_rate(part_sizes: Iterable[int], q: int) -> float:
    """``ln(P(q)) / n`` for a complete multipartite graph; ``-inf`` if no coloring."""
    parts = list(part_sizes)
    n = sum(parts)
    count = count_colorings_multipartite(parts, q).count
    if count == 0:
        return -math.inf
    return math.log(count) / n


def sweep_csv(family, q: int, ns: Iterable[int]) -> str:
    """CSV rows ``n, q, count_bits, log_rate`` for ``family(n)`` part sizes."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "q", "count_bits", "log_rate"])
    for n in ns:
        parts = family(n)
        count = count_colorings_multipartite(parts, q).count
        rate = math.log(count) / n if count else -math.inf
        w.writerow([n, q, count.bit_length(), f"{rate:.12g}"])
    return buf.getvalue()


# edit distance


def edit_distance_labeled(g: ColoredGraph, h: ColoredGraph) -> int:
    if g.n != h.n:
        raise ValueError("graphs must have the same number of vertices")
    return len(g.edge_set() ^ h.edge_set())


def edit_distance_iso(g: ColoredGraph, h: ColoredGraph) -> int:
    """Minimum labeled distance over all relabelings of ``g``."""
    if g.n != h.n:
        raise ValueError("graphs must have the same number of vertices")
    if g.n > 8:
        raise ValueError("isomorphism edit distance is limited to n <= 8")
    n = g.n
    hm = np.zeros((n, n), dtype=bool)
    for u, v in h.edges:
        hm[u, v] = hm[v, u] = True
    gu = np.array([u for u, _ in g.edges], dtype=int)
    gv = np.array([v for _, v in g.edges], dtype=int)
    best = g.m + h.m
    for pi in permutations(range(n)):
        p = np.array(pi)
        kept = int(hm[p[gu], p[gv]].sum()) if g.m else 0
        # |E(g) ^ E(h)| = m_g + m_h - 2 |common|
        best = min(best, g.m + h.m - 2 * kept)
        if best == abs(g.m - h.m):
            break
    return best

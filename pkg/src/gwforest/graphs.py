"""Uniform random r-uniform hypergraphs and their component structure.

An (n, f) hypergraph is drawn uniformly among all edge sets of f distinct
r-subsets of [n].  With f = c*n/(r*(r-1)) the local exploration around a
vertex is an (r-1)-fold Poisson branching process of mean c, so above c = 1
the largest component covers a (1 - F(r-1, c)) fraction of the vertices in
the limit, and below it all components are logarithmic.

Components are accumulated with union-find (union by size, path compression);
a breadth-first oracle is provided for cross-checking on small instances.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .rngs import child_generator
from .series import extinction_series

# past this density, enumerate the edge universe instead of rejection sampling
_ENUMERATE_UNIVERSE_LIMIT = 2_000_000


@dataclass(frozen=True)
class HypergraphConfig:
    """n vertices, r vertices per edge, average degree c; the edge count is
    round(c*n/(r*(r-1))) unless given explicitly."""

    n: int
    r: int
    c: float
    seed: int = 0
    f_edges: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if self.r < 2:
            raise ValueError(f"edge arity must be at least 2, got {self.r}")
        if self.r > self.n:
            raise ValueError(f"edge arity {self.r} exceeds vertex count {self.n}")
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise ValueError(f"average degree must be positive, got {self.c}")
        if self.edge_count > math.comb(self.n, self.r):
            raise ValueError(
                f"{self.edge_count} edges requested but only "
                f"{math.comb(self.n, self.r)} distinct {self.r}-subsets exist"
            )

    @property
    def edge_count(self) -> int:
        if self.f_edges is not None:
            return self.f_edges
        return round(self.c * self.n / (self.r * (self.r - 1)))


@dataclass(frozen=True)
class ComponentStats:
    """Component sizes (descending); ``second_largest`` is 0 when the graph is
    connected."""

    sizes: tuple[int, ...]
    largest: int
    second_largest: int
    giant_fraction: float


@dataclass(frozen=True)
class GiantComparison:
    empirical_mean: float
    theory: float
    deviation: float
    per_trial: tuple[float, ...]


class UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def generate_hypergraph(
    cfg: HypergraphConfig, rng: np.random.Generator
) -> list[tuple[int, ...]]:
    """Draw cfg.edge_count distinct r-subsets of [n], uniformly.

    Sparse case: batched rejection (draw r-tuples, keep those with distinct
    sorted entries, skip already-seen edges); keeping first occurrences is
    sampling without replacement, hence exactly uniform.  Dense case (edge
    count a sizable fraction of the universe): enumerate the universe and
    choose directly.
    """
    n, r, f = cfg.n, cfg.r, cfg.edge_count
    if f == 0:
        return []
    universe = math.comb(n, r)
    if universe <= min(4 * f + 16, _ENUMERATE_UNIVERSE_LIMIT):
        all_edges = list(combinations(range(n), r))
        picked = rng.choice(universe, size=f, replace=False)
        return [all_edges[i] for i in sorted(picked)]

    encode = n ** np.arange(r - 1, -1, -1, dtype=np.int64) if n**r < 2**62 else None
    seen: set = set()
    edges: list[tuple[int, ...]] = []
    while len(edges) < f:
        batch = max(2 * (f - len(edges)), 1024)
        rows = np.sort(rng.integers(0, n, size=(batch, r), dtype=np.int64), axis=1)
        distinct = np.all(rows[:, 1:] != rows[:, :-1], axis=1)
        rows = rows[distinct]
        keys: Iterable = (rows @ encode) if encode is not None else map(tuple, rows)
        for row, key in zip(rows, keys):
            k = int(key) if encode is not None else key
            if k not in seen:
                seen.add(k)
                edges.append(tuple(int(v) for v in row))
                if len(edges) == f:
                    break
    return edges


def component_stats(n: int, edges: Sequence[Sequence[int]]) -> ComponentStats:
    """Exact component sizes of [n] under the given (any-arity) edges."""
    uf = UnionFind(n)
    for edge in edges:
        it = iter(edge)
        first = next(it)
        if not 0 <= first < n:
            raise IndexError(f"vertex {first} out of range 0..{n - 1}")
        for v in it:
            if not 0 <= v < n:
                raise IndexError(f"vertex {v} out of range 0..{n - 1}")
            uf.union(first, v)
    sizes = tuple(sorted(Counter(uf.find(v) for v in range(n)).values(), reverse=True))
    return ComponentStats(
        sizes=sizes,
        largest=sizes[0],
        second_largest=sizes[1] if len(sizes) > 1 else 0,
        giant_fraction=sizes[0] / n,
    )


def bfs_component_stats(n: int, edges: Sequence[Sequence[int]]) -> ComponentStats:
    """Breadth-first oracle for component_stats; small n only."""
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for edge in edges:
        members = list(edge)
        for v in members:
            neighbors[v].update(u for u in members if u != v)
    seen = [False] * n
    sizes = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        size = 0
        while queue:
            v = queue.popleft()
            size += 1
            for u in neighbors[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        sizes.append(size)
    sizes_sorted = tuple(sorted(sizes, reverse=True))
    return ComponentStats(
        sizes=sizes_sorted,
        largest=sizes_sorted[0],
        second_largest=sizes_sorted[1] if len(sizes_sorted) > 1 else 0,
        giant_fraction=sizes_sorted[0] / n,
    )


def giant_vs_theory(cfg: HypergraphConfig, trials: int) -> GiantComparison:
    """Mean giant fraction over seeded trials against 1 - F(r-1, c)."""
    if trials < 1:
        raise ValueError(f"trial count must be positive, got {trials}")
    fractions = []
    for trial in range(trials):
        rng = child_generator(cfg.seed, trial)
        edges = generate_hypergraph(cfg, rng)
        fractions.append(component_stats(cfg.n, edges).giant_fraction)
    theory = 1.0 - extinction_series(cfg.r - 1.0, cfg.c, 1e-12)
    mean = sum(fractions) / trials
    return GiantComparison(
        empirical_mean=mean,
        theory=theory,
        deviation=abs(mean - theory),
        per_trial=tuple(fractions),
    )

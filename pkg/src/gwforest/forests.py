"""Brute-force counting oracles for trees, rooted forests, and colorings.

Every count here is produced by exhaustive enumeration, independent of the
closed forms it is checked against: trees are enumerated as connected
(n-1)-edge subsets of the complete graph, forests as acyclic parent
assignments (each vertex points at another vertex or at the root sentinel
None).  Edge colors live on the child endpoint of the parent edge, which
makes "edges colored" and "non-root vertices colored" the same data.

Closed forms being verified:

    labeled trees on [n]                      n^(n-2)
    rooted forests, p edge / q root colors    q * (q + n*p)^(n-1)
    trees on {0..n} with m-colored edges      (n+1)^(n-1) * m^n

Enumeration caps keep the state space around 10^6; hitting a cap raises
EnumerationCapError (a cost signal, not a bug).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

TREE_CAP = 7
FOREST_CAP_PLAIN = 6
FOREST_CAP_COLORED = 5


class EnumerationCapError(ValueError):
    """The requested size would blow the exhaustive-enumeration budget."""


class CountMismatchError(AssertionError):
    """An exhaustive count disagreed with its closed form."""


@dataclass(frozen=True)
class ForestSpec:
    """Size and coloring of a rooted-forest enumeration.

    ``edge_colors`` colors the parent edges (equivalently non-root vertices),
    ``root_colors`` the roots; 1 means uncolored.
    """

    n: int
    edge_colors: int = 1
    root_colors: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if self.edge_colors < 1 or self.root_colors < 1:
            raise ValueError("color counts must be positive")


@dataclass(frozen=True)
class ColoredForest:
    """One enumerated forest: parent[v] is the parent vertex or None for a root;
    edge_color[v] is set exactly on non-roots, root_color[v] exactly on roots."""

    parent: tuple[int | None, ...]
    edge_color: tuple[int | None, ...]
    root_color: tuple[int | None, ...]


def cayley_count(n: int) -> int:
    """Closed form n^(n-2); reads 1 at n = 1."""
    return 1 if n == 1 else n ** (n - 2)


def rooted_forest_count(n: int, edge_colors: int, root_colors: int) -> int:
    """Closed form q * (q + n*p)^(n-1)."""
    return root_colors * (root_colors + n * edge_colors) ** (n - 1)


def colored_tree_count(n: int, m: int) -> int:
    """Closed form (n+1)^(n-1) * m^n for trees on n+1 vertices."""
    return (n + 1) ** (n - 1) * m**n


def _is_acyclic(parent: tuple[int | None, ...]) -> bool:
    n = len(parent)
    for v in range(n):
        steps = 0
        while parent[v] is not None:
            v = parent[v]
            steps += 1
            if steps > n:
                return False
    return True


def iter_parent_forests(n: int) -> Iterator[tuple[int | None, ...]]:
    """All acyclic parent assignments on vertices 0..n-1."""
    choices = [(None, *(u for u in range(n) if u != v)) for v in range(n)]
    for parent in product(*choices):
        if _is_acyclic(parent):
            yield parent


def _spanning_tree_edge_sets(vertices: int) -> Iterator[tuple[tuple[int, int], ...]]:
    all_edges = list(combinations(range(vertices), 2))
    if vertices == 1:
        yield ()
        return
    for edges in combinations(all_edges, vertices - 1):
        # n-1 edges are a tree iff they connect everything
        comp = list(range(vertices))

        def find(a: int) -> int:
            while comp[a] != a:
                comp[a] = comp[comp[a]]
                a = comp[a]
            return a

        parts = vertices
        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                comp[ru] = rv
                parts -= 1
        if parts == 1:
            yield edges


def count_labeled_trees(n: int, cap: int = TREE_CAP, check: bool = True) -> int:
    """Exhaustive count of labeled trees on [n]; verified against n^(n-2)."""
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds the tree enumeration cap of {cap}")
    count = sum(1 for _ in _spanning_tree_edge_sets(n))
    if check and count != cayley_count(n):
        raise CountMismatchError(f"tree count {count} != {cayley_count(n)} at n={n}")
    return count


def count_rooted_forests(spec: ForestSpec, cap: int | None = None, check: bool = True) -> int:
    """Exhaustive count of colored rooted forests matching ``spec``.

    Forest shapes are enumerated one by one; colorings multiply in as
    edge_colors^(non-roots) * root_colors^(roots) per shape.
    """
    if cap is None:
        cap = FOREST_CAP_PLAIN if spec.edge_colors == spec.root_colors == 1 else FOREST_CAP_COLORED
    if spec.n > cap:
        raise EnumerationCapError(f"n={spec.n} exceeds the forest enumeration cap of {cap}")
    count = 0
    for parent in iter_parent_forests(spec.n):
        roots = sum(1 for p in parent if p is None)
        count += spec.root_colors**roots * spec.edge_colors ** (spec.n - roots)
    if check and count != rooted_forest_count(spec.n, spec.edge_colors, spec.root_colors):
        raise CountMismatchError(
            f"forest count {count} != "
            f"{rooted_forest_count(spec.n, spec.edge_colors, spec.root_colors)} for {spec}"
        )
    return count


def iter_colored_forests(spec: ForestSpec) -> Iterator[ColoredForest]:
    """Fully explicit enumeration (one object per coloring); small n only."""
    for parent in iter_parent_forests(spec.n):
        roots = [v for v in range(spec.n) if parent[v] is None]
        nonroots = [v for v in range(spec.n) if parent[v] is not None]
        for edge_cols in product(range(spec.edge_colors), repeat=len(nonroots)):
            for root_cols in product(range(spec.root_colors), repeat=len(roots)):
                edge_color: list[int | None] = [None] * spec.n
                root_color: list[int | None] = [None] * spec.n
                for v, col in zip(nonroots, edge_cols):
                    edge_color[v] = col
                for v, col in zip(roots, root_cols):
                    root_color[v] = col
                yield ColoredForest(
                    parent=parent,
                    edge_color=tuple(edge_color),
                    root_color=tuple(root_color),
                )


def count_colored_trees_rooted_at_zero(
    n: int, m: int, cap: int = TREE_CAP, check: bool = True
) -> int:
    """Trees on {0..n} with each of the n edges colored one of m ways.

    Roots the tree at vertex 0 conceptually; the count is shapes * m^n.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if n + 1 > cap:
        raise EnumerationCapError(f"n+1={n + 1} exceeds the tree enumeration cap of {cap}")
    shapes = sum(1 for _ in _spanning_tree_edge_sets(n + 1))
    count = shapes * m**n
    if check and count != colored_tree_count(n, m):
        raise CountMismatchError(
            f"colored tree count {count} != {colored_tree_count(n, m)} at n={n}, m={m}"
        )
    return count


@dataclass(frozen=True)
class RootColorTally:
    """Exhaustive tally of doubly root-colored forests, grouped both ways.

    ``by_first`` maps each ordered block-size composition (one block per
    first color, sizes of the vertex sets of trees whose root carries that
    color) to the number of enumerated objects realizing it; ``by_second``
    does the same for the second root color.
    """

    total: int
    by_first: dict[tuple[int, ...], int]
    by_second: dict[tuple[int, ...], int]


def group_by_root_color(n: int, p: int, q: int, cap: int = FOREST_CAP_COLORED) -> RootColorTally:
    """Enumerate forests on [n] with all vertices p-colored and roots also
    q-colored, tallying block compositions under both root-color groupings."""
    if n < 1 or p < 1 or q < 1:
        raise ValueError("n, p, q must be positive")
    if n > cap:
        raise EnumerationCapError(f"n={n} exceeds the forest enumeration cap of {cap}")

    total = 0
    by_first: Counter[tuple[int, ...]] = Counter()
    by_second: Counter[tuple[int, ...]] = Counter()
    for parent in iter_parent_forests(n):
        root_of = []
        for v in range(n):
            r = v
            while parent[r] is not None:
                r = parent[r]
            root_of.append(r)
        roots = [v for v in range(n) if parent[v] is None]
        for vertex_cols in product(range(p), repeat=n):
            for root_second in product(range(q), repeat=len(roots)):
                second_of = dict(zip(roots, root_second))
                total += 1
                first_blocks = [0] * p
                second_blocks = [0] * q
                for v in range(n):
                    first_blocks[vertex_cols[root_of[v]]] += 1
                    second_blocks[second_of[root_of[v]]] += 1
                by_first[tuple(first_blocks)] += 1
                by_second[tuple(second_blocks)] += 1
    return RootColorTally(total=total, by_first=dict(by_first), by_second=dict(by_second))

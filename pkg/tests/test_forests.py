"""Exhaustive enumeration oracles against their closed forms."""

import pytest

from gwforest.exact import (
    m_forest_composition_identity,
    multinomial,
    two_coloring_identity,
    weak_compositions,
)
from gwforest.forests import (
    CountMismatchError,
    EnumerationCapError,
    ForestSpec,
    cayley_count,
    count_colored_trees_rooted_at_zero,
    count_labeled_trees,
    count_rooted_forests,
    group_by_root_color,
    iter_colored_forests,
    iter_parent_forests,
    rooted_forest_count,
)


class TestLabeledTrees:
    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)])
    def test_counts(self, n, expected):
        assert count_labeled_trees(n) == expected
        assert cayley_count(n) == expected

    def test_cap(self):
        with pytest.raises(EnumerationCapError):
            count_labeled_trees(8)

    def test_mismatch_detection(self, monkeypatch):
        import gwforest.forests as forests

        monkeypatch.setattr(forests, "cayley_count", lambda n: -1)
        with pytest.raises(CountMismatchError):
            count_labeled_trees(3)


class TestRootedForests:
    def test_uncolored_n2(self):
        # two singletons, or one 2-vertex tree rooted either way
        assert count_rooted_forests(ForestSpec(n=2)) == 3

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_edge_colored_n2(self, m):
        assert count_rooted_forests(ForestSpec(n=2, edge_colors=m)) == 2 * m + 1

    @pytest.mark.parametrize("p", [1, 2, 3])
    @pytest.mark.parametrize("q", [1, 2, 3])
    def test_doubly_colored_n2(self, p, q):
        # hand enumeration: q^2 for two singleton roots, 2*p*q for rooted edges
        assert count_rooted_forests(ForestSpec(n=2, edge_colors=p, root_colors=q)) == q * q + 2 * p * q

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    @pytest.mark.parametrize("p", [1, 2, 3])
    @pytest.mark.parametrize("q", [1, 2, 3])
    def test_closed_form_battery(self, n, p, q):
        spec = ForestSpec(n=n, edge_colors=p, root_colors=q)
        assert count_rooted_forests(spec) == rooted_forest_count(n, p, q)

    def test_plain_n5_and_n6(self):
        assert count_rooted_forests(ForestSpec(n=5)) == 6**4
        assert count_rooted_forests(ForestSpec(n=6)) == 7**5

    def test_cap(self):
        with pytest.raises(EnumerationCapError):
            count_rooted_forests(ForestSpec(n=6, edge_colors=2))

    def test_forest_shapes_are_acyclic_and_unique(self):
        shapes = list(iter_parent_forests(4))
        assert len(shapes) == len(set(shapes)) == 5**3
        for parent in shapes:
            for v in range(4):
                seen = set()
                while parent[v] is not None:
                    assert v not in seen
                    seen.add(v)
                    v = parent[v]

    def test_colored_enumeration_matches_multiplied_count(self):
        spec = ForestSpec(n=3, edge_colors=2, root_colors=2)
        forests = list(iter_colored_forests(spec))
        # no duplicates under a canonical encoding
        encoded = {(f.parent, f.edge_color, f.root_color) for f in forests}
        assert len(encoded) == len(forests) == count_rooted_forests(spec)
        for f in forests:
            for v in range(spec.n):
                if f.parent[v] is None:
                    assert f.root_color[v] is not None and f.edge_color[v] is None
                else:
                    assert f.edge_color[v] is not None and f.root_color[v] is None


class TestColoredTreesRootedAtZero:
    @pytest.mark.parametrize(
        "n,m,expected", [(1, 1, 1), (2, 2, 12), (3, 3, 432), (4, 2, 2000)]
    )
    def test_counts(self, n, m, expected):
        assert count_colored_trees_rooted_at_zero(n, m) == expected

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_equals_composition_sum(self, n, m):
        # the tree decomposition grouped by root-edge colors
        assert count_colored_trees_rooted_at_zero(n, m) == m_forest_composition_identity(m, n).lhs

    def test_cap(self):
        with pytest.raises(EnumerationCapError):
            count_colored_trees_rooted_at_zero(7, 2)


class TestGroupByRootColor:
    def test_trivial(self):
        tally = group_by_root_color(1, 1, 1)
        assert tally.total == 1
        assert tally.by_first == {(1,): 1}
        assert tally.by_second == {(1,): 1}

    def test_hand_case_n1_p2_q1(self):
        tally = group_by_root_color(1, 2, 1)
        assert tally.total == 2
        assert tally.by_first == {(1, 0): 1, (0, 1): 1}
        assert tally.by_second == {(1,): 2}

    @pytest.mark.parametrize("n,p,q", [(2, 2, 2), (3, 2, 2), (2, 3, 2), (3, 1, 3)])
    def test_matches_both_composition_sums(self, n, p, q):
        tally = group_by_root_color(n, p, q)
        check = two_coloring_identity(p, q, n)
        assert tally.total == check.lhs == check.rhs
        assert sum(tally.by_first.values()) == tally.total
        assert sum(tally.by_second.values()) == tally.total
        for comp in weak_compositions(n, p):
            expected = multinomial(comp)
            for j in comp:
                expected *= 1 if j == 0 else q * (j * p + q) ** (j - 1)
            assert tally.by_first.get(comp, 0) == expected
        for comp in weak_compositions(n, q):
            expected = multinomial(comp) * p**n
            for i in comp:
                expected *= 1 if i == 0 else (i + 1) ** (i - 1)
            assert tally.by_second.get(comp, 0) == expected

    def test_cap(self):
        with pytest.raises(EnumerationCapError):
            group_by_root_color(6, 2, 2)


class TestSpecValidation:
    def test_bad_spec(self):
        with pytest.raises(ValueError):
            ForestSpec(n=0)
        with pytest.raises(ValueError):
            ForestSpec(n=2, edge_colors=0)

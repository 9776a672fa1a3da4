"""Exact rational series, composition identities, and inversion terms.

Hand-computed expected values are annotated where they appear; everything in
this module is exact, so equality assertions are literal.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwforest.exact import (
    composition_sum,
    lagrange_terms,
    m_forest_composition_identity,
    multinomial,
    power_identity_holds,
    rational_series,
    series_power,
    two_coloring_identity,
    weak_compositions,
)
from gwforest.series import series_coefficient

F = Fraction


class TestRationalSeries:
    def test_m1_coefficients(self):
        # (k+1)^(k-1)/k! for k = 0..3: 1, 1, 3/2, 16/6
        assert rational_series(1, 1, 3).coeffs == (F(1), F(1), F(3, 2), F(8, 3))

    def test_m2_coefficients(self):
        # k=1: 3^0*1/2 = 1/2; k=2: 5^1*1/(4*2) = 5/8
        assert rational_series(2, 1, 2).coeffs == (F(1), F(1, 2), F(5, 8))

    def test_common_factor_invariance_hand_case(self):
        assert rational_series(2, 2, 2).coeffs == rational_series(1, 1, 2).coeffs

    @given(
        p=st.integers(1, 4),
        q=st.integers(1, 4),
        a=st.integers(1, 3),
        degree=st.integers(0, 8),
    )
    @settings(max_examples=60)
    def test_common_factor_invariance(self, p, q, a, degree):
        assert rational_series(a * p, a * q, degree).coeffs == rational_series(p, q, degree).coeffs

    @given(p=st.integers(1, 5), q=st.integers(1, 5), degree=st.integers(0, 12))
    @settings(max_examples=60)
    def test_structure_invariants(self, p, q, degree):
        series = rational_series(p, q, degree)
        assert series.coeffs[0] == 1
        assert all(c > 0 for c in series.coeffs)
        for k, coeff in enumerate(series.coeffs):
            # reduced denominators never outgrow p^k * k! * q^(k-2)
            bound = p**k * math.factorial(k) * q ** max(k - 2, 0)
            assert bound % coeff.denominator == 0

    def test_validation(self):
        with pytest.raises(ValueError):
            rational_series(0, 1, 3)
        with pytest.raises(ValueError):
            rational_series(1, 1, -1)


class TestSeriesPower:
    def test_hand_cases(self):
        assert series_power([F(1), F(1)], 2, 1) == (F(1), F(2))
        assert series_power([F(1), F(1), F(1, 2)], 3, 2) == (F(1), F(3), F(9, 2))

    def test_identity_power(self):
        coeffs = rational_series(1, 1, 6).coeffs
        assert series_power(coeffs, 1, 6) == coeffs

    @given(
        coeffs=st.lists(
            st.fractions(min_value=-3, max_value=3, max_denominator=6), min_size=1, max_size=5
        ),
        exponent=st.integers(1, 4),
    )
    @settings(max_examples=60)
    def test_against_naive_polynomial_power(self, coeffs, exponent):
        degree = len(coeffs) - 1
        # naive oracle: full polynomial product, then truncate
        full = [F(1)]
        for _ in range(exponent):
            nxt = [F(0)] * (len(full) + len(coeffs) - 1)
            for i, a in enumerate(full):
                for j, b in enumerate(coeffs):
                    nxt[i + j] += a * b
            full = nxt
        expected = tuple((full + [F(0)] * (degree + 1))[: degree + 1])
        assert series_power(coeffs, exponent, degree) == expected


class TestPowerIdentity:
    def test_trivial_pair(self):
        assert power_identity_holds(1, 1, 20)

    @pytest.mark.parametrize("p,q", [(2, 1), (3, 2)])
    def test_hand_pairs(self, p, q):
        assert power_identity_holds(p, q, 16)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_normalized_coefficient_form(self, m):
        # n-th coefficient of G(m,x)^m times n! * m^n is (n+1)^(n-1) * m^n
        powered = series_power(rational_series(m, 1, 10).coeffs, m, 10)
        for n, coeff in enumerate(powered):
            assert coeff * math.factorial(n) * m**n == (n + 1) ** (n - 1) * m**n


class TestCompositions:
    @given(n=st.integers(0, 8), parts=st.integers(1, 4))
    @settings(max_examples=50)
    def test_count_and_sums(self, n, parts):
        comps = list(weak_compositions(n, parts))
        assert len(comps) == math.comb(n + parts - 1, parts - 1)
        assert len(set(comps)) == len(comps)
        assert all(sum(c) == n and len(c) == parts for c in comps)

    def test_multinomial(self):
        assert multinomial([2, 1]) == 3
        assert multinomial([0, 0, 4]) == 1
        assert multinomial([2, 2, 2]) == 90

    def test_composition_sum_carrier(self):
        out = composition_sum(2, 2, lambda comp: 1)
        assert out.value == 3
        assert out.parts == 2 and out.n == 2


class TestForestCompositionIdentity:
    def test_single_part(self):
        check = m_forest_composition_identity(1, 5)
        assert check.lhs == check.rhs == 6**4  # 1296

    def test_hand_n1(self):
        # compositions (1,0) and (0,1), each contributing 3^0 * 1 = 1
        check = m_forest_composition_identity(2, 1)
        assert (check.lhs, check.rhs) == (2, 2)

    def test_hand_n2(self):
        # (2,0) and (0,2) give 5 each, (1,1) gives 2; rhs = 3 * 4
        check = m_forest_composition_identity(2, 2)
        assert (check.lhs, check.rhs) == (12, 12)
        assert check.equal

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_small_battery(self, m, n):
        assert m_forest_composition_identity(m, n).equal


class TestTwoColoringIdentity:
    def test_hand_p2_q1_n1(self):
        check = two_coloring_identity(2, 1, 1)
        assert (check.lhs, check.rhs) == (2, 2)

    def test_symmetric_case(self):
        # p = q: the grouped factor rewrites as p^j * (j+1)^(j-1) on both sides
        for n in (1, 2, 3):
            assert two_coloring_identity(2, 2, n).equal

    def test_p3_q2_n2(self):
        assert two_coloring_identity(3, 2, 2).equal

    @pytest.mark.parametrize("p", [1, 2, 3])
    @pytest.mark.parametrize("q", [1, 2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_small_battery(self, p, q, n):
        assert two_coloring_identity(p, q, n).equal


class TestLagrangeTerms:
    def test_vanishing_term(self):
        # k = 2, m = 2: k-1 = 1 is not a multiple of 2
        term = lagrange_terms(2, 2)[1]
        assert term.j is None
        assert term.coefficient == 0
        assert term.matches_series

    def test_m1_k3(self):
        # j = 2: coefficient 3^1/(1^2 * 2!) = 3/2
        term = lagrange_terms(1, 3)[2]
        assert term.j == 2
        assert term.coefficient == F(3, 2)
        assert term.matches_series

    def test_m2_k3(self):
        # j = 1: coefficient (2*1+1)^0/(2^1 * 1!) = 1/2
        term = lagrange_terms(2, 3)[2]
        assert term.j == 1
        assert term.coefficient == F(1, 2)
        assert term.matches_series

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_all_terms_match_and_vanish_correctly(self, m):
        terms = lagrange_terms(m, 13)
        for term in terms:
            assert term.matches_series
            if (term.k - 1) % m == 0:
                assert term.j == (term.k - 1) // m
            else:
                assert term.j is None
                assert term.coefficient == 0

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_surviving_terms_equal_float_series_coefficients(self, m):
        for term in lagrange_terms(m, 13):
            if term.j is not None:
                assert float(term.coefficient) == pytest.approx(
                    series_coefficient(float(m), term.j), rel=1e-12
                )

"""Offspring laws, the population walk, and the batched trial engine.

Statistical assertions are seed-pinned and use generous sigma multiples, so
they are deterministic reruns of a fixed stream, not flaky samplers.
"""

import math

import numpy as np
import pytest

from gwforest.branching import (
    CENSORED,
    EXTINCT,
    OffspringDist,
    borel_term,
    estimate_extinction,
    offspring_pmf,
    progeny_cells_from_outcomes,
    run_trials,
    sample_offspring,
    simulate_gw,
    total_progeny_pmf_check,
)
from gwforest.rngs import child_generator
from gwforest.series import extinction_series

Z_STAR_C2 = 0.20318786997997995
Y_STAR_M2_C2 = 0.45076365201730713


class _ZeroOffspringRng:
    def poisson(self, lam):
        return 0


class TestOffspringDist:
    def test_validation(self):
        with pytest.raises(ValueError):
            OffspringDist(kind="poisson", m=2, c=1.0)
        with pytest.raises(ValueError):
            OffspringDist(kind="weird", m=1, c=1.0)
        with pytest.raises(ValueError):
            OffspringDist.m_fold(2, 0.0)

    def test_pmf_hand_values(self):
        assert offspring_pmf(OffspringDist.poisson(2.0), 0) == pytest.approx(
            math.exp(-2.0), rel=1e-12
        )
        dist = OffspringDist.m_fold(2, 2.0)
        assert offspring_pmf(dist, 3) == 0.0
        # j = 2, c/m = 1: e^{-1} * 1^2 / 2!
        assert offspring_pmf(dist, 4) == pytest.approx(math.exp(-1.0) / 2.0, rel=1e-12)

    @pytest.mark.parametrize("m", [1, 2, 3, 5])
    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0, 4.0])
    def test_pmf_normalization_and_mean(self, m, c):
        dist = OffspringDist.poisson(c) if m == 1 else OffspringDist.m_fold(m, c)
        support = range(0, m * 400 + 1)
        total = math.fsum(offspring_pmf(dist, k) for k in support)
        mean = math.fsum(k * offspring_pmf(dist, k) for k in support)
        assert abs(total - 1.0) <= 1e-12
        assert abs(mean - c) <= 1e-10

    def test_sample_support_and_mean(self):
        rng = child_generator(7, 0)
        dist = OffspringDist.m_fold(3, 2.0)
        samples = [sample_offspring(dist, rng) for _ in range(5000)]
        assert all(s % 3 == 0 for s in samples)

        n = 200_000
        dist_p = OffspringDist.poisson(2.0)
        rng = child_generator(7, 2)
        mean_obs = np.mean([sample_offspring(dist_p, rng) for _ in range(n)])
        assert abs(mean_obs - 2.0) <= 4.0 * math.sqrt(2.0 / n)

    def test_m_fold_sample_mean(self):
        n = 100_000
        dist = OffspringDist.m_fold(2, 2.0)
        rng = child_generator(7, 3)
        samples = np.array([sample_offspring(dist, rng) for _ in range(n)])
        # Var(Z) = m^2 * (c/m) = m*c
        assert abs(samples.mean() - 2.0) <= 4.0 * math.sqrt(2.0 * 2.0 / n)


class TestSimulateGw:
    def test_childless_root(self):
        out = simulate_gw(OffspringDist.poisson(2.0), rng=_ZeroOffspringRng())
        assert out.status == EXTINCT
        assert out.total_progeny == 1
        assert out.steps == 1

    def test_subcritical_mostly_extinct(self):
        rng = child_generator(11, 0)
        dist = OffspringDist.poisson(0.5)
        outcomes = [simulate_gw(dist, progeny_cap=10**5, rng=rng) for _ in range(2000)]
        assert all(o.status == EXTINCT for o in outcomes)
        assert all(o.total_progeny == o.steps for o in outcomes)

    def test_censoring(self):
        rng = child_generator(11, 1)
        dist = OffspringDist.poisson(3.0)
        outcomes = [simulate_gw(dist, progeny_cap=50, rng=rng) for _ in range(500)]
        censored = [o for o in outcomes if o.status == CENSORED]
        assert censored, "supercritical trials must hit a small cap"
        assert all(o.total_progeny is None for o in censored)


class TestRunTrials:
    def test_deterministic(self):
        dist = OffspringDist.poisson(2.0)
        a = run_trials(dist, 40_000, 10_000, seed=42)
        b = run_trials(dist, 40_000, 10_000, seed=42)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
        c = run_trials(dist, 40_000, 10_000, seed=43)
        assert not np.array_equal(a[0], c[0])

    def test_m_fold_totals_are_one_mod_m(self):
        extinct, totals = run_trials(OffspringDist.m_fold(3, 2.0), 10_000, 10_000, seed=5)
        assert extinct.any()
        assert np.all(totals[extinct] % 3 == 1)

    def test_extinction_rate_against_fixed_point(self):
        extinct, _ = run_trials(OffspringDist.poisson(2.0), 100_000, 10_000, seed=42)
        p_hat = extinct.mean()
        stderr = math.sqrt(p_hat * (1 - p_hat) / extinct.size)
        assert abs(p_hat - Z_STAR_C2) <= 5.0 * stderr

    def test_agrees_with_per_individual_walk(self):
        # same distribution, different stream layout: compare both estimators
        # against each other at matched scale
        trials = 4000
        rng = child_generator(42, 99)
        dist = OffspringDist.poisson(2.0)
        walk_hits = sum(
            simulate_gw(dist, progeny_cap=500, rng=rng).status == EXTINCT
            for _ in range(trials)
        )
        walk_p = walk_hits / trials
        extinct, _ = run_trials(dist, trials, 500, seed=7)
        engine_p = extinct.mean()
        spread = 5.0 * math.sqrt(2.0 * Z_STAR_C2 * (1 - Z_STAR_C2) / trials)
        assert abs(walk_p - engine_p) <= spread


class TestEstimateExtinction:
    def test_fields_and_formulas(self):
        est = estimate_extinction(OffspringDist.poisson(2.0), 50_000, 10_000, seed=42)
        assert est.trials == 50_000
        assert est.seed == 42
        assert est.censored_count == est.trials - round(est.p_hat * est.trials)
        assert est.stderr == pytest.approx(
            math.sqrt(est.p_hat * (1 - est.p_hat) / est.trials), rel=1e-12
        )

    def test_bit_identical_reruns(self):
        a = estimate_extinction(OffspringDist.m_fold(2, 2.0), 30_000, 10_000, seed=1)
        b = estimate_extinction(OffspringDist.m_fold(2, 2.0), 30_000, 10_000, seed=1)
        assert a == b

    def test_m_fold_against_power_oracle(self):
        est = estimate_extinction(OffspringDist.m_fold(2, 2.0), 100_000, 10_000, seed=42)
        assert abs(est.p_hat - Y_STAR_M2_C2) <= 5.0 * est.stderr

    def test_subcritical_near_one(self):
        est = estimate_extinction(OffspringDist.poisson(0.8), 50_000, 10**5, seed=42)
        assert abs(est.p_hat - 1.0) <= 5.0 * est.stderr + 1e-3

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("c", [0.5, 1.5, 2.0, 4.0])
    def test_grid_against_series_values(self, m, c):
        dist = OffspringDist.poisson(c) if m == 1 else OffspringDist.m_fold(m, c)
        est = estimate_extinction(dist, 100_000, 10_000, seed=42)
        target = extinction_series(float(m), c, 1e-12)
        # the 1e-9 slack absorbs the series tolerance when stderr is 0 (all
        # subcritical trials extinct, p_hat exactly 1)
        assert abs(est.p_hat - target) <= 5.0 * est.stderr + 1e-9


class TestBorel:
    def test_term_hand_values(self):
        assert borel_term(2.0, 0) == pytest.approx(math.exp(-2.0), rel=1e-12)
        assert borel_term(2.0, 1) == pytest.approx(2.0 * math.exp(-4.0), rel=1e-12)
        # k=2: 3^1 * 2^2 * e^{-6} / 2!
        assert borel_term(2.0, 2) == pytest.approx(6.0 * math.exp(-6.0), rel=1e-12)

    def test_terms_sum_to_one_subcritical(self):
        total = math.fsum(borel_term(0.5, k) for k in range(400))
        assert abs(total - 1.0) <= 1e-12

    def test_terms_sum_to_extinction_supercritical(self):
        total = math.fsum(borel_term(2.0, k) for k in range(100_000))
        assert total == pytest.approx(Z_STAR_C2, abs=1e-6)

    def test_pmf_check_cells(self):
        cells = total_progeny_pmf_check(2.0, 5, 200_000, seed=42, progeny_cap=10_000)
        assert [cell.k for cell in cells] == list(range(6))
        for cell in cells:
            assert abs(cell.observed - cell.expected) <= 5.0 * cell.stderr
            assert cell.stderr == pytest.approx(
                math.sqrt(cell.observed * (1 - cell.observed) / 200_000), rel=1e-12
            )

    def test_cells_from_outcomes_matches_wrapper(self):
        extinct, totals = run_trials(OffspringDist.poisson(2.0), 50_000, 10_000, seed=3)
        direct = progeny_cells_from_outcomes(extinct, totals, 2.0, 4)
        wrapper = total_progeny_pmf_check(2.0, 4, 50_000, seed=3, progeny_cap=10_000)
        assert direct == wrapper

    def test_k_max_validation(self):
        with pytest.raises(ValueError):
            total_progeny_pmf_check(2.0, 21, 100, seed=0)

"""Extinction probabilities, rooted-forest counts, and giant components.

The package verifies one family of facts from three independent directions:
exact rational arithmetic (power-series coefficients, composition sums,
inversion terms), certified floating-point evaluation (series partial sums
with proven tail bounds, fixed-point solvers), and seeded Monte Carlo
(branching-process trials, random hypergraph components).  The central
statement is the power identity F(m, c)^m = F(1, c) for the extinction value
F of an m-fold Poisson branching process.
"""

from .branching import (
    ExtinctionEstimate,
    GWOutcome,
    OffspringDist,
    ProgenyCell,
    borel_term,
    estimate_extinction,
    offspring_pmf,
    run_trials,
    sample_offspring,
    simulate_gw,
    total_progeny_pmf_check,
)
from .exact import (
    CompositionSum,
    IdentityCheck,
    LagrangeTerm,
    RationalSeries,
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
from .fixedpoint import (
    ConvergenceError,
    FixedPointResult,
    identity_gap,
    m_fold_extinction,
    poisson_extinction,
)
from .forests import (
    ColoredForest,
    CountMismatchError,
    EnumerationCapError,
    ForestSpec,
    RootColorTally,
    count_colored_trees_rooted_at_zero,
    count_labeled_trees,
    count_rooted_forests,
    group_by_root_color,
    iter_colored_forests,
)
from .graphs import (
    ComponentStats,
    GiantComparison,
    HypergraphConfig,
    component_stats,
    generate_hypergraph,
    giant_vs_theory,
)
from .series import (
    SeriesParams,
    TruncatedSeries,
    TruncationBudgetError,
    eval_series,
    extinction_series,
    required_terms,
    series_coefficient,
    tail_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ColoredForest",
    "ComponentStats",
    "CompositionSum",
    "ConvergenceError",
    "CountMismatchError",
    "EnumerationCapError",
    "ExtinctionEstimate",
    "FixedPointResult",
    "ForestSpec",
    "GWOutcome",
    "GiantComparison",
    "HypergraphConfig",
    "IdentityCheck",
    "LagrangeTerm",
    "OffspringDist",
    "ProgenyCell",
    "RationalSeries",
    "RootColorTally",
    "SeriesParams",
    "TruncatedSeries",
    "TruncationBudgetError",
    "borel_term",
    "component_stats",
    "composition_sum",
    "count_colored_trees_rooted_at_zero",
    "count_labeled_trees",
    "count_rooted_forests",
    "estimate_extinction",
    "eval_series",
    "extinction_series",
    "generate_hypergraph",
    "giant_vs_theory",
    "group_by_root_color",
    "identity_gap",
    "iter_colored_forests",
    "lagrange_terms",
    "m_fold_extinction",
    "m_forest_composition_identity",
    "multinomial",
    "offspring_pmf",
    "poisson_extinction",
    "power_identity_holds",
    "rational_series",
    "run_trials",
    "sample_offspring",
    "series_coefficient",
    "series_power",
    "simulate_gw",
    "tail_bound",
    "total_progeny_pmf_check",
    "two_coloring_identity",
    "weak_compositions",
]

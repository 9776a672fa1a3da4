"""Galton-Watson simulation with Poisson and m-fold Poisson offspring.

The population walk is Y_t = Y_{t-1} - 1 + Z_t from Y_0 = 1: step t removes
one live individual and adds its children Z_t.  The process is extinct when
Y hits 0; the total progeny (individuals ever born, root included) then
equals the number of steps taken.  Trials whose total births exceed a cap are
censored and counted as survived; for supercritical means the resulting bias
is exponentially small, and near the critical mean c = 1 it is the caller's
problem to budget for.

Offspring laws:

    poisson        P(Z = k) = c^k * exp(-c) / k!
    m_fold         Z = m * J with J ~ Poisson(c/m), i.e.
                   P(Z = m*j) = (c/m)^j * exp(-c/m) / j!

Note the m-fold normalizing constant exp(-c/m): with exp(-c) instead the
weights would sum to exp(-c*(m-1)/m) != 1 for m > 1, so that variant
(occasionally seen in print) is not a probability distribution.  The
exp(-c/m) law sums to 1, has mean c, and its generating function evaluated at
y gives exp(-c*(1-y^m)/m), the m-fold extinction equation.

``estimate_extinction`` runs trials in fixed-size chunks, one derived RNG
stream per chunk, evolving whole generations at once (the offspring total of
a generation of size Y is Poisson(c*Y), or m times Poisson(c*Y/m)).  Chunk
streams make the estimate bit-reproducible for a given (seed, trials, cap)
regardless of how chunks would be scheduled across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rngs import child_generator

POISSON = "poisson"
M_FOLD = "m_fold"
EXTINCT = "extinct"
CENSORED = "censored"

DEFAULT_PROGENY_CAP = 100_000
_CHUNK_TRIALS = 1 << 14


@dataclass(frozen=True)
class OffspringDist:
    """Offspring law: ``poisson`` (m must be 1) or ``m_fold`` with mean c."""

    kind: str
    m: int
    c: float

    def __post_init__(self) -> None:
        if self.kind not in (POISSON, M_FOLD):
            raise ValueError(f"unknown offspring kind {self.kind!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"fold parameter must be a positive integer, got {self.m!r}")
        if self.kind == POISSON and self.m != 1:
            raise ValueError("poisson offspring requires m == 1")
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise ValueError(f"mean must be positive and finite, got {self.c}")

    @classmethod
    def poisson(cls, c: float) -> "OffspringDist":
        return cls(kind=POISSON, m=1, c=c)

    @classmethod
    def m_fold(cls, m: int, c: float) -> "OffspringDist":
        return cls(kind=M_FOLD, m=m, c=c)


@dataclass(frozen=True)
class GWOutcome:
    """One trial: ``total_progeny`` is set only when extinct; ``steps`` counts
    processed individuals either way."""

    status: str
    total_progeny: int | None
    steps: int


@dataclass(frozen=True)
class ExtinctionEstimate:
    p_hat: float
    stderr: float
    trials: int
    censored_count: int
    seed: int


@dataclass(frozen=True)
class ProgenyCell:
    """One row of the total-progeny comparison: P(total = k+1) predicted by
    (k+1)^(k-1) * c^k * exp(-(k+1)*c) / k! versus the observed frequency."""

    k: int
    expected: float
    observed: float
    stderr: float


def offspring_pmf(dist: OffspringDist, k: int) -> float:
    """P(Z = k) for the given law, in the log domain."""
    if k < 0:
        return 0.0
    if dist.kind == POISSON:
        return math.exp(k * math.log(dist.c) - dist.c - math.lgamma(k + 1)) if k else math.exp(-dist.c)
    if k % dist.m != 0:
        return 0.0
    j = k // dist.m
    lam = dist.c / dist.m
    return math.exp(j * math.log(lam) - lam - math.lgamma(j + 1)) if j else math.exp(-lam)


def sample_offspring(dist: OffspringDist, rng: np.random.Generator) -> int:
    if dist.kind == POISSON:
        return int(rng.poisson(dist.c))
    return dist.m * int(rng.poisson(dist.c / dist.m))


def simulate_gw(
    dist: OffspringDist,
    progeny_cap: int = DEFAULT_PROGENY_CAP,
    rng: np.random.Generator | None = None,
) -> GWOutcome:
    """One trial of the population walk, one individual per step.

    Reference implementation; the batched engine in ``run_trials`` must agree
    with it in distribution.
    """
    if progeny_cap < 1:
        raise ValueError(f"progeny cap must be positive, got {progeny_cap}")
    if rng is None:
        rng = np.random.default_rng()
    alive = 1
    born = 1
    steps = 0
    while alive > 0:
        z = sample_offspring(dist, rng)
        steps += 1
        alive += z - 1
        born += z
        if born > progeny_cap:
            return GWOutcome(status=CENSORED, total_progeny=None, steps=steps)
    # every individual was processed exactly once
    assert born == steps
    return GWOutcome(status=EXTINCT, total_progeny=born, steps=steps)


def run_trials(
    dist: OffspringDist,
    trials: int,
    progeny_cap: int = DEFAULT_PROGENY_CAP,
    seed: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized trials; returns (extinct mask, total-born array).

    Totals are meaningful where the mask is True; censored entries hold the
    birth count at the moment the cap was crossed.  Generations are evolved
    whole: extinction, and total progeny when extinct, have exactly the
    distribution of the per-individual walk, and a trial is censored whenever
    its births pass the cap before extinction, also as in the walk.
    """
    if trials < 1:
        raise ValueError(f"trial count must be positive, got {trials}")
    if progeny_cap < 1:
        raise ValueError(f"progeny cap must be positive, got {progeny_cap}")
    extinct = np.zeros(trials, dtype=bool)
    totals = np.zeros(trials, dtype=np.int64)
    rate = dist.c / dist.m
    for chunk_index, start in enumerate(range(0, trials, _CHUNK_TRIALS)):
        size = min(_CHUNK_TRIALS, trials - start)
        rng = child_generator(seed, chunk_index)
        alive_idx = np.arange(size)
        generation = np.ones(size, dtype=np.int64)
        born = np.ones(size, dtype=np.int64)
        ext = np.zeros(size, dtype=bool)
        while alive_idx.size:
            offspring = rng.poisson(rate * generation[alive_idx])
            if dist.m > 1:
                offspring *= dist.m
            born[alive_idx] += offspring
            generation[alive_idx] = offspring
            over = born[alive_idx] > progeny_cap
            died = (offspring == 0) & ~over  # the cap crossing censors first
            ext[alive_idx[died]] = True
            alive_idx = alive_idx[~(over | died)]
        extinct[start : start + size] = ext
        totals[start : start + size] = born
    return extinct, totals


def estimate_from_outcomes(extinct: np.ndarray, seed: int) -> ExtinctionEstimate:
    """Fold a mask from ``run_trials`` into an estimate."""
    trials = int(extinct.size)
    hits = int(extinct.sum())
    p_hat = hits / trials
    return ExtinctionEstimate(
        p_hat=p_hat,
        stderr=math.sqrt(p_hat * (1.0 - p_hat) / trials),
        trials=trials,
        censored_count=trials - hits,
        seed=seed,
    )


def estimate_extinction(
    dist: OffspringDist,
    trials: int,
    progeny_cap: int = DEFAULT_PROGENY_CAP,
    seed: int = 0,
) -> ExtinctionEstimate:
    """Monte Carlo extinction probability; censored trials count as survived."""
    extinct, _ = run_trials(dist, trials, progeny_cap, seed)
    return estimate_from_outcomes(extinct, seed)


def borel_term(c: float, k: int) -> float:
    """(k+1)^(k-1) * c^k * exp(-(k+1)*c) / k!, the chance that one trial under
    Poisson(c) offspring ends with total progeny k+1."""
    if not (c > 0.0 and math.isfinite(c)):
        raise ValueError(f"mean must be positive and finite, got {c}")
    if k < 0:
        raise ValueError(f"index must be nonnegative, got {k}")
    return math.exp(
        (k - 1) * math.log(k + 1.0) + k * math.log(c) - (k + 1) * c - math.lgamma(k + 1)
    )


def progeny_cells_from_outcomes(
    extinct: np.ndarray, totals: np.ndarray, c: float, k_max: int
) -> list[ProgenyCell]:
    """Per-k comparison cells from the output of ``run_trials``."""
    if k_max < 0 or k_max > 20:
        raise ValueError(f"k_max must lie in 0..20, got {k_max}")
    trials = int(extinct.size)
    counts = np.bincount(totals[extinct], minlength=k_max + 2)
    cells = []
    for k in range(k_max + 1):
        observed = counts[k + 1] / trials
        cells.append(
            ProgenyCell(
                k=k,
                expected=borel_term(c, k),
                observed=observed,
                stderr=math.sqrt(observed * (1.0 - observed) / trials),
            )
        )
    return cells


def total_progeny_pmf_check(
    c: float,
    k_max: int,
    trials: int,
    seed: int = 0,
    progeny_cap: int = DEFAULT_PROGENY_CAP,
) -> list[ProgenyCell]:
    """Empirical P(total progeny = k+1) under Poisson(c) offspring versus the
    predicted term, for k = 0..k_max, with binomial stderr per cell."""
    extinct, totals = run_trials(OffspringDist.poisson(c), trials, progeny_cap, seed)
    return progeny_cells_from_outcomes(extinct, totals, c, k_max)

"""Certified floating-point evaluation of the forest series and extinction values.

The power series

    G(m, x) = sum_{k>=0} a_k(m) x^k,    a_k(m) = (k*m + 1)^(k-1) / (m^k * k!)

has radius of convergence 1/e and converges absolutely on the closed interval
[-1/e, 1/e].  Substituting x = c*exp(-c), which lies in (0, 1/e] for every
c > 0, and multiplying by exp(-c/m) gives

    F(m, c) = exp(-c/m) * G(m, c*exp(-c)),

the probability that a branching process with m-fold Poisson offspring of mean
c dies out.  Equivalently, F(m, c) is the probability that a fixed vertex of a
sparse random (m+1)-uniform hypergraph with average degree c lies outside the
giant component, so 1 - F(m, c) is the limiting giant-component fraction.

Evaluation is double precision, but truncation is certified: every partial sum
comes with a proven bound on the dropped tail, so callers request an absolute
tolerance instead of guessing a term count.  Near the boundary |x| = 1/e the
true tail decays only like K^(-1/2), so very tight tolerances there genuinely
require astronomically many terms; ``required_terms`` makes that cost visible
before any summation starts, and ``TruncationBudgetError`` is raised when the
certified term count would exceed the configured budget.

All functions are pure; there is no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

INV_E = math.exp(-1.0)
DEFAULT_MAX_TERMS = 20_000_000

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
_CHUNK = 1 << 20
# c*exp(-c) can land a final-ulp above exp(-1) when c is rounded near 1
_DOMAIN_SLACK = 1e-12


class TruncationBudgetError(RuntimeError):
    """The certified term count for the requested tolerance exceeds the budget."""


@dataclass(frozen=True)
class SeriesParams:
    """Arguments of one series evaluation.

    ``m`` is the fold parameter (m = r - 1 in the hypergraph reading), ``x``
    the series argument, and ``c`` the mean-offspring parameter when the
    evaluation came from an extinction-value computation (otherwise None).
    """

    m: float
    x: float
    c: float | None = None

    def __post_init__(self) -> None:
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise ValueError(f"fold parameter m must be positive and finite, got {self.m}")
        if not math.isfinite(self.x):
            raise ValueError(f"series argument x must be finite, got {self.x}")
        if self.c is not None and not (self.c >= 0.0 and math.isfinite(self.c)):
            raise ValueError(f"mean parameter c must be nonnegative, got {self.c}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Partial sum of G(m, x) over k = 0..K with a certified tail bound.

    ``tail_bound`` is an upper bound on |sum_{k>K} a_k x^k|; it covers only
    the omitted tail, not the (far smaller) rounding of the retained terms.
    """

    params: SeriesParams
    K: int
    partial_sum: float
    tail_bound: float


def series_coefficient(m: float, k: int) -> float:
    """Coefficient a_k(m) = (k*m + 1)^(k-1) / (m^k * k!).

    Computed in the log domain, so large k neither overflows nor underflows
    prematurely.  a_0 = 1 exactly: the k = 0 factor (1)^(-1) is an empty
    product.
    """
    if not (m > 0.0 and math.isfinite(m)):
        raise ValueError(f"fold parameter m must be positive and finite, got {m}")
    if k < 0:
        raise ValueError(f"coefficient index must be nonnegative, got {k}")
    if k == 0:
        return 1.0
    return math.exp((k - 1) * math.log(k * m + 1.0) - k * math.log(m) - math.lgamma(k + 1))


def tail_bound(m: float, x_abs: float, K: int) -> float:
    """Certified upper bound on sum_{k>K} a_k(m) * x_abs^k for x_abs <= 1/e.

    Two bounds are combined and the smaller one returned:

    * Stirling bound.  From (km+1)^(k-1) <= (km)^(k-1) * exp(1/m) and
      k! >= sqrt(2*pi*k) * k^k * exp(-k), each term at x_abs <= 1/e is at most
      C * k^(-3/2) with C = exp(1/m) / (m * sqrt(2*pi)), and the tail sum is
      bounded by integral comparison: sum_{k>K} k^(-3/2) <= 2 / sqrt(K).
    * Geometric bound.  Successive term ratios satisfy
      a_{k+1} x / a_k <= e * x_abs * (1 + 1/(m*(k+1))) for every k, so with
      rho = e * x_abs * (1 + 1/(m*(K+1))) < 1 the tail is at most
      (Stirling bound on the first omitted term) / (1 - rho).  This is
      exponentially small in K whenever x_abs is strictly inside 1/e.

    The result is nonincreasing in K and tends to 0 as K grows.
    """
    if not (m > 0.0 and math.isfinite(m)):
        raise ValueError(f"fold parameter m must be positive and finite, got {m}")
    if K < 1:
        raise ValueError(f"truncation index must be at least 1, got {K}")
    if x_abs < 0.0 or x_abs > INV_E * (1.0 + _DOMAIN_SLACK):
        raise ValueError(f"|x| = {x_abs} lies outside the certified interval [0, 1/e]")
    if x_abs == 0.0:
        return 0.0
    x_abs = min(x_abs, INV_E)

    coeff_const = math.exp(1.0 / m) / (m * _SQRT_TWO_PI)
    stirling = 2.0 * coeff_const / math.sqrt(K)

    rho = math.e * x_abs * (1.0 + 1.0 / (m * (K + 1)))
    if rho < 1.0:
        first = coeff_const * (K + 1) ** -1.5 * (math.e * x_abs) ** (K + 1)
        return min(stirling, first / (1.0 - rho))
    return stirling


def required_terms(
    m: float,
    x_abs: float,
    abs_tol: float,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> int:
    """Smallest truncation index K with tail_bound(m, x_abs, K) <= abs_tol.

    Raises TruncationBudgetError when that K exceeds ``max_terms``; near
    |x| = 1/e the certified count grows like 1/abs_tol^2, so tight tolerances
    on the boundary are refused rather than silently attempted.
    """
    if abs_tol <= 0.0:
        raise ValueError(f"absolute tolerance must be positive, got {abs_tol}")
    if tail_bound(m, x_abs, 1) <= abs_tol:
        return 1
    lo = 1
    hi = 2
    while tail_bound(m, x_abs, hi) > abs_tol:
        lo = hi
        hi *= 2
        if lo > max_terms:
            raise TruncationBudgetError(
                f"reaching tolerance {abs_tol:g} at m={m:g}, |x|={x_abs:.17g} needs "
                f"more than {max_terms} terms"
            )
    # bound is nonincreasing in K: bisect for the first K under tolerance
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail_bound(m, x_abs, mid) <= abs_tol:
            hi = mid
        else:
            lo = mid
    if hi > max_terms:
        raise TruncationBudgetError(
            f"reaching tolerance {abs_tol:g} at m={m:g}, |x|={x_abs:.17g} needs "
            f"{hi} terms, over the budget of {max_terms}"
        )
    return hi


def _partial_sum(m: float, x: float, K: int) -> float:
    # Terms k = 0..K in the log domain, vectorized in chunks to keep memory flat.
    # k = 0 needs no special case: (k-1)*log(k*m+1) is (-1)*log(1) = 0.
    log_m = math.log(m)
    log_ax = math.log(abs(x))
    negative = x < 0.0
    pieces = []
    for lo in range(0, K + 1, _CHUNK):
        hi = min(lo + _CHUNK, K + 1)
        k = np.arange(lo, hi, dtype=np.float64)
        logs = (k - 1.0) * np.log(k * m + 1.0) - k * log_m - gammaln(k + 1.0) + k * log_ax
        terms = np.exp(logs)
        if negative:
            terms[np.arange(lo, hi) % 2 == 1] *= -1.0
        pieces.append(float(terms.sum()))
    return math.fsum(pieces)


def eval_series(
    m: float,
    x: float,
    abs_tol: float,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> TruncatedSeries:
    """Evaluate G(m, x) for |x| <= 1/e with certified tail at most ``abs_tol``.

    The truncation index is chosen from the tail bound alone, never from
    observed term decay, so the certificate is independent of the summation.
    """
    params = SeriesParams(m=m, x=x)
    if abs_tol <= 0.0:
        raise ValueError(f"absolute tolerance must be positive, got {abs_tol}")
    if abs(x) > INV_E * (1.0 + _DOMAIN_SLACK):
        raise ValueError(f"|x| = {abs(x)} exceeds the convergence boundary 1/e")
    if x == 0.0:
        return TruncatedSeries(params=params, K=1, partial_sum=1.0, tail_bound=0.0)
    x_abs = min(abs(x), INV_E)
    K = required_terms(m, x_abs, abs_tol, max_terms=max_terms)
    return TruncatedSeries(
        params=params,
        K=K,
        partial_sum=_partial_sum(m, x, K),
        tail_bound=tail_bound(m, x_abs, K),
    )


def extinction_series(
    m: float,
    c: float,
    abs_tol: float,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """Extinction value F(m, c) = exp(-c/m) * G(m, c*exp(-c)) to ``abs_tol``.

    Half the tolerance is spent on series truncation and half reserved for the
    prefactor multiplication; since exp(-c/m) <= 1 the reserved half exceeds
    the actual rounding by many orders of magnitude.
    """
    if not (m > 0.0 and math.isfinite(m)):
        raise ValueError(f"fold parameter m must be positive and finite, got {m}")
    if not (c >= 0.0 and math.isfinite(c)):
        raise ValueError(f"mean parameter c must be nonnegative, got {c}")
    if abs_tol <= 0.0:
        raise ValueError(f"absolute tolerance must be positive, got {abs_tol}")
    if c == 0.0:
        return 1.0
    x = c * math.exp(-c)
    g = eval_series(m, x, 0.5 * abs_tol, max_terms=max_terms)
    return math.exp(-c / m) * g.partial_sum

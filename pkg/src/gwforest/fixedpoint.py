"""Extinction probabilities as fixed points of their defining equations.

A branching process with Poisson(c) offspring dies out with probability equal
to the least fixed point of z = exp(-c*(1-z)); with m-fold Poisson offspring
of mean c the equation becomes y = exp(-c*(1-y^m)/m).  For c <= 1 the only
root in (0, 1] is 1 (the trivial branch); for c > 1 there is a unique interior
root.  Raising the m-fold equation to the m-th power shows y^m satisfies the
single-type equation, which is the power identity F(m, c)^m = F(1, c) that
``identity_gap`` measures numerically.

Solving strategy: monotone fixed-point iteration from 0 (it climbs to the
least fixed point, with no bracketing subtleties as c approaches 1 from
above), followed by a Newton polish on h(z) = ln(z) + c*(1-z), which is
concave with h' > 0 left of the interior root, so Newton steps started below
the root stay below it and converge quadratically even where the plain
iteration stalls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .series import extinction_series

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"

_PLAIN_SWEEPS = 400
_MAX_PLAIN = 1_000_000
_NEWTON_STEPS = 100
_CROSSCHECK_RATE_LIMIT = 0.995


class ConvergenceError(RuntimeError):
    """The solver could not push the residual under the requested tolerance."""


@dataclass(frozen=True)
class FixedPointResult:
    """Root of an extinction equation plus convergence metadata.

    ``residual`` is |value - map(value)| for the defining map, recomputed on
    the returned value.  ``branch`` is "trivial" (c <= 1, value exactly 1) or
    "nontrivial" (c > 1, interior root).
    """

    value: float
    residual: float
    iterations: int
    branch: str


def _validate(c: float, tol: float, m: float = 1.0) -> None:
    if not (m > 0.0 and math.isfinite(m)):
        raise ValueError(f"fold parameter m must be positive and finite, got {m}")
    if not (c > 0.0 and math.isfinite(c)):
        raise ValueError(f"mean parameter c must be positive and finite, got {c}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")


def poisson_extinction(c: float, tol: float = 1e-12) -> FixedPointResult:
    """Least root of z = exp(-c*(1-z)) in (0, 1].

    Returns 1 exactly for c <= 1.  For c > 1 the result has residual at most
    ``tol``; ConvergenceError signals a tolerance below what double precision
    iteration can reach.
    """
    _validate(c, tol)
    if c <= 1.0:
        return FixedPointResult(value=1.0, residual=0.0, iterations=0, branch=TRIVIAL)

    z = 0.0
    iterations = 0
    # climb monotonically; break to Newton once steps stagnate under 0.1*tol
    while iterations < min(_PLAIN_SWEEPS, _MAX_PLAIN):
        nxt = math.exp(-c * (1.0 - z))
        iterations += 1
        step = nxt - z
        z = nxt
        if step <= 0.1 * tol:
            break

    for _ in range(_NEWTON_STEPS):
        residual = abs(z - math.exp(-c * (1.0 - z)))
        if residual <= 0.5 * tol:
            break
        h = math.log(z) + c * (1.0 - z)
        dh = 1.0 / z - c
        if dh <= 0.0:
            # only reachable by rounding past the root; bail out to the check below
            break
        z -= h / dh
        iterations += 1
        if z >= 1.0:
            z = 1.0 - 1e-16

    residual = abs(z - math.exp(-c * (1.0 - z)))
    if residual > tol:
        raise ConvergenceError(
            f"residual {residual:.3e} above tolerance {tol:g} after {iterations} "
            f"iterations at c={c:g}"
        )
    return FixedPointResult(value=z, residual=residual, iterations=iterations, branch=NONTRIVIAL)


def _iterate_m_fold(m: float, c: float, stop_delta: float, max_iter: int) -> float:
    y = 0.0
    for _ in range(max_iter):
        nxt = math.exp(-c * (1.0 - y**m) / m)
        step = nxt - y
        y = nxt
        if step <= stop_delta:
            break
    return y


def m_fold_extinction(m: float, c: float, tol: float = 1e-12) -> FixedPointResult:
    """Least root of y = exp(-c*(1-y^m)/m) in (0, 1].

    For c > 1 the root is computed as poisson_extinction(c)^(1/m), polished by
    Newton on h(y) = ln(y) + c*(1-y^m)/m so the residual of the m-fold map
    itself clears ``tol``.  When the map contracts fast enough to finish
    within the iteration cap, a plain iteration from 0 independently verifies
    the same root at runtime, turning the power identity into a live
    cross-check.
    """
    _validate(c, tol, m)
    if c <= 1.0:
        return FixedPointResult(value=1.0, residual=0.0, iterations=0, branch=TRIVIAL)

    inner = poisson_extinction(c, max(0.01 * tol, 4e-16))
    z = inner.value
    y = z ** (1.0 / m)
    iterations = inner.iterations

    for _ in range(_NEWTON_STEPS):
        residual = abs(y - math.exp(-c * (1.0 - y**m) / m))
        if residual <= 0.5 * tol:
            break
        h = math.log(y) + c * (1.0 - y**m) / m
        dh = 1.0 / y - c * y ** (m - 1.0)
        if dh <= 0.0:
            break
        y -= h / dh
        iterations += 1
        if not (0.0 < y < 1.0):
            y = min(max(y, 1e-300), 1.0 - 1e-16)

    residual = abs(y - math.exp(-c * (1.0 - y**m) / m))
    if residual > tol:
        raise ConvergenceError(
            f"residual {residual:.3e} above tolerance {tol:g} after {iterations} "
            f"iterations at m={m:g}, c={c:g}"
        )

    rate = c * z  # contraction factor of the m-fold map at its root
    if rate <= _CROSSCHECK_RATE_LIMIT:
        probe = _iterate_m_fold(m, c, 0.05 * tol * (1.0 - rate) / rate, _MAX_PLAIN)
        if abs(probe - y) > max(2.0 * tol, 1e-12):
            raise ConvergenceError(
                f"direct iteration ({probe!r}) disagrees with the power route "
                f"({y!r}) at m={m:g}, c={c:g}"
            )

    return FixedPointResult(value=y, residual=residual, iterations=iterations, branch=NONTRIVIAL)


def identity_gap(m: float, c: float, tol: float = 1e-9) -> float:
    """|F(m, c)^m - F(1, c)| with each side evaluated by series to tol/4.

    The true gap is zero for all positive m and c; the returned value is the
    numerical discrepancy the caller compares against ``tol``.  At m = 1 both
    sides are the same computation and the gap is exactly 0.
    """
    _validate(c, tol, m)
    lhs = extinction_series(m, c, 0.25 * tol) ** m
    rhs = extinction_series(1.0, c, 0.25 * tol)
    return abs(lhs - rhs)

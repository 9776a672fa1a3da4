"""Exact rational verification of the power identity and its finite pieces.

Everything here runs in arbitrary-precision integer and Fraction arithmetic;
no floating point enters any computation.  The headline check is

    G(p/q, x)^p == G(1, x)^q    coefficient by coefficient,

where G(p/q, x) has k-th coefficient (k*p + q)^(k-1) * q / (p^k * k!).  The
finite identities behind it are multinomial sums over weak compositions:

* sum over k_1+...+k_m = n of  multinomial * prod (k_i*m+1)^(k_i-1)
  equals (n+1)^(n-1) * m^n  (both sides count edge-colored labeled trees);
* the two-coloring identity equates the composition sum over p root-color
  blocks of q*(j*p+q)^(j-1) factors with the composition sum over q blocks of
  p^n * (i+1)^(i-1) factors (both count doubly root-colored rooted forests).

A zero part contributes factor 1: the (0*m+1)^(-1) exponent is an empty
product in the generating-function expansion.

``lagrange_terms`` rebuilds the series for F(m, c) one term at a time by
inversion of z = y * phi(z) with phi(z) = exp(c*z^m/m): phi is raised to the
k-th power as a formal series in z (coefficients are polynomials in c), the
z^(k-1) coefficient is extracted, and the resulting c-polynomial is compared
exactly against the k-th series term.  The expansion uses only generic formal
series multiplication and exponentiation, so it is an independent route to
the same coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence


@dataclass(frozen=True)
class RationalSeries:
    """Exact coefficients of G(p/q, x) up to ``degree``."""

    p: int
    q: int
    degree: int
    coeffs: tuple[Fraction, ...]


@dataclass(frozen=True)
class CompositionSum:
    """Literal sum of a term function over all weak compositions of n."""

    parts: int
    n: int
    value: Fraction | int


@dataclass(frozen=True)
class IdentityCheck:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class LagrangeTerm:
    """Inversion term of index k: the coefficient of c^j * exp(-c*(m*j+1)/m).

    ``j`` is None (and ``coefficient`` zero) when the term vanishes, which
    happens exactly when k - 1 is not a multiple of m.  ``matches_series`` is
    the exact comparison against the k-th term of the extinction series.
    """

    k: int
    j: int | None
    coefficient: Fraction
    matches_series: bool


def _require_positive(value: int, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value


def rational_series(p: int, q: int, degree: int) -> RationalSeries:
    """Exact coefficients (k*p+q)^(k-1) * q / (p^k * k!) for k = 0..degree.

    Reducing p/q is the caller's business; the coefficients only depend on
    the ratio, so common factors do not change the result.
    """
    _require_positive(p, "p")
    _require_positive(q, "q")
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    coeffs = [Fraction(1)]
    for k in range(1, degree + 1):
        coeffs.append(Fraction((k * p + q) ** (k - 1) * q, p**k * math.factorial(k)))
    return RationalSeries(p=p, q=q, degree=degree, coeffs=tuple(coeffs))


def _series_mul(a: Sequence[Fraction], b: Sequence[Fraction], degree: int) -> list[Fraction]:
    out = [Fraction(0)] * (degree + 1)
    for i, ai in enumerate(a[: degree + 1]):
        if not ai:
            continue
        for j in range(min(len(b), degree + 1 - i)):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def series_power(coeffs: Sequence[Fraction], exponent: int, degree: int) -> tuple[Fraction, ...]:
    """Truncated exponent-th power of a formal power series, by repeated
    Cauchy convolution."""
    _require_positive(exponent, "exponent")
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    base = [Fraction(c) for c in coeffs[: degree + 1]]
    base += [Fraction(0)] * (degree + 1 - len(base))
    out = list(base)
    for _ in range(exponent - 1):
        out = _series_mul(out, base, degree)
    return tuple(out)


def power_identity_holds(p: int, q: int, degree: int) -> bool:
    """Exact test of G(p/q, x)^p == G(1, x)^q through ``degree``.

    A False return is a finding about the identity, not an error.
    """
    lhs = series_power(rational_series(p, q, degree).coeffs, p, degree)
    rhs = series_power(rational_series(1, 1, degree).coeffs, q, degree)
    return lhs == rhs


def weak_compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of ``parts`` nonnegative integers summing to n."""
    if parts < 1:
        raise ValueError(f"parts must be positive, got {parts}")
    if parts == 1:
        yield (n,)
        return
    for head in range(n + 1):
        for rest in weak_compositions(n - head, parts - 1):
            yield (head, *rest)


def multinomial(counts: Iterable[int]) -> int:
    """n! / (k_1! * ... * k_r!) for n = sum of counts, exactly."""
    total = 0
    out = 1
    for k in counts:
        if k < 0:
            raise ValueError("multinomial parts must be nonnegative")
        total += k
        out *= math.comb(total, k)
    return out


def composition_sum(
    n: int, parts: int, term: Callable[[tuple[int, ...]], Fraction | int]
) -> CompositionSum:
    value = sum(term(comp) for comp in weak_compositions(n, parts))
    return CompositionSum(parts=parts, n=n, value=value)


def _forest_factor(k: int, m: int) -> int:
    # (k*m + 1)^(k-1); the k = 0 case is the empty product
    return 1 if k == 0 else (k * m + 1) ** (k - 1)


def m_forest_composition_identity(m: int, n: int) -> IdentityCheck:
    """Composition sum of rooted m-forest counts vs the colored-tree count.

    lhs = sum over weak compositions k_1+...+k_m = n of
          multinomial(n; k) * prod_i (k_i*m+1)^(k_i-1),
    rhs = (n+1)^(n-1) * m^n.
    """
    _require_positive(m, "m")
    _require_positive(n, "n")

    def term(comp: tuple[int, ...]) -> int:
        out = multinomial(comp)
        for k in comp:
            out *= _forest_factor(k, m)
        return out

    lhs = composition_sum(n, m, term).value
    rhs = (n + 1) ** (n - 1) * m**n
    return IdentityCheck(lhs=int(lhs), rhs=rhs)


def _root_colored_factor(j: int, p: int, q: int) -> int:
    # q * (j*p + q)^(j-1); a zero-size block contributes q * q^(-1) = 1
    return 1 if j == 0 else q * (j * p + q) ** (j - 1)


def two_coloring_identity(p: int, q: int, n: int) -> IdentityCheck:
    """Both composition sums that count doubly root-colored rooted forests.

    lhs groups by the first root color (p blocks of root-q-colored forests),
    rhs groups by the second root color (q blocks, each fully p-colored).
    """
    _require_positive(p, "p")
    _require_positive(q, "q")
    _require_positive(n, "n")

    def lhs_term(comp: tuple[int, ...]) -> int:
        out = multinomial(comp)
        for j in comp:
            out *= _root_colored_factor(j, p, q)
        return out

    def rhs_term(comp: tuple[int, ...]) -> int:
        out = multinomial(comp) * p**n
        for i in comp:
            out *= _forest_factor(i, 1)
        return out

    lhs = composition_sum(n, p, lhs_term).value
    rhs = composition_sum(n, q, rhs_term).value
    return IdentityCheck(lhs=int(lhs), rhs=int(rhs))


# --- formal series in z with polynomial-in-c coefficients -----------------
#
# A c-polynomial is a dict {power of c: Fraction}; a z-series is a list of
# c-polynomials indexed by the power of z.


def _poly_mul(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, av in a.items():
        for j, bv in b.items():
            out[i + j] = out.get(i + j, Fraction(0)) + av * bv
    return {k: v for k, v in out.items() if v}


def _poly_scale(a: dict[int, Fraction], s: Fraction) -> dict[int, Fraction]:
    return {k: v * s for k, v in a.items() if v * s}


def _zseries_mul(
    a: list[dict[int, Fraction]], b: list[dict[int, Fraction]], z_degree: int
) -> list[dict[int, Fraction]]:
    out: list[dict[int, Fraction]] = [{} for _ in range(z_degree + 1)]
    for i, ai in enumerate(a[: z_degree + 1]):
        if not ai:
            continue
        for j in range(min(len(b), z_degree + 1 - i)):
            if b[j]:
                prod = _poly_mul(ai, b[j])
                tgt = out[i + j]
                for k, v in prod.items():
                    tgt[k] = tgt.get(k, Fraction(0)) + v
    return [{k: v for k, v in poly.items() if v} for poly in out]


def _zseries_exp(v: list[dict[int, Fraction]], z_degree: int) -> list[dict[int, Fraction]]:
    # exp(v) = sum v^i / i!; v has no constant term, so powers truncate fast
    if v[0]:
        raise ValueError("formal exponential needs a series with zero constant term")
    out: list[dict[int, Fraction]] = [{} for _ in range(z_degree + 1)]
    out[0] = {0: Fraction(1)}
    power: list[dict[int, Fraction]] = [{} for _ in range(z_degree + 1)]
    power[0] = {0: Fraction(1)}
    low = next((i for i, poly in enumerate(v) if poly), z_degree + 1)
    i = 0
    while (i + 1) * low <= z_degree:
        i += 1
        power = _zseries_mul(power, v, z_degree)
        inv_fact = Fraction(1, math.factorial(i))
        for zpow, poly in enumerate(power):
            if poly:
                tgt = out[zpow]
                for k, val in poly.items():
                    tgt[k] = tgt.get(k, Fraction(0)) + val * inv_fact
    return [{k: val for k, val in poly.items() if val} for poly in out]


def lagrange_terms(m: int, num_terms: int) -> list[LagrangeTerm]:
    """Inversion terms k = 1..num_terms for z = y * exp(c*z^m/m), exactly.

    Term k is (k-1)-th derivative of phi^k at 0, divided by k!, computed from
    a formal expansion of phi^k; it must equal the series coefficient
    (m*j+1)^(j-1) / (m^j * j!) * c^j when k = m*j + 1 and vanish otherwise.
    """
    _require_positive(m, "m")
    _require_positive(num_terms, "num_terms")
    z_degree = num_terms - 1

    v: list[dict[int, Fraction]] = [{} for _ in range(z_degree + 1)]
    if m <= z_degree:
        v[m] = {1: Fraction(1, m)}  # (c/m) * z^m
    phi = _zseries_exp(v, z_degree)

    out: list[LagrangeTerm] = []
    phik: list[dict[int, Fraction]] = [{} for _ in range(z_degree + 1)]
    phik[0] = {0: Fraction(1)}
    for k in range(1, num_terms + 1):
        phik = _zseries_mul(phik, phi, z_degree)
        # (k-1)! * [z^(k-1)] phi^k, then divide by k!: net division by k
        poly = _poly_scale(phik[k - 1], Fraction(1, k))
        if (k - 1) % m == 0:
            j = (k - 1) // m
            expected_coeff = (
                Fraction(1)
                if j == 0
                else Fraction((m * j + 1) ** (j - 1), m**j * math.factorial(j))
            )
            matches = poly == {j: expected_coeff}
            out.append(
                LagrangeTerm(
                    k=k,
                    j=j,
                    coefficient=poly.get(j, Fraction(0)),
                    matches_series=matches,
                )
            )
        else:
            out.append(
                LagrangeTerm(k=k, j=None, coefficient=Fraction(0), matches_series=not poly)
            )
    return out

"""Command-line front end: one subcommand per verification.

Exit code 0 when every executed check passes (statistical passes included),
1 on any failure, 2 on usage errors.  ``suite`` runs the whole battery at its
pinned tolerances; the other subcommands take their parameters from flags.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from .branching import (
    DEFAULT_PROGENY_CAP,
    M_FOLD,
    POISSON,
    OffspringDist,
    estimate_from_outcomes,
    progeny_cells_from_outcomes,
    run_trials,
)
from .exact import (
    lagrange_terms,
    m_forest_composition_identity,
    power_identity_holds,
    two_coloring_identity,
)
from .fixedpoint import ConvergenceError, identity_gap, m_fold_extinction, poisson_extinction
from .forests import (
    CountMismatchError,
    EnumerationCapError,
    ForestSpec,
    cayley_count,
    colored_tree_count,
    count_colored_trees_rooted_at_zero,
    count_labeled_trees,
    count_rooted_forests,
    rooted_forest_count,
)
from .graphs import HypergraphConfig, giant_vs_theory
from .report import (
    FAIL,
    PASS,
    STAT_FAIL,
    STAT_PASS,
    ReportRecord,
    fmt_float,
    format_csv,
    format_json,
    format_table,
    sort_records,
)
from .series import TruncationBudgetError, extinction_series

DEFAULT_SEED = 42
DEFAULT_TOL = 1e-10
IDENTITY_TOL = 1e-9  # numeric power-identity battery
COMPARE_TOL = 1e-9  # solver route vs series route
SOLVER_TOL = 1e-12
SIGMA_FACTOR = 5.0
CENSOR_ALLOWANCE = 1e-3  # cap bias allowance for subcritical estimates
GIANT_TOL = 0.01
SUBCRITICAL_FRACTION = 1e-3

SUITE_TRIALS = 10**6
SUITE_GRAPH_N = 10**5
SUITE_GRAPH_TRIALS = 5
M_GRID = (0.5, 1.0, 1.5, 2.0, 3.0, math.pi)
C_GRID = (0.25, 0.9, 1.5, 2.0, 4.0, 8.0)
COEFF_PAIRS = ((2, 1), (3, 1), (4, 1), (3, 2), (4, 3), (5, 2))

_CHECK_ERRORS = (
    ValueError,
    IndexError,
    ConvergenceError,
    TruncationBudgetError,
    EnumerationCapError,
    CountMismatchError,
)

# keyed (kind, m, c, trials, cap, seed); shared between gw and borel checks
_RUN_CACHE: dict[tuple, tuple] = {}


def _cached_run(dist: OffspringDist, trials: int, cap: int, seed: int):
    key = (dist.kind, dist.m, dist.c, trials, cap, seed)
    if key not in _RUN_CACHE:
        _RUN_CACHE[key] = run_trials(dist, trials, cap, seed)
    return _RUN_CACHE[key]


def _record(
    check_name: str,
    parameters: dict,
    compute: Callable[[], tuple[str, str, bool, bool]],
) -> ReportRecord:
    start = time.perf_counter()
    try:
        expected, observed, ok, statistical = compute()
        if statistical:
            status = STAT_PASS if ok else STAT_FAIL
        else:
            status = PASS if ok else FAIL
    except _CHECK_ERRORS as exc:
        expected, observed, status = "", f"error: {exc}", FAIL
    runtime_ms = int(round((time.perf_counter() - start) * 1000))
    return ReportRecord(
        check_name=check_name,
        parameters={k: str(v) for k, v in parameters.items()},
        expected=expected,
        observed=observed,
        status=status,
        runtime_ms=runtime_ms,
    )


# --- single-check builders (shared by subcommands and the suite) -----------


def _identity_record(m: float, c: float, tol: float) -> ReportRecord:
    def compute():
        gap = identity_gap(m, c, tol)
        return "0", fmt_float(gap), gap <= tol, False

    return _record(
        "identity", {"m": fmt_float(m), "c": fmt_float(c), "tol": f"{tol:g}"}, compute
    )


def _solve_records(m: float, c: float, solver_tol: float) -> list[ReportRecord]:
    params = {"m": fmt_float(m), "c": fmt_float(c), "tol": f"{solver_tol:g}"}

    def series_side():
        res = m_fold_extinction(m, c, solver_tol)
        val = extinction_series(m, c, 0.25 * COMPARE_TOL)
        return fmt_float(val), fmt_float(res.value), abs(res.value - val) <= COMPARE_TOL, False

    def power_side():
        res = m_fold_extinction(m, c, solver_tol)
        single = poisson_extinction(c, solver_tol)
        gap = abs(res.value**m - single.value)
        return fmt_float(single.value), fmt_float(res.value**m), gap <= COMPARE_TOL, False

    return [
        _record("solve.series", params, series_side),
        _record("solve.power", params, power_side),
    ]


def _coeffs_record(p: int, q: int, degree: int) -> ReportRecord:
    def compute():
        ok = power_identity_holds(p, q, degree)
        return "equal", "equal" if ok else "different", ok, False

    return _record("coeffs", {"p": p, "q": q, "degree": degree}, compute)


def _lemma22_record(m: int, n: int) -> ReportRecord:
    def compute():
        check = m_forest_composition_identity(m, n)
        return str(check.rhs), str(check.lhs), check.equal, False

    return _record("lemma22", {"m": m, "n": n}, compute)


def _lemma23_record(p: int, q: int, n: int) -> ReportRecord:
    def compute():
        check = two_coloring_identity(p, q, n)
        return str(check.rhs), str(check.lhs), check.equal, False

    return _record("lemma23", {"p": p, "q": q, "n": n}, compute)


def _lagrange_records(m: int, num_terms: int) -> list[ReportRecord]:
    records = []
    for k in range(1, num_terms + 1):
        def compute(k: int = k):
            term = lagrange_terms(m, k)[k - 1]
            if term.j is None:
                expected = "0"
            else:
                j = term.j
                expected = str(
                    Fraction(1) if j == 0
                    else Fraction((m * j + 1) ** (j - 1), m**j * math.factorial(j))
                )
            return expected, str(term.coefficient), term.matches_series, False

        records.append(_record("lagrange", {"m": m, "k": k}, compute))
    return records


def _tree_record(n: int) -> ReportRecord:
    def compute():
        count = count_labeled_trees(n, check=False)
        return str(cayley_count(n)), str(count), count == cayley_count(n), False

    return _record("trees", {"n": n}, compute)


def _forest_record(n: int, p: int, q: int) -> ReportRecord:
    def compute():
        count = count_rooted_forests(ForestSpec(n=n, edge_colors=p, root_colors=q), check=False)
        closed = rooted_forest_count(n, p, q)
        return str(closed), str(count), count == closed, False

    return _record("forests", {"n": n, "edge_colors": p, "root_colors": q}, compute)


def _colored_tree_record(n: int, m: int) -> ReportRecord:
    def compute():
        count = count_colored_trees_rooted_at_zero(n, m, check=False)
        closed = colored_tree_count(n, m)
        return str(closed), str(count), count == closed, False

    return _record("colored_trees", {"n": n, "m": m}, compute)


def _gw_record(kind: str, m: int, c: float, trials: int, cap: int, seed: int) -> ReportRecord:
    params = {"kind": kind, "m": m, "c": fmt_float(c), "trials": trials, "cap": cap, "seed": seed}

    def compute():
        dist = OffspringDist.poisson(c) if kind == POISSON else OffspringDist.m_fold(m, c)
        extinct, _ = _cached_run(dist, trials, cap, seed)
        est = estimate_from_outcomes(extinct, seed)
        expected = 1.0 if c <= 1.0 else m_fold_extinction(float(dist.m), c, SOLVER_TOL).value
        allowance = CENSOR_ALLOWANCE if c <= 1.0 else 0.0
        ok = abs(est.p_hat - expected) <= SIGMA_FACTOR * est.stderr + allowance
        return fmt_float(expected), fmt_float(est.p_hat), ok, True

    return _record("gw", params, compute)


def _borel_records(c: float, k_max: int, trials: int, cap: int, seed: int) -> list[ReportRecord]:
    records = []
    for k in range(k_max + 1):
        def compute(k: int = k):
            extinct, totals = _cached_run(OffspringDist.poisson(c), trials, cap, seed)
            cell = progeny_cells_from_outcomes(extinct, totals, c, k)[k]
            ok = abs(cell.observed - cell.expected) <= SIGMA_FACTOR * cell.stderr
            return fmt_float(cell.expected), fmt_float(cell.observed), ok, True

        records.append(
            _record(
                "borel",
                {"c": fmt_float(c), "k": k, "trials": trials, "cap": cap, "seed": seed},
                compute,
            )
        )
    return records


def _graph_record(n: int, r: int, c: float, trials: int, seed: int) -> ReportRecord:
    params = {"n": n, "r": r, "c": fmt_float(c), "trials": trials, "seed": seed}

    def compute():
        comparison = giant_vs_theory(HypergraphConfig(n=n, r=r, c=c, seed=seed), trials)
        if c > 1.0:
            ok = comparison.deviation <= GIANT_TOL
            expected = fmt_float(comparison.theory)
        else:
            ok = comparison.empirical_mean < SUBCRITICAL_FRACTION
            expected = f"<{fmt_float(SUBCRITICAL_FRACTION)}"
        return expected, fmt_float(comparison.empirical_mean), ok, True

    return _record("graph", params, compute)


# --- suite groups (module level so a process pool can pickle them) ---------


def _suite_lemma22(seed: int) -> list[ReportRecord]:
    return [_lemma22_record(m, n) for m in range(1, 6) for n in range(1, 9)]


def _suite_lemma23(seed: int) -> list[ReportRecord]:
    return [
        _lemma23_record(p, q, n)
        for p in range(1, 5)
        for q in range(1, 5)
        for n in range(1, 7)
    ]


def _suite_coeffs(seed: int) -> list[ReportRecord]:
    return [_coeffs_record(p, q, 16) for p, q in COEFF_PAIRS]


def _suite_forests(seed: int) -> list[ReportRecord]:
    records = [_tree_record(n) for n in range(1, 8)]
    records += [
        _forest_record(n, p, q)
        for n in range(1, 5)
        for p in range(1, 4)
        for q in range(1, 4)
    ]
    records.append(_forest_record(5, 1, 1))
    records += [_colored_tree_record(n, m) for n in range(1, 5) for m in range(1, 4)]
    return records


def _suite_lagrange(seed: int) -> list[ReportRecord]:
    return [rec for m in (1, 2, 3) for rec in _lagrange_records(m, 13)]


def _suite_identity(seed: int) -> list[ReportRecord]:
    return [_identity_record(m, c, IDENTITY_TOL) for m in M_GRID for c in C_GRID]


def _suite_solve(seed: int) -> list[ReportRecord]:
    return [
        rec
        for m in M_GRID
        for c in C_GRID
        if c > 1.0
        for rec in _solve_records(m, c, SOLVER_TOL)
    ]


def _suite_gw(seed: int) -> list[ReportRecord]:
    return [
        _gw_record(POISSON, 1, 2.0, SUITE_TRIALS, DEFAULT_PROGENY_CAP, seed),
        _gw_record(M_FOLD, 2, 2.0, SUITE_TRIALS, DEFAULT_PROGENY_CAP, seed),
        _gw_record(POISSON, 1, 0.8, SUITE_TRIALS, DEFAULT_PROGENY_CAP, seed),
    ]


def _suite_borel(seed: int) -> list[ReportRecord]:
    return _borel_records(2.0, 10, SUITE_TRIALS, DEFAULT_PROGENY_CAP, seed)


def _suite_graph(seed: int) -> list[ReportRecord]:
    return [
        _graph_record(SUITE_GRAPH_N, 2, 2.0, SUITE_GRAPH_TRIALS, seed),
        _graph_record(SUITE_GRAPH_N, 3, 2.0, SUITE_GRAPH_TRIALS, seed),
        _graph_record(SUITE_GRAPH_N, 2, 0.5, SUITE_GRAPH_TRIALS, seed),
    ]


SUITE_GROUPS: dict[str, Callable[[int], list[ReportRecord]]] = {
    "lemma22": _suite_lemma22,
    "lemma23": _suite_lemma23,
    "coeffs": _suite_coeffs,
    "forests": _suite_forests,
    "lagrange": _suite_lagrange,
    "identity": _suite_identity,
    "solve": _suite_solve,
    "gw": _suite_gw,
    "borel": _suite_borel,
    "graph": _suite_graph,
}


def _suite_group_entry(name: str, seed: int) -> list[ReportRecord]:
    return SUITE_GROUPS[name](seed)


# --- subcommand handlers ----------------------------------------------------


def _cmd_identity(args) -> list[ReportRecord]:
    return [_identity_record(args.m, args.c, args.tol)]


def _cmd_solve(args) -> list[ReportRecord]:
    return _solve_records(args.m, args.c, min(args.tol, SOLVER_TOL))


def _cmd_coeffs(args) -> list[ReportRecord]:
    return [_coeffs_record(args.p, args.q, args.degree)]


def _cmd_lemma22(args) -> list[ReportRecord]:
    return [_lemma22_record(args.m, args.n)]


def _cmd_lemma23(args) -> list[ReportRecord]:
    return [_lemma23_record(args.p, args.q, args.n)]


def _cmd_lagrange(args) -> list[ReportRecord]:
    return _lagrange_records(args.m, args.terms)


def _cmd_forests(args) -> list[ReportRecord]:
    records = [_tree_record(n) for n in range(1, args.trees_max + 1)]
    records += [
        _forest_record(n, p, q)
        for n in range(1, args.forests_max + 1)
        for p in range(1, args.colors_max + 1)
        for q in range(1, args.colors_max + 1)
    ]
    records += [
        _colored_tree_record(n, m)
        for n in range(1, args.colored_trees_max + 1)
        for m in range(1, args.colors_max + 1)
    ]
    return records


def _cmd_gw(args) -> list[ReportRecord]:
    return [_gw_record(args.kind, args.m, args.c, args.trials, args.cap, args.seed)]


def _cmd_borel(args) -> list[ReportRecord]:
    return _borel_records(args.c, args.k_max, args.trials, args.cap, args.seed)


def _cmd_graph(args) -> list[ReportRecord]:
    return [_graph_record(args.n, args.r, args.c, args.trials, args.seed)]


def _cmd_suite(args) -> list[ReportRecord]:
    names = list(SUITE_GROUPS)
    if args.only:
        wanted = [part.strip() for part in args.only.split(",") if part.strip()]
        unknown = [w for w in wanted if w not in SUITE_GROUPS]
        if unknown:
            raise SystemExit(2)
        names = [n for n in names if n in wanted]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = {name: pool.submit(_suite_group_entry, name, args.seed) for name in names}
            return [rec for name in names for rec in futures[name].result()]
    return [rec for name in names for rec in SUITE_GROUPS[name](args.seed)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="master RNG seed")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numeric tolerance")
    common.add_argument("--out", type=Path, default=None, help="also write the report here")
    common.add_argument(
        "--format", choices=("table", "csv", "json"), default="table", help="report format"
    )
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for suite groups")

    parser = argparse.ArgumentParser(
        prog="gwforest",
        description="Verify extinction-probability identities, forest counts, and "
        "giant-component predictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identity", parents=[common], help="numeric check of F(m,c)^m = F(1,c)")
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(handler=_cmd_identity)

    p = sub.add_parser(
        "solve",
        parents=[common],
        help="extinction equation root vs series value and vs the single-type root",
    )
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser(
        "coeffs", parents=[common], help="exact coefficient identity G(p/q,x)^p = G(1,x)^q"
    )
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--degree", type=int, default=16)
    p.set_defaults(handler=_cmd_coeffs)

    p = sub.add_parser("lemma22", parents=[common], help="m-forest composition sum identity")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_lemma22)

    p = sub.add_parser("lemma23", parents=[common], help="two-coloring composition identity")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_lemma23)

    p = sub.add_parser(
        "lagrange", parents=[common], help="inversion terms vs extinction series terms"
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--terms", type=int, default=13)
    p.set_defaults(handler=_cmd_lagrange)

    p = sub.add_parser("forests", parents=[common], help="exhaustive counting oracles")
    p.add_argument("--trees-max", type=int, default=7)
    p.add_argument("--forests-max", type=int, default=4)
    p.add_argument("--colors-max", type=int, default=3)
    p.add_argument("--colored-trees-max", type=int, default=4)
    p.set_defaults(handler=_cmd_forests)

    p = sub.add_parser("gw", parents=[common], help="Monte Carlo extinction estimate")
    p.add_argument("--kind", choices=(POISSON, M_FOLD), default=POISSON)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--trials", type=int, default=SUITE_TRIALS)
    p.add_argument("--cap", type=int, default=DEFAULT_PROGENY_CAP)
    p.set_defaults(handler=_cmd_gw)

    p = sub.add_parser("borel", parents=[common], help="total-progeny distribution table")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--trials", type=int, default=SUITE_TRIALS)
    p.add_argument("--cap", type=int, default=DEFAULT_PROGENY_CAP)
    p.set_defaults(handler=_cmd_borel)

    p = sub.add_parser("graph", parents=[common], help="giant component fraction vs theory")
    p.add_argument("--n", type=int, default=SUITE_GRAPH_N)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--trials", type=int, default=SUITE_GRAPH_TRIALS)
    p.set_defaults(handler=_cmd_graph)

    p = sub.add_parser("suite", parents=[common], help="the full acceptance battery")
    p.add_argument(
        "--only",
        default=None,
        help="comma-separated group filter: " + ",".join(SUITE_GROUPS),
    )
    p.set_defaults(handler=_cmd_suite)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    records = sort_records(args.handler(args))
    if args.format == "csv":
        metadata = [
            f"gwforest {__version__}",
            f"command={args.command} seed={args.seed} tol={args.tol:g}",
            f"generated_at={datetime.now(timezone.utc).isoformat()}",
            f"total_runtime_ms={sum(r.runtime_ms for r in records)}",
        ]
        payload = format_csv(records, metadata)
    elif args.format == "json":
        payload = format_json(records)
    else:
        payload = format_table(records)
    sys.stdout.write(payload)
    if args.out is not None:
        args.out.write_text(payload, encoding="utf-8")
    return 1 if any(r.failed for r in records) else 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: single values, tables, and verification suites.

Four subcommands:

  hodge    one linear Hodge integral <tau_{n_1}..tau_{n_ell} lambda_j>
  hurwitz  one simple Hurwitz number h_{g,mu}
  table    a deterministic file (csv or json) of Hurwitz numbers
  verify   the cross-validation suites; exit 0 iff every check passes

All values print as exact rationals ("num/den", or "n" for integers).
Identical invocations produce byte-identical output.  Every error path
exits nonzero with a single-line reason on stderr.

If the environment variable HURWITZ_REC_CACHE names a directory, filled
Hodge tables are persisted there as JSON, keyed by (method, complexity),
and reloaded only after the base entries revalidate exactly.
"""

import argparse
import csv
import json
import os
import sys
from typing import Optional

from .exact_algebra import LaurentSeries, UniPoly, format_rational, \
    laurent_reciprocal, laurent_substitute, rat
from .hodge_solver import HodgeTable, default_table, dvv_verify, \
    hodge_lambda, load_table_cache, save_table_cache
from .hurwitz import h_brute, h_direct, hurwitz_elsv, table_generate
from .lambert_curve import eta_xi_identity_check, h02_series_identity_check, \
    s_involution, stirling_coefficients, v_series, w_series, xi_form
from .residue_kernel import p_ab, p_ab_eta, p_n, p_n_eta
from .reference_data import HODGE_REFERENCE, HURWITZ_GENUS_FIVE, \
    HURWITZ_REFERENCE

DEFAULT_BUDGET = 9


class _Parser(argparse.ArgumentParser):
    """argparse with single-line errors (keeps stderr machine-parsable)."""

    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _add_common(sub) -> None:
    sub.add_argument(
        "--complexity-budget", type=int, default=DEFAULT_BUDGET,
        metavar="CHI",
        help="largest recursion level 2g-2+ell the Hodge table may fill "
             f"(default {DEFAULT_BUDGET})")
    sub.add_argument(
        "--jobs", type=int, default=1, metavar="N",
        help="parallel cells per table level (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hodgehurwitz", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    hodge = sub.add_parser(
        "hodge", help="one linear Hodge integral")
    hodge.add_argument("--g", type=int, required=True, help="genus")
    hodge.add_argument("--indices", required=True, metavar="N1,N2,...",
                       help="comma-separated psi exponents, e.g. 3 or 2,2")
    hodge.add_argument("--method", choices=["cutjoin", "bm", "both"],
                       default="cutjoin",
                       help="recursion pipeline (both = compute twice and "
                            "compare)")
    hodge.add_argument("--format", choices=["text", "json"], default="text")
    _add_common(hodge)

    hurwitz = sub.add_parser(
        "hurwitz", help="one simple Hurwitz number")
    hurwitz.add_argument("--g", type=int, required=True, help="genus")
    hurwitz.add_argument("--mu", required=True, metavar="M1,M2,...",
                         help="ramification profile, e.g. 2,1")
    hurwitz.add_argument("--method",
                         choices=["cutjoin", "elsv", "brute", "cross"],
                         default="cutjoin",
                         help="cutjoin = branch-point recursion, elsv = "
                              "Hodge-integral formula, brute = symmetric-"
                              "group count, cross = all in-range methods")
    _add_common(hurwitz)

    table = sub.add_parser(
        "table", help="emit a table of Hurwitz numbers")
    table.add_argument("--g-max", type=int, required=True)
    table.add_argument("--size-max", type=int, default=6, metavar="D",
                       help="largest degree |mu| (default 6)")
    table.add_argument("--out", metavar="FILE",
                       help="write here instead of stdout")
    table.add_argument("--format", choices=["csv", "json"], default="csv")
    table.add_argument("--include-genus-zero", action="store_true",
                       help="also emit g = 0 rows")
    table.add_argument("--check", action="store_true",
                       help="recompute every row by the branch-point "
                            "recursion and compare")
    _add_common(table)

    verify = sub.add_parser(
        "verify", help="run the cross-validation suites")
    verify.add_argument("--suite",
                        choices=["appendix", "dvv", "series", "residues",
                                 "all"],
                        default="all")
    verify.add_argument("--order", type=int, default=30,
                        help="series truncation order (default 30)")
    _add_common(verify)

    return parser


# ---------------------------------------------------------------------------
# shared plumbing


def _parse_parts(text: str, what: str) -> tuple:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(
            f"invalid {what} {text!r}: expected comma-separated integers")
    if not parts:
        raise ValueError(f"{what} must be nonempty")
    return parts


def _validate_common(args) -> None:
    if args.complexity_budget < 1:
        raise ValueError("complexity-budget must be ≥ 1")
    if args.jobs < 1:
        raise ValueError("jobs must be ≥ 1")


def _prepared_table(method: str, chi: int, jobs: int) -> HodgeTable:
    """A Hodge table filled through complexity chi, via the persistent
    cache when HURWITZ_REC_CACHE is set."""
    chi = max(chi, 1)
    cache_dir = os.environ.get("HURWITZ_REC_CACHE")
    if cache_dir:
        cached = load_table_cache(cache_dir, method, chi)
        if cached is not None:
            return cached
    table = HodgeTable()
    table.fill_to_complexity(chi, method=method, jobs=jobs)
    if cache_dir:
        save_table_cache(table, cache_dir, method, chi)
    return table


# ---------------------------------------------------------------------------
# subcommands


def _run_hodge(args) -> int:
    _validate_common(args)
    if args.g < 0:
        raise ValueError(f"genus must be ≥ 0, got {args.g}")
    indices = _parse_parts(args.indices, "indices")
    if any(n < 0 for n in indices):
        raise ValueError(f"indices must be ≥ 0, got {indices}")
    chi = 2 * args.g - 2 + len(indices)
    if chi < 1:
        # unstable; raise the canonical error without building a table
        hodge_lambda(args.g, indices, method=args.method,
                     table=HodgeTable())
    if chi > args.complexity_budget:
        raise ValueError(
            f"complexity 2g-2+ell = {chi} exceeds --complexity-budget "
            f"{args.complexity_budget}")
    table = _prepared_table(args.method, chi, args.jobs)
    j, value = hodge_lambda(args.g, indices, method=args.method, table=table)
    if args.format == "json":
        print(json.dumps({
            "g": args.g,
            "indices": sorted(indices, reverse=True),
            "lambda_j": j,
            "value": format_rational(value),
        }))
    else:
        print(f"j={j} value={format_rational(value)}")
    return 0


def _run_hurwitz(args) -> int:
    _validate_common(args)
    if args.g < 0:
        raise ValueError(f"genus must be ≥ 0, got {args.g}")
    mu = _parse_parts(args.mu, "mu")
    ell = len(mu)
    chi = 2 * args.g - 2 + ell
    if args.method == "cutjoin":
        print(format_rational(h_direct(args.g, mu)))
        return 0
    if args.method == "brute":
        print(format_rational(h_brute(args.g, mu)))
        return 0
    if args.method == "elsv":
        if chi > args.complexity_budget:
            raise ValueError(
                f"complexity 2g-2+ell = {chi} exceeds --complexity-budget "
                f"{args.complexity_budget}")
        table = _prepared_table("cutjoin", chi, args.jobs)
        print(format_rational(hurwitz_elsv(args.g, mu, table=table)))
        return 0
    # cross: every method whose range covers this profile
    results = [("cutjoin", h_direct(args.g, mu))]
    if chi >= 1 and chi <= args.complexity_budget:
        table = _prepared_table("cutjoin", chi, args.jobs)
        results.append(("elsv", hurwitz_elsv(args.g, mu, table=table)))
    r = 2 * args.g - 2 + ell + sum(mu)
    if sum(mu) <= 5 and r <= 8:
        results.append(("brute", h_brute(args.g, mu)))
    vals = {format_rational(v) for _, v in results}
    if len(vals) != 1:
        detail = " ".join(f"{name}={format_rational(v)}"
                          for name, v in results)
        raise ValueError(
            f"methods disagree at h({args.g}, {tuple(sorted(mu, reverse=True))}): "
            f"{detail}")
    print(f"{vals.pop()} ({len(results)} methods agree)")
    return 0


def _table_payload(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        payload = [{
            "g": row["g"],
            "mu": row["mu"],
            "h": format_rational(row["h"]),
            "method": row["method"],
            "checked": row["checked"],
        } for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    out = []
    writer = csv.writer(_ListWriter(out), lineterminator="\n")
    writer.writerow(["g", "mu", "h", "method", "checked"])
    for row in rows:
        writer.writerow([
            row["g"],
            " ".join(str(m) for m in row["mu"]),
            format_rational(row["h"]),
            row["method"],
            "true" if row["checked"] else "false",
        ])
    return "".join(out)


class _ListWriter:
    def __init__(self, sink: list):
        self._sink = sink

    def write(self, text: str) -> None:
        self._sink.append(text)


def _run_table(args) -> int:
    _validate_common(args)
    # the deepest Hodge level a stable row can need: g = g_max, ell = size_max
    needed = 2 * args.g_max - 2 + args.size_max
    fill = min(max(needed, 1), args.complexity_budget)
    table = _prepared_table("cutjoin", fill, args.jobs)
    rows = table_generate(
        args.g_max, args.size_max,
        include_genus_zero=args.include_genus_zero,
        check=args.check,
        hodge_table=table,
        chi_budget=args.complexity_budget)
    payload = _table_payload(rows, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(payload)
        except OSError as exc:
            raise ValueError(f"cannot write {args.out}: {exc.strerror}")
    else:
        sys.stdout.write(payload)
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _series_checks(order: int) -> list:
    def involution():
        s = s_involution(order)
        ss = laurent_substitute(s, laurent_reciprocal(s))
        diff = ss - LaurentSeries.exact({-1: 1}, "1/t")
        return diff.is_zero() and diff.truncation_order >= order - 6

    def fixes_w():
        s = s_involution(order)
        w = w_series(order)
        diff = laurent_substitute(w, laurent_reciprocal(s)) - w
        return diff.is_zero() and diff.truncation_order >= order - 4

    def half_v_squared():
        v = v_series(order)
        return ((v * v).scale(rat(1, 2)) - w_series(order)).is_zero()

    def v_odd_under_s():
        s = s_involution(order)
        v = v_series(order)
        diff = laurent_substitute(v, laurent_reciprocal(s)) + v
        return diff.is_zero() and diff.truncation_order >= order - 6

    def eta_matches_xi():
        return all(eta_xi_identity_check(n, order) for n in range(-1, 9))

    def frozen_coefficients():
        s = s_involution(order)
        v = v_series(order)
        s_ok = [s.coefficient(k) for k in (-1, 0, 1, 2, 3)] == \
            [rat(-1), rat(2, 3), rat(0), rat(4, 135), rat(8, 405)]
        v_ok = [v.coefficient(k) for k in (1, 2, 3, 4, 5)] == \
            [rat(1), rat(1, 3), rat(7, 36), rat(73, 540), rat(1331, 12960)]
        sk_ok = stirling_coefficients(4) == [
            rat(1), rat(-1, 12), rat(1, 288), rat(139, 51840),
            rat(-571, 2488320)]
        return s_ok and v_ok and sk_ok

    def h02_identity():
        return h02_series_identity_check(8)

    return [
        ("series: s(s(t)) = t", involution),
        ("series: w(s(t)) = w(t)", fixes_w),
        ("series: v^2/2 = w", half_v_squared),
        ("series: v(s(t)) = -v(t)", v_odd_under_s),
        ("series: eta_n matches xi_hat_n for n = -1..8", eta_matches_xi),
        ("series: frozen leading coefficients of s, v, s_k",
         frozen_coefficients),
        ("series: two-point genus-zero amplitude identity to degree 8",
         h02_identity),
    ]


def _residue_checks() -> list:
    def pair_kernels():
        for a in range(0, 9):
            for b in range(0, 9 - a):
                poly = p_ab(a, b)
                if poly != p_ab_eta(a, b):
                    return False
                if poly.degree() != 2 * (a + b + 2):
                    return False
        return True

    def point_kernels():
        for n in range(0, 7):
            poly = p_n(n)
            if poly != p_n_eta(n):
                return False
            if poly.total_degree() != 2 * n + 2:
                return False
        return True

    return [
        ("residues: p_ab agrees with its eta-series form for a+b <= 8",
         pair_kernels),
        ("residues: p_n agrees with its eta-series form for n <= 6",
         point_kernels),
    ]


def _dvv_checks(budget: int, jobs: int) -> list:
    def base_values():
        table = _prepared_table("cutjoin", 1, jobs)
        return (table.value(0, (0, 0, 0)) == rat(1)
                and table.value(1, (1,)) == rat(1, 24))

    def one_point_amplitude():
        table = _prepared_table("cutjoin", 1, jobs)
        acc = UniPoly.zero()
        for idx, val in table.level_entries(1, 1).items():
            acc = acc + xi_form(idx[0]).scale(val)
        return acc == UniPoly({2: rat(1, 8), 1: rat(-1, 12), 0: rat(-1, 24)})

    def recursion_holds():
        table = _prepared_table("cutjoin", max(budget, 2), jobs)
        for g in range(0, 4):
            for ell in range(1, budget + 2):
                if 2 * g - 1 + ell > budget:
                    break
                if not dvv_verify(g, ell, table=table):
                    raise ValueError(f"dvv fails at (g,ell)=({g},{ell})")
        return True

    return [
        ("dvv: <tau_0^3> = 1 and <tau_1> = 1/24", base_values),
        ("dvv: genus-one one-point amplitude is (1/24)(t-1)(3t+1)",
         one_point_amplitude),
        ("dvv: psi-sector recursion holds for g <= 3 within budget",
         recursion_holds),
    ]


def _appendix_checks(budget: int, jobs: int) -> list:
    need = max(2 * g - 2 + len(idx) for g, idx, _, _ in HODGE_REFERENCE)
    need = max(need, max(2 * g - 2 + len(mu)
                         for g, mu, _ in HURWITZ_REFERENCE))
    if budget < need:
        raise ValueError(
            f"appendix suite needs --complexity-budget ≥ {need}")

    def hodge_rows(method: str):
        def check():
            table = _prepared_table(method, need, jobs)
            for g, idx, j, val in HODGE_REFERENCE:
                jj, got = hodge_lambda(g, idx, method=method, table=table)
                if jj != j or got != rat(val):
                    raise ValueError(
                        f"<tau_{idx} lambda_{j}>_{g} expected {val}, "
                        f"{method} gives j={jj} value={format_rational(got)}")
            return True
        return check

    def hurwitz_direct():
        for g, mu, val in HURWITZ_REFERENCE + HURWITZ_GENUS_FIVE:
            got = h_direct(g, mu)
            if got != rat(val):
                raise ValueError(
                    f"h({g}, {mu}) expected {val}, recursion gives "
                    f"{format_rational(got)}")
        return True

    def hurwitz_formula():
        table = _prepared_table("cutjoin", need, jobs)
        for g, mu, val in HURWITZ_REFERENCE + HURWITZ_GENUS_FIVE:
            got = hurwitz_elsv(g, mu, table=table)
            if got != rat(val):
                raise ValueError(
                    f"h({g}, {mu}) expected {val}, Hodge-integral formula "
                    f"gives {format_rational(got)}")
        return True

    return [
        ("appendix: Hodge integrals, cut-and-join pipeline",
         hodge_rows("cutjoin")),
        ("appendix: Hodge integrals, topological-recursion pipeline",
         hodge_rows("bm")),
        ("appendix: Hurwitz numbers, branch-point recursion",
         hurwitz_direct),
        ("appendix: Hurwitz numbers, Hodge-integral formula",
         hurwitz_formula),
    ]


def _run_verify(args) -> int:
    _validate_common(args)
    if args.order < 10:
        raise ValueError("order must be ≥ 10")
    checks = []
    if args.suite in ("series", "all"):
        checks += _series_checks(args.order)
    if args.suite in ("residues", "all"):
        checks += _residue_checks()
    if args.suite in ("dvv", "all"):
        checks += _dvv_checks(args.complexity_budget, args.jobs)
    if args.suite in ("appendix", "all"):
        checks += _appendix_checks(args.complexity_budget, args.jobs)
    first_failure: Optional[str] = None
    for name, fn in checks:
        try:
            ok = bool(fn())
            detail = ""
        except ValueError as exc:
            ok = False
            detail = f": {exc}"
        print(("ok   " if ok else "FAIL ") + name + detail)
        if not ok and first_failure is None:
            first_failure = name + detail
    if first_failure is not None:
        print(f"error: verification failed: {first_failure}",
              file=sys.stderr)
        return 1
    return 0


_RUNNERS = {
    "hodge": _run_hodge,
    "hurwitz": _run_hurwitz,
    "table": _run_table,
    "verify": _run_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

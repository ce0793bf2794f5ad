"""Command-line interface.

Exit status: 0 when everything requested succeeded or passed, 1 when a
verification failed or an expression could not be evaluated, 2 for usage
and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import genfuncs, partitions
from .dsl.evaluator import EvalError, evaluate
from .dsl.lexer import LexError
from .dsl.parser import ParseError, parse
from .identities import IdentitySpec, build_catalog, dump_catalog, load_catalog, report_json, verify, verify_all
from .series import QSeries, dissect, to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_or_die(text: str, label: str):
    try:
        return parse(text)
    except (LexError, ParseError) as exc:
        raise UsageError(f"{label}: {exc}\n  {text}\n  {' ' * exc.offset}^") from exc


def _emit_series(s: QSeries, order: int, args: argparse.Namespace) -> None:
    if args.json:
        print(json.dumps(to_json(s)))
    elif args.bfile:
        for e in range(max(s.min_exp, 0), order + 1):
            print(f"{e} {s.coeff(e)}")
    else:
        for e in range(s.min_exp, order + 1):
            c = s.coeff(e)
            if c:
                print(f"{e}\t{c}")


def _load(args: argparse.Namespace) -> dict[str, IdentitySpec]:
    if getattr(args, "catalog", None):
        try:
            return load_catalog(Path(args.catalog).read_text())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot load catalog {args.catalog}: {exc}") from exc
    return build_catalog()


def _print_report(r) -> None:
    status = "PASS" if r.passed else "FAIL"
    detail = ""
    if r.first_mismatch:
        e, left, right = r.first_mismatch
        detail = f"  first mismatch at q^{e}: lhs {left}, rhs {right}"
    elif r.error:
        detail = f"  {r.error}"
    print(f"{status}  {r.id}  order {r.order}{detail}")


# -- commands --------------------------------------------------------------------


def cmd_expand(args: argparse.Namespace) -> int:
    node = _parse_or_die(args.expr, "expr")
    _emit_series(evaluate(node, args.order), args.order, args)
    return EXIT_OK


def cmd_dissect(args: argparse.Namespace) -> int:
    if args.mod < 1 or not 0 <= args.residue < args.mod:
        raise UsageError("need --mod >= 1 and 0 <= --residue < --mod")
    node = _parse_or_die(args.expr, "expr")
    full = evaluate(node, args.mod * args.order + args.residue)
    _emit_series(dissect(full, args.mod, args.residue), args.order, args)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.id:
        catalog = _load(args)
        if args.id not in catalog:
            raise UsageError(f"unknown identity id {args.id!r}")
        spec = catalog[args.id]
    elif args.lhs is not None and args.rhs is not None:
        _parse_or_die(args.lhs, "lhs")
        _parse_or_die(args.rhs, "rhs")
        spec = IdentitySpec("adhoc", args.lhs, args.rhs)
    else:
        raise UsageError("give --id, or both --lhs and --rhs")
    report = verify(spec, args.order)
    _print_report(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify_all(args: argparse.Namespace) -> int:
    catalog = _load(args)
    start = time.perf_counter()
    reports = verify_all(catalog, args.order, jobs=args.jobs)
    elapsed = time.perf_counter() - start
    for r in reports:
        if not r.passed or args.verbose:
            _print_report(r)
    passed = sum(r.passed for r in reports)
    print(f"{passed}/{len(reports)} identities pass ({elapsed:.1f} s)")
    if args.report:
        Path(args.report).write_text(report_json(reports, args.order))
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


def cmd_catalog(args: argparse.Namespace) -> int:
    text = dump_catalog(build_catalog())
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _emit_table(rows: list[tuple[int, int, int]], key: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps([{"n": n, key: s, "count": c} for n, s, c in rows]))
    else:
        print(f"n\t{key}\tcount")
        for n, s, c in rows:
            print(f"{n}\t{s}\t{c}")


def cmd_table(args: argparse.Namespace) -> int:
    if args.ell < 1 or args.nmax < 0:
        raise UsageError("need --ell >= 1 and --nmax >= 0")
    series = [genfuncs.rank_gf(s, args.ell, args.nmax + 1, include_empty=True) for s in range(args.ell)]
    rows = [(n, s, series[s].coeff(n)) for n in range(args.nmax + 1) for s in range(args.ell)]
    _emit_table(rows, "s", args.json)
    return EXIT_OK


def cmd_bruteforce(args: argparse.Namespace) -> int:
    if args.nmax < 0 or (args.ell is not None and args.ell < 1):
        raise UsageError("need --nmax >= 0 and --ell >= 1")
    if args.ell is None:
        dist = partitions.rank_distribution(args.nmax)
        rows = [(n, m, c) for n in range(args.nmax + 1) for m, c in sorted(dist[n].items())]
        _emit_table(rows, "m", args.json)
    else:
        table = partitions.residue_counts(args.ell, args.nmax)
        rows = [(n, s, table[(s, n)]) for n in range(args.nmax + 1) for s in range(args.ell)]
        _emit_table(rows, "s", args.json)
    return EXIT_OK


# -- wiring ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="m2rank", description="Exact q-series and M2-rank identity checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def series_out(sp: argparse.ArgumentParser) -> None:
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", help="print the JSON series encoding")
        g.add_argument("--bfile", action="store_true", help="print 'n a(n)' lines")

    sp = sub.add_parser("expand", help="expand an expression through q^order")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--order", type=int, required=True)
    series_out(sp)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("dissect", help="extract the terms q^(mod*n + residue), reindexed by n")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--residue", type=int, required=True)
    sp.add_argument("--order", type=int, required=True, help="order in the dissected variable")
    series_out(sp)
    sp.set_defaults(func=cmd_dissect)

    sp = sub.add_parser("verify", help="check one identity")
    sp.add_argument("--id")
    sp.add_argument("--lhs")
    sp.add_argument("--rhs")
    sp.add_argument("--order", type=int, help="order in q (default: the entry's own)")
    sp.add_argument("--catalog", help="catalog JSON file (default: built-in)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("verify-all", help="check every catalog identity")
    sp.add_argument("--order", type=int, help="order in q (default: each entry's own)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--report", help="write a JSON report here")
    sp.add_argument("--catalog", help="catalog JSON file (default: built-in)")
    sp.add_argument("-v", "--verbose", action="store_true", help="list passing entries too")
    sp.set_defaults(func=cmd_verify_all)

    sp = sub.add_parser("catalog", help="export the built-in catalog as JSON")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("table", help="residue counts N2(s, ell, n) from the generating functions")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("bruteforce", help="rank or residue counts by enumerating partitions")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bruteforce)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "order", None) is not None and args.order < 0:
        print("error: --order must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

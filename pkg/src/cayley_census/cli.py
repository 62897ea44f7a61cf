"""Command line entry point: ``cayley-census <subcommand>``.

Exit status is 0 when every checked invariant held, 2 when a bound or
inclusion was violated, 1 on operational errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .catalog import catalog
from .census import (
    LEMMA_COLUMNS,
    census_exact,
    census_sample,
    classify_one,
    rows_to_csv,
    rows_to_json,
    verify_lemmas,
)
from .errors import CensusError

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _render(rows, fmt, columns=None) -> str:
    return rows_to_json(rows) if fmt == "json" else rows_to_csv(rows, columns)


def cmd_verify_lemmas(args) -> int:
    report = verify_lemmas(args.max_order, args.tables)
    _emit(_render(report.rows, args.format, LEMMA_COLUMNS), args.out)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _census_targets(args):
    if args.groups:
        return args.groups
    return [e for e in catalog(args.max_order, args.tables)]


def cmd_census_exact(args) -> int:
    rows, failed = [], False
    for g in _census_targets(args):
        rec = census_exact(g, directed=args.directed, check_shortcut=args.check_shortcut,
                           tables_dir=args.tables)
        problems = rec.invariant_failures()
        for p in problems:
            print(f"{rec.group_id}: {p}", file=sys.stderr)
        failed |= bool(problems)
        rows.append(rec.as_row())
        if rec.closed_form_status:
            print(f"{rec.group_id}: obstruction count {rec.obstruction} of {rec.total}; "
                  f"closed-form bound 2^{rec.closed_form_log2_bound:.3f} is {rec.closed_form_status}",
                  file=sys.stderr)
    _emit(_render(rows, args.format), args.out)
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_census_sample(args) -> int:
    rows = []
    for g in _census_targets(args):
        rec = census_sample(g, args.samples, args.seed, directed=args.directed, tables_dir=args.tables)
        rows.append(rec.as_row())
    _emit(_render(rows, args.format), args.out)
    return EXIT_OK


def cmd_classify_one(args) -> int:
    record = classify_one(args.group, args.elements, require_undirected=args.require_undirected,
                          tables_dir=args.tables)
    _emit(rows_to_json(record) if args.format != "csv" else rows_to_csv([record]), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--tables", help="directory of extra group table files")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="cayley-census", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-lemmas", parents=[common],
                       help="check the invariant-set trichotomy and refined bounds")
    s.add_argument("--max-order", type=int, default=16)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_verify_lemmas)

    s = sub.add_parser("census-exact", parents=[common], help="classify every connection set")
    s.add_argument("groups", nargs="*", help="catalog group ids (default: whole catalog)")
    s.add_argument("--max-order", type=int, default=8)
    s.add_argument("--directed", action="store_true", help="all subsets instead of inverse-closed ones")
    s.add_argument("--check-shortcut", action="store_true",
                   help="also compare normalizer order with the set stabilizer in Aut(R)")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_census_exact)

    s = sub.add_parser("census-sample", parents=[common], help="Monte Carlo proportions")
    s.add_argument("groups", nargs="*")
    s.add_argument("--max-order", type=int, default=8)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--directed", action="store_true")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_census_sample)

    s = sub.add_parser("classify-one", parents=[common], help="classify one connection set")
    s.add_argument("group")
    s.add_argument("elements", nargs="*", type=int)
    s.add_argument("--require-undirected", action="store_true")
    s.add_argument("--format", choices=["csv", "json"], default="json")
    s.set_defaults(func=cmd_classify_one)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CensusError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Exit codes: 0 success, 1 verified-property violation, 2 invalid input or
unmet hypothesis, 3 basis-size cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .ce_complex import DEFAULT_CAP, build_generators, d2_check
from .errors import ConfspaceError, WindowTooLargeError
from .manifold import builtin_catalog, catalog_names, load_manifold_file
from .stability import (
    check_improved_hypotheses,
    check_optimality_hypotheses,
    compute_table,
    verify_eventual_constancy,
    verify_improved_ranges,
    verify_optimality,
    verify_rw_range,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def resolve_manifold(source: str):
    if source in catalog_names():
        return builtin_catalog(source)
    return load_manifold_file(source)


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confspace", description="Rational homology of unordered configuration spaces."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, theorem=False):
        p.add_argument("--manifold", required=True, help="catalog name or path to a JSON document")
        p.add_argument("--kmax", type=_nonnegative, default=4)
        p.add_argument("--imax", type=_nonnegative, default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum monomials per slice")
        if theorem:
            p.add_argument(
                "--theorem", choices=("rw", "improved", "optimal", "constancy"), required=True
            )
            p.add_argument(
                "--assume-even-cohomology",
                action="store_true",
                help="assert the even-cohomology hypothesis for non-orientable input",
            )

    common(sub.add_parser("compute", help="print the Betti table"))
    common(sub.add_parser("verify", help="check a stability range"), theorem=True)
    common(sub.add_parser("d2check", help="check that the differential squares to zero"))
    cat = sub.add_parser("catalog", help="list built-in manifolds")
    cat.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _default_imax(args, m):
    if args.imax is not None:
        return args.imax
    if args.command == "verify" and args.theorem == "rw":
        return args.kmax
    if args.command == "d2check":
        return 24
    return 2 * args.kmax + m.d


def _write_csv(rows, header, out):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    out.write(buf.getvalue())


def cmd_compute(args, out) -> int:
    m = resolve_manifold(args.manifold)
    table = compute_table(m, args.kmax, _default_imax(args, m), jobs=args.jobs, cap=args.cap)
    rows = list(table.records())
    if args.format == "json":
        out.write(json.dumps(rows) + "\n")
    else:
        _write_csv(rows, ["manifold", "k", "i", "betti"], out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    m = resolve_manifold(args.manifold)
    imax = _default_imax(args, m)
    even = True if args.assume_even_cohomology else None
    # fail on hypotheses before spending time on the table
    if args.theorem == "improved":
        check_improved_hypotheses(m, even)
    elif args.theorem == "optimal":
        check_optimality_hypotheses(m, even)
    table = compute_table(m, args.kmax, imax, jobs=args.jobs, cap=args.cap)
    if args.theorem == "rw":
        report = verify_rw_range(table)
    elif args.theorem == "improved":
        report = verify_improved_ranges(table, m, even)
    elif args.theorem == "optimal":
        report = verify_optimality(table, m, even)
    else:
        report = verify_eventual_constancy(table)
    out.write(json.dumps(report.to_dict()) + "\n")
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_d2check(args, out) -> int:
    m = resolve_manifold(args.manifold)
    gens = build_generators(m)
    imax = _default_imax(args, m)
    for k in range(args.kmax + 1):
        bad = d2_check(gens, k, range(imax + 1), cap=args.cap)
        if bad is not None:
            out.write(json.dumps({"manifold": m.name, "passed": False, "k": k, "monomial": str(bad)}) + "\n")
            return EXIT_VIOLATION
    out.write(json.dumps({"manifold": m.name, "passed": True, "kmax": args.kmax, "imax": imax}) + "\n")
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    rows = []
    for name in catalog_names():
        m = builtin_catalog(name)
        rows.append(
            {
                "name": name,
                "dim": m.d,
                "open": m.open,
                "orientable": m.orientable,
                "hc": " ".join(f"{p}:{r}" for p, r in sorted(m.hc_untwisted.items())),
            }
        )
    if args.format == "json":
        out.write(json.dumps(rows) + "\n")
    else:
        _write_csv(rows, ["name", "dim", "open", "orientable", "hc"], out)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "d2check": cmd_d2check, "catalog": cmd_catalog}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "jobs", None) is None and args.command != "catalog":
        args.jobs = os.cpu_count() or 1
    try:
        return COMMANDS[args.command](args, out)
    except WindowTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConfspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

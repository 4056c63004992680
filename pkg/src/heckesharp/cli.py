"""Command-line front end.

Exit codes: 0 success, 1 domain inconsistency or failed check, 2 parse or
usage error. Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .bernstein import structure_report
from .descriptor_io import load_descriptor
from .errors import DomainError, ParseError
from .suites import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_WINDOW, run_suites

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2
GREEN_TABLE_LIMIT = 64


def _descriptor(args):
    if getattr(args, "builtin", None):
        return catalog.builtin_descriptor(args.builtin)
    if not args.path:
        raise ParseError("$", "a descriptor path or --builtin NAME is required")
    try:
        return load_descriptor(args.path)
    except ParseError as exc:
        raise ParseError(f"{args.path}: {exc.path}", exc.message) from None


def cmd_analyze(args) -> int:
    report = structure_report(_descriptor(args))
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    desc = _descriptor(args)
    results = run_suites(desc, window=args.window, samples=args.samples, seed=args.seed)
    ok = all(r.passed for r in results)
    if args.format == "json":
        print(json.dumps({"passed": ok, "window": args.window, "samples": args.samples,
                          "seed": args.seed, "suites": [r.to_json() for r in results]}, indent=2))
    else:
        for r in results:
            print(r.line())
        print("all suites passed" if ok else "some suites FAILED")
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_catalog(args) -> int:
    names = catalog.entry_names() if args.all else [args.entry]
    results = [catalog.run_entry(n) for n in names]
    if args.format == "json":
        print(json.dumps([r.to_json() for r in results], indent=2))
    else:
        for r in results:
            print(r.to_text())
        counts = {}
        for r in results:
            counts[r.status] = counts.get(r.status, 0) + 1
        print("summary: " + ", ".join(f"{v} {k}" for k, v in counts.items()))
    return EXIT_OK if all(r.passed for r in results) else EXIT_DOMAIN


def cmd_green(args) -> int:
    try:
        report = catalog.green_report(args.q, args.d, args.m)
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if report["modulus"] <= GREEN_TABLE_LIMIT:
        report["table"] = catalog.green_table(args.q, args.d, args.m)
    if args.format == "json":
        print(json.dumps(report, indent=2))
        return EXIT_OK
    print(f"q = {args.q}, d = {args.d}, m = {args.m}: residues mod {report['modulus']}, "
          f"norm exponent N = {report['norm_exponent']}")
    if "table" in report:
        print("   k  orbit            kq   regular  twist  kq-outside-orbit  selected")
        for row in report["table"]:
            print(f"{row['k']:4d}  {str(row['orbit']):15s}  {row['kq']:4d}  {str(row['regular']):7s}  "
                  f"{str(row['twist']):5s}  {str(row['kq_outside_orbit']):16s}  {row['selected']}")
    print(f"verified solutions: {report['solutions']}")
    print(f"solutions with the untwisted congruence kq = k + N: {report['literal_solutions']}")
    print(f"Frobenius orbits: {report['orbits']}")
    if "claimed" in report:
        print(f"claimed solutions: {report['claimed']}")
        print(f"claimed but rejected: {report['claimed_but_rejected']}")
        for k, why in report["rejections"].items():
            print(f"  k = {k}: fails {', '.join(why['failed'])} (orbit {why['orbit']}, kq = {why['kq']})")
        print(f"found but not claimed: {report['found_but_not_claimed']}")
    print(f"search time: {report['seconds']:.6f} s")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="heckesharp",
        description="Finite-group, torus and Hecke-algebra data for inertial-class descriptors.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="print the structure report of a descriptor")
    a.add_argument("path", nargs="?", help="descriptor JSON file")
    a.add_argument("--builtin", metavar="NAME", help="use a catalog descriptor instead of a file")
    a.add_argument("--format", choices=["text", "json"], default="text")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run the property suites against a descriptor")
    v.add_argument("path", nargs="?", help="descriptor JSON file")
    v.add_argument("--builtin", metavar="NAME", help="use a catalog descriptor instead of a file")
    v.add_argument("--window", type=int, default=DEFAULT_WINDOW,
                   help="lattice coordinates are sampled from [-N, N] (default %(default)s)")
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                   help="random cases per suite (default %(default)s)")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED, help="default %(default)s")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", help="run catalog entries")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--entry", metavar="NAME")
    g.add_argument("--all", action="store_true")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.set_defaults(func=cmd_catalog)

    gr = sub.add_parser("green", help="search regular characters with a norm-twisted Frobenius")
    gr.add_argument("q", type=int)
    gr.add_argument("d", type=int)
    gr.add_argument("m", type=int)
    gr.add_argument("--format", choices=["text", "json"], default="text")
    gr.set_defaults(func=cmd_green)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "window", 0) < 0 or getattr(args, "samples", 0) < 0:
        print("error: --window and --samples must be non-negative", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

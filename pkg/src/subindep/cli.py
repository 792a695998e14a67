"""Command line front end.

Two subcommands: `decide` runs the staged pipeline on one subgroup pair,
`atlas` classifies every subgroup pair of a small symmetric group.

Exit codes for `decide`: 0 when the pair was decided either way, 2 when
the run ended inconclusive (budget), 1 for bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .atlas import MAX_ATLAS_DEGREE, classify_all_pairs, emit_report
from .groups import (
    DEFAULT_ENDO_BUDGET,
    DEFAULT_ISO_BUDGET,
    DEFAULT_MAX_GROUP_ORDER,
)
from .pipeline import Config, PairSpecError, decide, format_decision

EXIT_DECIDED = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; 2 means inconclusive here,
    so usage problems are remapped to exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subindep",
                     description="Decide independence of a pair of permutation subgroups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    dec = sub.add_parser("decide", help="classify one subgroup pair")
    src = dec.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE",
                     help="JSON pair spec {degree, A, B}; '-' reads stdin")
    src.add_argument("--inline", action="store_true",
                     help="build the pair from --degree/--a/--b flags")
    dec.add_argument("--degree", type=int, help="number of points acted on")
    dec.add_argument("--a", action="append", default=None, metavar="CYCLES",
                     help="generator of A in cycle notation (repeatable)")
    dec.add_argument("--b", action="append", default=None, metavar="CYCLES",
                     help="generator of B in cycle notation (repeatable)")
    dec.add_argument("--format", choices=("json", "text"), default="json")
    dec.add_argument("--max-group-order", type=int, default=DEFAULT_MAX_GROUP_ORDER)
    dec.add_argument("--endo-budget", type=int, default=DEFAULT_ENDO_BUDGET)
    dec.add_argument("--iso-budget", type=int, default=DEFAULT_ISO_BUDGET)
    dec.add_argument("--diagnostics", action="store_true",
                     help="recheck the witness and audit extension laws after deciding")
    dec.add_argument("--easier-first", action="store_true",
                     help="run the smaller subgroup's membership stage first")
    dec.add_argument("--jobs", type=int, default=1,
                     help="worker processes for the exhaustive stage")

    atl = sub.add_parser("atlas", help="classify all subgroup pairs of a symmetric group")
    atl.add_argument("--degree", type=int, required=True,
                     help=f"symmetric group degree, 2..{MAX_ATLAS_DEGREE}")
    atl.add_argument("--max-gens", type=int, default=2,
                     help="generators per enumerated subgroup")
    atl.add_argument("--full-lattice", action="store_true",
                     help="verify the enumeration reaches every subgroup (small groups only)")
    atl.add_argument("--out", metavar="FILE", required=True, help="report file to write")
    atl.add_argument("--format", choices=("csv", "json"), default="csv")
    atl.add_argument("--max-group-order", type=int, default=DEFAULT_MAX_GROUP_ORDER)
    atl.add_argument("--endo-budget", type=int, default=DEFAULT_ENDO_BUDGET)
    atl.add_argument("--jobs", type=int, default=1, help="worker processes, one row each")
    return parser


def _load_pair_spec(args) -> dict:
    if args.inline:
        if args.degree is None or not args.a or not args.b:
            raise PairSpecError("--inline requires --degree, at least one --a and one --b")
        return {"degree": args.degree, "A": args.a, "B": args.b}
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PairSpecError(f"input is not valid JSON: {exc}") from exc


def _cmd_decide(args) -> int:
    try:
        config = Config(max_group_order=args.max_group_order,
                        endo_budget=args.endo_budget,
                        iso_budget=args.iso_budget,
                        run_diagnostics=args.diagnostics,
                        output_format=args.format,
                        parallelism=args.jobs,
                        easier_first=args.easier_first)
        spec = _load_pair_spec(args)
        decision = decide(spec, config)
    except (PairSpecError, ValueError, OSError) as exc:
        print(f"subindep: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(format_decision(decision, args.format))
    return EXIT_DECIDED if decision.status != "Inconclusive" else EXIT_INCONCLUSIVE


def _cmd_atlas(args) -> int:
    try:
        config = Config(max_group_order=args.max_group_order,
                        endo_budget=args.endo_budget)
        t0 = time.perf_counter()
        rows, summary = classify_all_pairs(args.degree, config,
                                           max_gens=args.max_gens,
                                           full_lattice=args.full_lattice,
                                           jobs=args.jobs)
        emit_report(rows, summary, args.out, args.format)
        elapsed = time.perf_counter() - t0
    except (ValueError, OSError) as exc:
        print(f"subindep: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(json.dumps(summary, indent=2))
    print(f"wrote {len(rows)} rows to {args.out} in {elapsed:.1f}s", file=sys.stderr)
    return EXIT_DECIDED


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "decide":
        return _cmd_decide(args)
    return _cmd_atlas(args)


if __name__ == "__main__":
    sys.exit(main())

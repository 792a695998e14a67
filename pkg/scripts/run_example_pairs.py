#!/usr/bin/env python3
"""Run the bundled worked examples through the decision pipeline.

Five pairs exercise every interesting outcome: an early dependence from
an order violation, an independence that needs full enumeration, and a
dependence that only exhaustion finds (the pair passes every cheap
necessary check first). Handy as a smoke test after touching pipeline
order or witness formats.
"""

import argparse

from subindep.pipeline import Config, decide, format_decision

EXAMPLES = [
    ("two transpositions sharing a point",
     {"degree": 3, "A": ["(1 2)"], "B": ["(1 3)"]}),
    ("transposition against a three-cycle",
     {"degree": 3, "A": ["(1 2)"], "B": ["(1 2 3)"]}),
    ("transposition against a double swap",
     {"degree": 4, "A": ["(1 2)"], "B": ["(1 3)(2 4)"]}),
    ("two far transpositions against a double swap",
     {"degree": 6, "A": ["(1 2)", "(5 6)"], "B": ["(1 3)(2 4)"]}),
    ("swap pair against a four-cycle",
     {"degree": 4, "A": ["(1 2)", "(3 4)"], "B": ["(1 2 3 4)"]}),
]


def main() -> None:
    parser = argparse.ArgumentParser(
        description="Decide the bundled example pairs and print each verdict.")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--diagnostics", action="store_true",
                        help="recheck each witness and audit independents")
    args = parser.parse_args()

    config = Config(run_diagnostics=args.diagnostics)
    for label, spec in EXAMPLES:
        decision = decide(spec, config)
        print(f"== {label}: degree {spec['degree']}, "
              f"A = {spec['A']}, B = {spec['B']}")
        print(format_decision(decision, args.format))
        print()


if __name__ == "__main__":
    main()

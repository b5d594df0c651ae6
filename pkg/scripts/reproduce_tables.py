#!/usr/bin/env python3
"""Emit the six reference evaluation tables.

Three six-element datasets, each tabulated under integer addition and
positive-rational multiplication. The final row of every table is the
symmetric pairing, marked (#); it attains the smallest Max and the
largest Min.

    python scripts/reproduce_tables.py
    python scripts/reproduce_tables.py --format plain
"""

from __future__ import annotations

import argparse
import sys

from pairbound.cli import RunConfig, run

DATASETS = (
    (1, 2, 3, 4, 5, 6),
    (1, 3, 6, 8, 9, 11),
    (2, 7, 11, 14, 16, 17),
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--format", choices=["markdown", "json", "plain"], default="markdown"
    )
    args = parser.parse_args(argv)

    for elements in DATASETS:
        values = ",".join(str(v) for v in elements)
        for op in ("add", "mul"):
            status, document = run(
                RunConfig(
                    command="table", op=op, values=values, output_format=args.format
                )
            )
            if status != 0:
                print(document, file=sys.stderr)
                return status
            print(f"## {values} ({op})\n")
            print(document)
            print()
    return 0


if __name__ == "__main__":
    sys.exit(main())

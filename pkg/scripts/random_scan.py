#!/usr/bin/env python3
"""Randomized sweep: oracle agreement and certificate round-trips.

Draws random sorted multisets for one carrier, checks that the symmetric
matching agrees with the brute-force minimax/maximin oracle, and (with
--certify) transforms every matching of every input into a certificate
and re-verifies it. Exits non-zero on the first disagreement, which would
mean a broken carrier law or engine.

    python scripts/random_scan.py --carrier add --count 100 --n 5
    python scripts/random_scan.py --carrier lexadd --dim 3 --certify
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass

from pairbound import (
    BoundingInstance,
    Direction,
    enumerate_matchings,
    evaluate,
    exchange_transform,
    optimality_report,
    random_element,
    sort_input,
    strictly_greater,
    symmetric_matching,
    verify_certificate,
)
from pairbound.semigroup import carrier_from_token


@dataclass
class ScanConfig:
    carrier: str = "add"
    dim: int | None = None
    count: int = 50
    n: int = 4
    seed: int = 0
    span: int = 100
    certify: bool = False


def parse_args(argv=None) -> ScanConfig:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--carrier", choices=["add", "radd", "mul", "lexadd"],
                        default="add")
    parser.add_argument("--dim", type=int, default=None, help="dimension for lexadd")
    parser.add_argument("--count", type=int, default=50, help="number of random inputs")
    parser.add_argument("--n", type=int, default=4, help="pairs per input (2n elements)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--span", type=int, default=100, help="value magnitude range")
    parser.add_argument("--certify", action="store_true",
                        help="also round-trip a certificate for every matching")
    args = parser.parse_args(argv)
    if args.carrier == "lexadd" and args.dim is None:
        args.dim = 3
    return ScanConfig(**vars(args))


def main(argv=None) -> int:
    config = parse_args(argv)
    carrier = carrier_from_token(config.carrier, config.dim)
    rng = random.Random(config.seed)
    started = time.perf_counter()
    scanned = certificates = 0

    for index in range(config.count):
        input = sort_input(
            [random_element(carrier, rng, config.span) for _ in range(2 * config.n)]
        )
        report = optimality_report(input, cap=config.n)
        scanned += report.matchings_scanned
        if not report.passed:
            print(f"FAIL: oracle disagreement on input {index}: "
                  f"{[e.text() for e in input.elements]}", file=sys.stderr)
            return 1
        if config.certify:
            for matching in enumerate_matchings(config.n):
                row = evaluate(matching, input)
                inst = BoundingInstance(
                    input=input,
                    bound=strictly_greater(row.max_value),
                    direction=Direction.UPPER_STRICT,
                )
                certificate = exchange_transform(matching, inst)
                result = verify_certificate(certificate)
                if not result.ok or certificate.final != symmetric_matching(config.n):
                    print(f"FAIL: certificate rejected on input {index}: "
                          f"{result.reason}", file=sys.stderr)
                    return 1
                certificates += 1

    elapsed = time.perf_counter() - started
    print(f"PASS: {config.count} inputs ({carrier.describe()}, n={config.n}), "
          f"{scanned} matchings scanned, {certificates} certificates verified, "
          f"{elapsed:.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())

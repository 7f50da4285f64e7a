#!/usr/bin/env python3
"""Sweep the two-parameter rebalancer family for (1/2, 1/3, 1/6).

For every valid grid point (u, v) = (i/N, j/N) the script records the exact
squared Frobenius distance from P(u, v) to the nearest permutation matrix
and the resulting practical turnover.  The minimum of the distance column is
the scaling constant in the turnover lower bound; the scan shows where the
family attains it.

Usage:
    python3 scripts/scan_rebalance_family.py --grid 99 --out family.csv
"""

import argparse
import csv
import math
import sys
from fractions import Fraction

from naivediv.rebalancing import (
    example_family,
    min_permutation_distance_squared,
    turnover,
)
from naivediv.simplex import weight_vector

REFERENCE = weight_vector(["1/2", "1/3", "1/6"])


def scan(denominator: int):
    rows = []
    for i in range(denominator + 1):
        for j in range(denominator + 1):
            u = Fraction(i, denominator)
            v = Fraction(j, denominator)
            p = example_family(u, v)
            if p is None:
                continue
            dist_sq = min_permutation_distance_squared(p)
            rows.append((u, v, dist_sq))
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--grid",
        type=int,
        default=99,
        metavar="N",
        help="use the (N+1) x (N+1) grid i/N, j/N (default: 99)",
    )
    parser.add_argument("--out", help="write the full scan as CSV")
    args = parser.parse_args(argv)
    if args.grid < 1:
        parser.error("--grid must be at least 1")

    rows = scan(args.grid)
    tau = turnover(REFERENCE)

    best = min(rows, key=lambda r: r[2])
    u, v, dist_sq = best
    practical = float(tau) * math.sqrt(float(dist_sq))
    print(f"grid: {args.grid + 1} x {args.grid + 1}, valid members: {len(rows)}")
    print(f"theoretical turnover: {tau}")
    print(f"min squared distance to a permutation: {dist_sq} at (u, v) = ({u}, {v})")
    print(f"min practical turnover on the family: {practical:.12g}")

    if args.out:
        with open(args.out, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["u", "v", "dist_squared", "practical_turnover"])
            for u, v, dist_sq in rows:
                writer.writerow(
                    [u, v, dist_sq, float(tau) * math.sqrt(float(dist_sq))]
                )
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

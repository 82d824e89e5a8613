#!/usr/bin/env python3
"""Tabulate zero-angle distribution statistics over a list of weights.

Writes one CSV row per form: weight, count, star discrepancy, histogram.
Useful for eyeballing the equidistribution trend as k grows; discrepancy
should shrink roughly like 1/k along m=1 families.
"""

import argparse
import csv
import sys

from millerzeros.zeros import distribution_stats


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-list", default="120,240,480,960,1920",
                    help="comma separated weights")
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--bins", type=int, default=8)
    ap.add_argument("--out", default=None, help="CSV path (default stdout)")
    args = ap.parse_args()

    ks = [int(x) for x in args.k_list.split(",") if x]
    stats = distribution_stats([(k, args.m) for k in ks], bins=args.bins)

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(["k", "m", "count", "discrepancy"] +
                   [f"bin{i}" for i in range(args.bins)])
        for s in stats:
            w.writerow([s.k, s.m, s.count, repr(s.discrepancy)] + list(s.histogram))
    finally:
        if args.out:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Reproduce the distortion-bound table: per committee size, the proven bound,
the worst ratio observed over seeded random instances, and the certified
floor from the matching lower-bound family.

Usage: python scripts/reproduce_bounds_table.py [--instances 500] [--out table1.csv]
"""

import argparse
import sys

from polarline.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=500)
    parser.add_argument("--seeds", type=int, default=0)
    parser.add_argument("--out", default="table1.csv")
    args = parser.parse_args()
    return cli_main(
        [
            "bench",
            "--suite",
            "table1",
            "--instances",
            str(args.instances),
            "--seeds",
            str(args.seeds),
            "--out",
            args.out,
        ]
    )


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Hunt for high-distortion profiles: sample random elections, run a rule,
and compute the exact worst case over all consistent metrics for its output.

Usage: python scripts/adversarial_search.py --rule polar-k2 --count 50 [--n 3] [--m 4]
"""

import argparse
import sys

from polarline.distortion import adversarial_distortion
from polarline.generators import gen_random
from polarline.io_formats import decimal_truncate, format_scalar, serialize_profile
from polarline.ordering import pareto_dominated
from polarline.rules import rule_by_id


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rule", default="polar-k2")
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--m", type=int, default=4)
    parser.add_argument("--k", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rule = rule_by_id(args.rule)
    worst = None
    worst_profile = None
    seed = args.seed
    examined = 0
    while examined < args.count:
        seed += 1
        e, _ = gen_random(args.n, args.m, args.k, seed)
        if pareto_dominated(e, e.alternatives):
            continue
        examined += 1
        committee = rule(e)
        result = adversarial_distortion(e, committee, mode="exact")
        if worst is None or result.ratio > worst:
            worst, worst_profile = result.ratio, e
            print(
                f"seed {seed}: committee {sorted(committee)} "
                f"sup {format_scalar(result.ratio)} = {decimal_truncate(result.ratio, 8)}"
            )
    print("\nworst profile found:")
    print(serialize_profile(worst_profile))
    return 0


if __name__ == "__main__":
    sys.exit(main())

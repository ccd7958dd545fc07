"""Smallest margin of each finite check, per variant.

A compact view of how close each inequality comes to failing over its
verified k-range; the full reports come from ``kprim verify``.
"""

import argparse
from collections import defaultdict

from kprim.primes import sieve
from kprim.verify import asymptotic_leg_check, claim2_check, i_bound_check, strong_goal_check


def summarize(name, reports):
    worst = defaultdict(lambda: None)
    for r in reports:
        if r.passed is None:
            continue
        cur = worst[r.claim]
        if cur is None or r.margin < cur.margin:
            worst[r.claim] = r
    for claim, r in sorted(worst.items()):
        print(f"{name:<12} {claim:<34} k={r.k:<5} margin={r.margin:+.3e} "
              f"{'ok' if r.passed else 'FAIL'}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-to", type=int, default=1000)
    args = ap.parse_args()
    t = sieve(10**6)
    for v, first in (("main", 3), ("lcm", 2)):
        summarize(f"{v}/claim2", claim2_check(t, v, first, args.k_to))
        summarize(f"{v}/ibound", i_bound_check(t, v, first, 199))
        summarize(f"{v}/legs", asymptotic_leg_check(t, v, 200, args.k_to))
    summarize("strong/goal", strong_goal_check(t, 39, args.k_to))


if __name__ == "__main__":
    main()

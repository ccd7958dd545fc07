"""Where the main exponent schedule stops fitting under 3 log k / k.

Prints lam_main(k), 3 log k / k and their gap for k around the switch
from the product schedule to the strong schedule.
"""

import argparse
import math

from kprim.exponents import schedule
from kprim.primes import sieve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-to", type=int, default=45)
    args = ap.parse_args()
    s = schedule("main", sieve(10**4))
    print(f"{'k':>3} {'lam_main':>10} {'3logk/k':>10} {'gap':>10}")
    for k in range(2, args.k_to + 1):
        bound = 3 * math.log(k) / k
        gap = bound - s.lam(k)
        print(f"{k:>3} {s.lam(k):10.6f} {bound:10.6f} {gap:+10.6f}{'  <-' if gap < 0 else ''}")


if __name__ == "__main__":
    main()

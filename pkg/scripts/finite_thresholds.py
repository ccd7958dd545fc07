"""Finite-N critical exponents by exact search.

For each N, brackets the least lam at which the primes give the largest
sum n^-lam among all feasible subsets of [2..x] for every x <= N.
"""

import argparse
import csv
import sys
import time

from kprim.search import bracket_tau


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--variant", default="main", choices=["main", "lcm", "strong"])
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--tol", type=float, default=1e-3)
    args = ap.parse_args()
    w = csv.writer(sys.stdout)
    w.writerow(["N", "lo", "hi", "seconds"])
    for N in range(4, args.n_max + 1):
        t0 = time.perf_counter()
        lo, hi = bracket_tau(N, args.k, args.variant, args.tol)
        w.writerow([N, f"{lo:.4f}", f"{hi:.4f}", f"{time.perf_counter() - t0:.2f}"])


if __name__ == "__main__":
    main()

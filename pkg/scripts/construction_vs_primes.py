"""Large primes plus products of k+1 small primes, compared with the primes.

Reports, for several x and lam, the sum over the construction and over the
primes up to x. With k = 1 the construction loses at x = 10^4 and wins
from x = 10^5 on for every lam in the default grid. Add 10^7 to --xs for a
longer run (about a minute, spent in the exact primitivity check).
"""

import argparse

from kprim.primes import sieve
from kprim.search import cgs_construct


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--lams", type=float, nargs="+", default=[0.05, 0.1, 0.3, 0.5])
    ap.add_argument("--xs", type=int, nargs="+", default=[10**4, 10**5, 10**6])
    args = ap.parse_args()
    t = sieve(max(args.xs))
    for x in args.xs:
        _, rep = cgs_construct(x, args.k, t, tuple(args.lams), verify_limit=0)
        for c in rep["comparisons"]:
            print(f"x={x:<9} |S|={rep['selected_size']:<5} lam={c['lam']:<5} "
                  f"construction={c['construction_sum']:.4f} primes={c['prime_sum']:.4f} "
                  f"margin={c['margin']:+.4f}")


if __name__ == "__main__":
    main()

"""Slow, obviously-correct reference implementations used only by the tests."""

import itertools
import math
from functools import reduce


def naive_primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def _combos(others, j, notion):
    if notion == "strong":
        return itertools.combinations_with_replacement(others, j)
    return itertools.combinations(others, j)


def _target(combo, notion):
    if notion == "lcm":
        return reduce(math.lcm, combo, 1)
    return math.prod(combo)


def naive_violation(A, k, notion):
    """First (a, combo) with a | product/lcm(combo), combo drawn from A minus a."""
    A = sorted(set(A))
    for a in A:
        others = [b for b in A if b != a]
        for j in range(1, k + 1):
            for combo in _combos(others, j, notion):
                if _target(combo, notion) % a == 0:
                    return a, combo
    return None


def naive_is_primitive(A, k, notion):
    return naive_violation(A, k, notion) is None


def brute_max_weight(N, lam, k, notion):
    """Enumerate every feasible subset of [2..N] (incremental naive check)."""
    pool = list(range(2, N + 1))
    best = [0.0, ()]

    def rec(i, chosen, value):
        if value > best[0] + 1e-12:
            best[0], best[1] = value, tuple(chosen)
        for j in range(i, len(pool)):
            cand = chosen + [pool[j]]
            if naive_is_primitive(cand, k, notion):
                rec(j + 1, cand, value + pool[j] ** -lam)

    rec(0, [], 0.0)
    return best[0], best[1]

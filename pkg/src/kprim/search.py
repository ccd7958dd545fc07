"""Exact maximization of sum n^-lam over primitive subsets, and the CGS-style construction."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import ConsistencyError, DomainError
from .primes import PrimeTable
from .primitivity import (CandidateSet, FactoredInt, conflict_with, factor,
                          is_primitive_under)
from .report import Variant

NOTION_OF = {Variant.MAIN: "k", Variant.LCM: "lcm", Variant.STRONG: "strong"}
TIE_REL = 1e-12
DEFAULT_BUDGET = 10**7


def notion_for(variant) -> str:
    if isinstance(variant, str) and variant in ("k", "lcm", "strong"):
        return variant
    return NOTION_OF[Variant.parse(variant)]


@dataclass
class SearchResult:
    best_set: CandidateSet
    best_value: float
    prime_value: float
    optimal: bool
    nodes: int
    params: dict = field(default_factory=dict)

    @property
    def primes_win(self) -> bool:
        """No subset beats the primes (ties go to the primes)."""
        return self.best_value <= self.prime_value * (1 + TIE_REL) + TIE_REL

    def as_dict(self) -> dict:
        return {"params": self.params, "best_set": list(self.best_set.values),
                "best_value": self.best_value, "prime_value": self.prime_value,
                "optimal": self.optimal, "nodes": self.nodes}


class _Budget(Exception):
    pass


def max_weight_subset(pool, weights, k: int, notion: str, budget: int = DEFAULT_BUDGET,
                      incumbent=()):
    """Branch and bound for the heaviest feasible subset of ``pool``.

    Candidates are taken in order of decreasing weight (ties by value).
    A node's bound is its value plus the weight of every remaining candidate
    still compatible with the partial set; feasible families are closed
    under subsets, so incompatible candidates stay incompatible deeper down.
    Only strict improvements over the incumbent are accepted.

    Returns (best values, best weight, optimal, nodes).
    """
    order = sorted(range(len(pool)), key=lambda i: (-weights[i], pool[i]))
    cands: list[FactoredInt] = [factor(pool[i]) for i in order]
    w = [float(weights[i]) for i in order]
    wmap = dict(zip(pool, weights))
    best = [tuple(sorted(incumbent)), math.fsum(wmap[v] for v in incumbent)]
    nodes = 0

    def tol(v):
        return TIE_REL * max(1.0, abs(v))

    def dfs(value, chosen, compat):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget
        if value > best[1] + tol(best[1]):
            best[0] = tuple(sorted(c.n for c in chosen))
            best[1] = value
        if not compat:
            return
        if value + math.fsum(w[i] for i in compat) <= best[1] + tol(best[1]):
            return
        i, rest = compat[0], compat[1:]
        chosen.append(cands[i])
        keep = [j for j in rest if conflict_with(notion, chosen, cands[j], k) is None]
        dfs(value + w[i], chosen, keep)
        chosen.pop()
        dfs(value, chosen, rest)

    optimal = True
    try:
        dfs(0.0, [], list(range(len(cands))))
    except _Budget:
        optimal = False
    return best[0], best[1], optimal, min(nodes, budget)


def _primes_upto(n: int) -> list[int]:
    return [m for m in range(2, n + 1) if factor(m).is_prime]


def max_weighted_sum(N: int, lam: float, k: int, variant="main",
                     budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Maximum of sum n^-lam over subsets of [2..N] feasible for the variant's notion."""
    if N < 2:
        raise DomainError("N must be >= 2")
    if k < 1 or lam < 0:
        raise DomainError("need k >= 1 and lam >= 0")
    notion = notion_for(variant)
    pool = list(range(2, N + 1))
    weights = [n ** -lam for n in pool]
    primes = _primes_upto(N)
    prime_value = math.fsum(p ** -lam for p in primes)
    best, value, optimal, nodes = max_weight_subset(pool, weights, k, notion, budget,
                                                    incumbent=primes)
    params = {"N": N, "lam": lam, "k": k, "notion": notion, "budget": budget}
    return SearchResult(CandidateSet.of(best), value, prime_value, optimal, nodes, params)


def primes_maximal(N: int, lam: float, k: int, variant="main",
                   budget: int = DEFAULT_BUDGET) -> bool:
    """True iff the primes win at every truncation x in [2..N]."""
    for x in range(2, N + 1):
        res = max_weighted_sum(x, lam, k, variant, budget)
        if not res.optimal:
            raise ConsistencyError(f"search budget exhausted at x={x}, lam={lam}")
        if not res.primes_win:
            return False
    return True


def bracket_tau(N: int, k: int, variant="main", tol: float = 1e-3, lo: float = 0.0,
                hi: float = 2.0, grid: int = 8, budget: int = DEFAULT_BUDGET):
    """Bracket the finite-N critical exponent: least lam at which the primes win up to N.

    A coarse grid is scanned first; any winning grid point below a losing one
    contradicts monotonicity in lam and raises ConsistencyError. If the
    primes already win at ``lo`` the interval collapses to (lo, lo).
    """
    pts = [lo + (hi - lo) * i / grid for i in range(grid + 1)]
    marks = [primes_maximal(N, lam, k, variant, budget) for lam in pts]
    if any(a and not b for a, b in zip(marks, marks[1:])):
        raise ConsistencyError("predicate not monotone in lam", dict(zip(pts, marks)))
    if marks[0]:
        return (lo, lo)
    if not marks[-1]:
        raise ConsistencyError(f"primes do not win even at lam={hi}")
    j = marks.index(True)
    a, b = pts[j - 1], pts[j]
    while b - a > tol:
        mid = 0.5 * (a + b)
        if primes_maximal(N, mid, k, variant, budget):
            b = mid
        else:
            a = mid
    return (a, b)


def _iroot(x: int, n: int) -> int:
    """floor(x^(1/n))."""
    r = int(round(x ** (1 / n)))
    while r**n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def cgs_construct(x: int, k: int, table: PrimeTable, lams=(0.5,), notion: str = "k",
                  verify_limit: int = 50_000):
    """Primes in (x^(1/(k+1)), x] plus products of k+1 distinct primes <= x^(1/(k+1)).

    Products are taken in increasing order and kept only if the growing set
    stays feasible; selection stops at floor(x^(2/(k+1)) / (8 (k log x)^2)).
    The report gives both sides of the comparison against the primes for
    each lam in ``lams``; whether the construction wins at this x is
    recorded, not assumed.
    """
    if k < 1 or x < 2 ** (k + 1):
        raise DomainError("need k >= 1 and x >= 2^(k+1)")
    if x > 10**7:
        raise DomainError("x above 10^7")
    y = _iroot(x, k + 1)
    small = [p for p in table.upto(y).tolist()]
    big = table.primes[table.count_le(y): table.count_le(x)].tolist()
    target = math.floor(x ** (2 / (k + 1)) / (8 * (k * math.log(x)) ** 2))
    prods = sorted(math.prod(c) for c in itertools.combinations(small, k + 1)
                   if math.prod(c) <= x)
    chosen: list[FactoredInt] = []
    for n in prods:
        if len(chosen) >= target:
            break
        f = factor(n)
        if conflict_with(notion, chosen, f, k) is None:
            chosen.append(f)
    S = [c.n for c in chosen]
    members = sorted(S + big)
    A = CandidateSet.of(members) if len(members) <= verify_limit else None
    if A is not None:
        verified = is_primitive_under(notion, A, k, cap=None).result
    else:
        # big primes exceed every prime factor of S, so only S can conflict
        verified = is_primitive_under(notion, CandidateSet.of(S), k, cap=None).result
    if not verified:
        raise ConsistencyError("constructed set is not primitive", members)
    comparisons = []
    for lam in lams:
        big_sum = math.fsum(p ** -lam for p in big)
        s_sum = math.fsum(n ** -lam for n in S)
        display = big_sum + len(S) * x ** -lam
        small_sum = math.fsum(p ** -lam for p in small)
        rhs = big_sum + small_sum
        comparisons.append({"lam": lam, "construction_sum": big_sum + s_sum,
                            "display_lower": display, "prime_sum": rhs,
                            "margin": big_sum + s_sum - rhs,
                            "beats_primes": big_sum + s_sum > rhs})
    report = {"x": x, "k": k, "notion": notion, "root": y, "target_size": target,
              "selected": S, "selected_size": len(S), "partial": len(S) < target,
              "big_primes": len(big), "verified": bool(verified),
              "comparisons": comparisons}
    return (A if A is not None else members), report

"""Factorizations and exact predicates for k-primitive, strongly k-primitive and lcm k-primitive sets.

Divisibility of a product is decided on exponent vectors: a | m_1 ... m_j iff
v_p(a) <= sum_i v_p(m_i) for every prime p | a. For lcm the sum becomes a max.
Nothing here ever forms the product itself.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import DomainError, PreconditionError, SizeError

NOTIONS = ("k", "strong", "lcm")
DEFAULT_CAP = 64
FACTOR_MAX = 10**12


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    limit = math.isqrt(FACTOR_MAX) + 1
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(flags))


@dataclass(frozen=True, order=True)
class FactoredInt:
    n: int
    factors: tuple[tuple[int, int], ...] = field(compare=False)

    @property
    def P(self) -> int:
        """Largest prime factor."""
        return self.factors[-1][0]

    @property
    def Q(self) -> int:
        """Largest prime-power factor p^v_p(n)."""
        return max(p**e for p, e in self.factors)

    @property
    def omega(self) -> int:
        """Number of prime factors with multiplicity."""
        return sum(e for _, e in self.factors)

    @property
    def vec(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def v(self, p: int) -> int:
        return self.vec.get(p, 0)

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1


@lru_cache(maxsize=65536)
def factor(n: int) -> FactoredInt:
    """Trial division against cached primes up to 10^6."""
    n = int(n)
    if n <= 1:
        raise DomainError(f"can only factor integers > 1, got {n}")
    if n > FACTOR_MAX:
        raise DomainError(f"{n} exceeds factoring bound {FACTOR_MAX}")
    out = []
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        out.append((m, 1))
    return FactoredInt(n, tuple(out))


@dataclass(frozen=True)
class CandidateSet:
    members: tuple[FactoredInt, ...]

    def __post_init__(self):
        ns = [m.n for m in self.members]
        if any(a >= b for a, b in zip(ns, ns[1:])):
            raise DomainError("members must be distinct and sorted")

    @classmethod
    def of(cls, values: Iterable[int]) -> "CandidateSet":
        vals = sorted(int(v) for v in values)
        if len(set(vals)) != len(vals):
            raise DomainError("duplicate members")
        return cls(tuple(factor(v) for v in vals))

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(m.n for m in self.members)

    @property
    def support(self) -> frozenset[int]:
        """The primes dividing some member."""
        return frozenset(p for m in self.members for p, _ in m.factors)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, n) -> bool:
        return int(n) in self.values


@dataclass(frozen=True)
class Witness:
    """``target`` divides the product (or lcm) of ``helpers``."""

    notion: str
    target: int
    helpers: tuple[int, ...]

    def recheck(self) -> bool:
        if self.target in self.helpers and self.notion != "strong":
            return False
        if self.notion == "lcm":
            return math.lcm(*self.helpers) % self.target == 0
        return math.prod(self.helpers) % self.target == 0

    def as_dict(self) -> dict:
        return {"target": self.target, "helpers": list(self.helpers)}


@dataclass(frozen=True)
class PrimitivityResult:
    notion: str
    k: int
    result: bool | None  # None: refutation mode found nothing
    witness: Witness | None = None

    def as_dict(self) -> dict:
        return {"notion": self.notion, "k": self.k, "result": self.result,
                "witness": self.witness.as_dict() if self.witness else None}


def _cover(demand: dict[int, int], helpers: list[FactoredInt], budget: int, notion: str):
    """Find <= budget helpers meeting ``demand``; returns their values or None.

    Include/skip search over helpers in ascending order. ``strong`` may take
    a helper repeatedly; ``k`` and ``lcm`` take each at most once. Failed
    states are memoized on (index, budget, residual demand).
    """
    primes = sorted(demand)
    need0 = tuple(demand[p] for p in primes)
    vecs = [tuple(h.v(p) for p in primes) for h in helpers]
    n = len(vecs)
    # suffix maxima of each coordinate, for pruning
    suf = [tuple(0 for _ in primes)] * (n + 1)
    for i in range(n - 1, -1, -1):
        suf[i] = tuple(max(a, b) for a, b in zip(vecs[i], suf[i + 1]))
    failed = set()
    chosen: list[int] = []

    def feasible(i, b, need):
        mx = suf[i]
        for r, m in zip(need, mx):
            if r <= 0:
                continue
            if notion == "lcm":
                if m < r:
                    return False
            elif m * b < r:
                return False
        return True

    def go(i, b, need):
        if all(r <= 0 for r in need):
            return True
        if b == 0 or i == n:
            return False
        key = (i, b, need)
        if key in failed or not feasible(i, b, need):
            failed.add(key)
            return False
        vec = vecs[i]
        if notion == "lcm":
            nxt = tuple(0 if v >= r else r for v, r in zip(vec, need))
        else:
            nxt = tuple(max(r - v, 0) for v, r in zip(vec, need))
        if nxt != need:
            chosen.append(helpers[i].n)
            if go(i if notion == "strong" else i + 1, b - 1, nxt):
                return True
            chosen.pop()
        if go(i + 1, b, need):
            return True
        failed.add(key)
        return False

    return tuple(chosen) if go(0, budget, need0) else None


def _pad(helpers, others, k, notion):
    """Extend a witness to exactly k helpers (for the single-j definition)."""
    out = list(helpers)
    if notion == "strong":
        out += [out[0]] * (k - len(out))
        return tuple(out)
    for o in others:
        if len(out) >= k:
            break
        if o not in out:
            out.append(o)
    return tuple(out)


def _decide(A: CandidateSet, k: int, notion: str, cap: int | None, exact_j: bool,
            mode: str, trials: int, seed: int) -> PrimitivityResult:
    if notion not in NOTIONS:
        raise DomainError(f"unknown notion {notion!r}")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if mode == "refute":
        return _refute(A, k, notion, trials, seed)
    if cap is not None and len(A) > cap:
        raise SizeError(f"|A| = {len(A)} exceeds exact-check cap {cap}")
    if exact_j and len(A) - 1 < k and notion != "strong":
        return PrimitivityResult(notion, k, True)
    for a in A.members:
        ps = set(a.primes)
        helpers = [m for m in A.members if m.n != a.n and ps.intersection(m.primes)]
        found = _cover(a.vec, helpers, k, notion)
        if found is not None:
            if exact_j:
                others = [m.n for m in A.members if m.n != a.n]
                found = _pad(found, others, k, notion)
            return PrimitivityResult(notion, k, False, Witness(notion, a.n, found))
    return PrimitivityResult(notion, k, True)


def _refute(A, k, notion, trials, seed):
    rng = random.Random(seed)
    vals = A.values
    if len(vals) < 2:
        return PrimitivityResult(notion, k, None)
    for _ in range(trials):
        a = rng.choice(vals)
        others = [v for v in vals if v != a]
        j = rng.randint(1, min(k, len(others)) if notion != "strong" else k)
        if notion == "strong":
            pick = tuple(sorted(rng.choice(others) for _ in range(j)))
        else:
            pick = tuple(sorted(rng.sample(others, j)))
        w = Witness(notion, a, pick)
        if w.recheck():
            return PrimitivityResult(notion, k, False, w)
    return PrimitivityResult(notion, k, None)


def is_k_primitive(A: CandidateSet, k: int, *, cap: int | None = DEFAULT_CAP,
                   exact_j: bool = False, mode: str = "exact", trials: int = 10_000,
                   seed: int = 0) -> PrimitivityResult:
    """No member divides a product of j distinct other members, 1 <= j <= k.

    ``exact_j=True`` switches to the older definition that only forbids
    products of exactly k members; the two differ only when |A| <= k.
    """
    return _decide(A, k, "k", cap, exact_j, mode, trials, seed)


def is_strongly_k_primitive(A: CandidateSet, k: int, *, cap: int | None = DEFAULT_CAP,
                            mode: str = "exact", trials: int = 10_000,
                            seed: int = 0) -> PrimitivityResult:
    """No member divides a product of at most k other members, repetition allowed."""
    return _decide(A, k, "strong", cap, False, mode, trials, seed)


def is_lcm_k_primitive(A: CandidateSet, k: int, *, cap: int | None = DEFAULT_CAP,
                       exact_j: bool = False, mode: str = "exact", trials: int = 10_000,
                       seed: int = 0) -> PrimitivityResult:
    """No member divides the lcm of at most k distinct other members."""
    return _decide(A, k, "lcm", cap, exact_j, mode, trials, seed)


PREDICATES = {
    "k": is_k_primitive,
    "strong": is_strongly_k_primitive,
    "lcm": is_lcm_k_primitive,
}


def is_primitive_under(notion: str, A: CandidateSet, k: int, **kw) -> PrimitivityResult:
    try:
        pred = PREDICATES[notion]
    except KeyError:
        raise DomainError(f"unknown notion {notion!r}") from None
    return pred(A, k, **kw)


def conflict_with(notion: str, current: list[FactoredInt], new: FactoredInt, k: int):
    """Witness that adding ``new`` to a feasible set creates a violation, else None.

    Only violations involving ``new`` are searched: ``new`` as the divisor, or
    ``new`` among the helpers of an existing member.
    """
    ps = set(new.primes)
    helpers = [m for m in current if ps.intersection(m.primes)]
    found = _cover(new.vec, helpers, k, notion)
    if found is not None:
        return Witness(notion, new.n, found)
    for a in current:
        if not set(a.primes).intersection(ps):
            continue
        if notion == "lcm":
            residual = {p: e for p, e in a.factors if new.v(p) < e}
        else:
            residual = {p: e - new.v(p) for p, e in a.factors if e > new.v(p)}
        if not residual:
            return Witness(notion, a.n, (new.n,))
        if k == 1:
            continue
        aps = set(a.primes)
        others = [m for m in current if m.n != a.n and aps.intersection(m.primes)]
        if notion == "strong":
            # new may also appear repeatedly; extend helpers by it
            others = sorted(others + [new])
        rest = _cover(residual, others, k - 1, notion)
        if rest is not None:
            return Witness(notion, a.n, tuple(sorted((new.n,) + rest)))
    return None


@dataclass
class YSmallReport:
    k: int
    size: int
    support_size: int
    precondition_ok: bool
    card_bound_applies: bool
    card_bound_ok: bool | None
    assignment: dict[int, int]
    injective: bool | None
    sum_checks: dict[float, tuple[float, float, bool]]
    plus_one_applies: bool
    plus_one_ok: bool | None

    @property
    def ok(self) -> bool:
        if not self.precondition_ok:
            return False
        vals = [self.card_bound_ok, self.injective, self.plus_one_ok]
        vals += [c[2] for c in self.sum_checks.values()]
        return all(v is not False for v in vals)


def check_ysmall(A: CandidateSet, k: int, lams=(0.0, 0.5, 1.0),
                 cap: int | None = DEFAULT_CAP) -> YSmallReport:
    """Cardinality and weighted-sum conclusions for lcm k-primitive sets with small prime support."""
    if k < 2:
        raise DomainError("k must be >= 2")
    support = sorted(A.support)
    size, np_ = len(A), len(support)
    pre_ok = True
    if cap is None or size <= cap:
        pre_ok = is_lcm_k_primitive(A, k, cap=cap).result is True
    applies = np_ <= k
    assignment: dict[int, int] = {}
    injective = None
    sums = {}
    if applies:
        for n in A.members:
            for p, e in n.factors:
                if all(m.v(p) < e for m in A.members if m.n != n.n):
                    assignment[n.n] = p
                    break
        injective = (len(assignment) == size
                     and len(set(assignment.values())) == size)
        for lam in lams:
            lhs = math.fsum(m.n ** -lam for m in A.members)
            rhs = math.fsum(p ** -lam for p in support)
            sums[lam] = (lhs, rhs, lhs <= rhs * (1 + 1e-12))
    plus_one = k < np_ < 2 * k
    return YSmallReport(
        k=k, size=size, support_size=np_, precondition_ok=pre_ok,
        card_bound_applies=applies, card_bound_ok=(size <= np_) if applies else None,
        assignment=assignment, injective=injective, sum_checks=sums,
        plus_one_applies=plus_one, plus_one_ok=(size <= np_ + 1) if plus_one else None)

"""Block factorizations behind the smooth-count bounds, and the derived maps t -> f(t).

The derived-map operations re-verify every property the corresponding
lemma asserts; a failure raises ConsistencyError with the counterexample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DomainError, PreconditionError, SmoothnessError
from .primitivity import (DEFAULT_CAP, CandidateSet, FactoredInt, factor,
                          is_lcm_k_primitive, is_strongly_k_primitive)


@dataclass(frozen=True)
class BlockSplit:
    t: FactoredInt
    blocks: tuple[int, ...]

    @property
    def l(self) -> int:
        return len(self.blocks)


def _root_le(m: int, z, k: int) -> bool:
    """m <= z^(1/k), exactly."""
    return Fraction(m) ** k <= Fraction(z)


def _below_power(m: int, z, theta) -> bool:
    """m < z^theta; exact when theta is a Fraction and z is rational."""
    if isinstance(theta, Fraction):
        return Fraction(m) ** theta.denominator < Fraction(z) ** theta.numerator
    return m < z ** theta


def _greedy(parts: list[int], z, k: int) -> list[int]:
    blocks = []
    i = 0
    while i < len(parts):
        prod = parts[i]
        j = i + 1
        while j < len(parts) and _root_le(prod * parts[j], z, k):
            prod *= parts[j]
            j += 1
        if j < len(parts) and _root_le(prod, z, k):
            # product is still <= z^(1/k): take one more factor
            prod *= parts[j]
            j += 1
        blocks.append(prod)
        i = j
    return blocks


def _split(t: FactoredInt, z, k: int, theta: float, parts: list[int], coprime: bool) -> BlockSplit:
    if t.n > z:
        raise DomainError(f"t={t.n} exceeds z={z}")
    if not 0 < theta <= Fraction(1, k) + Fraction(1, 10**15):
        raise DomainError(f"theta must lie in (0, 1/k], got {theta}")
    blocks = (t.n,) if _root_le(t.n, z, k) else tuple(_greedy(parts, z, k))
    cap = z ** (1 / k + float(theta)) * (1 + 1e-12)
    if math.prod(blocks) != t.n or len(blocks) > k or max(blocks) > cap:
        raise ConsistencyError("block split violates its guarantees", (t.n, blocks))
    if coprime and any(math.gcd(a, b) > 1 for i, a in enumerate(blocks) for b in blocks[i + 1:]):
        raise ConsistencyError("blocks not pairwise coprime", (t.n, blocks))
    return BlockSplit(t, blocks)


def split_blocks_q(t: FactoredInt | int, z, k: int, theta: float) -> BlockSplit:
    """Group the prime powers of t, largest first, into at most k pairwise coprime blocks."""
    t = t if isinstance(t, FactoredInt) else factor(t)
    if not _below_power(t.Q, z, theta):
        raise SmoothnessError(f"Q({t.n}) = {t.Q} >= z^theta = {z ** theta:.6g}")
    parts = sorted((p**e for p, e in t.factors), reverse=True)
    return _split(t, z, k, theta, parts, coprime=True)


def split_blocks_p(t: FactoredInt | int, z, k: int, theta: float) -> BlockSplit:
    """Group the prime factors of t (with repetition), largest first, into at most k blocks."""
    t = t if isinstance(t, FactoredInt) else factor(t)
    if not _below_power(t.P, z, theta):
        raise SmoothnessError(f"P({t.n}) = {t.P} >= z^theta = {z ** theta:.6g}")
    parts = sorted((p for p, e in t.factors for _ in range(e)), reverse=True)
    return _split(t, z, k, theta, parts, coprime=False)


@dataclass(frozen=True)
class DerivedMapResult:
    t_prime: tuple[int, ...]
    t_dprime: tuple[int, ...]
    image: dict
    image_set: CandidateSet
    all_tp_ge2: bool = False

    def as_dict(self) -> dict:
        return {"T'": list(self.t_prime), "T''": list(self.t_dprime),
                "image": {str(a): b for a, b in self.image.items()},
                "all_tp_ge2": self.all_tp_ge2}


def _thin_primes(T: CandidateSet) -> list[int]:
    """Primes dividing exactly one member."""
    return sorted(p for p in T.support if sum(1 for m in T if p in m.primes) < 2)


def _check_composite(T: CandidateSet) -> None:
    primes = [m.n for m in T if m.is_prime]
    if primes:
        raise PreconditionError(f"members must be composite: {primes}")


def derive_map_lcm(T: CandidateSet, k: int, cap: int | None = DEFAULT_CAP) -> DerivedMapResult:
    """f(t) = Q(t) if Q(t) divides no other member, else t/Q(t).

    Checks that f is injective and f(T) is lcm (k-1)-primitive; when every
    prime of T divides at least two members, also that f(T') consists of
    pairwise coprime proper prime powers.
    """
    if k < 2:
        raise DomainError("k must be >= 2")
    _check_composite(T)
    if cap is None or len(T) <= cap:
        res = is_lcm_k_primitive(T, k, cap=cap)
        if not res.result:
            raise PreconditionError(f"T is not lcm {k}-primitive: {res.witness}")
    t1, t2, image = [], [], {}
    for t in T:
        q = t.Q
        if any(s.n % q == 0 for s in T if s.n != t.n):
            t2.append(t.n)
            image[t.n] = t.n // q
        else:
            t1.append(t.n)
            image[t.n] = q
    vals = list(image.values())
    if len(set(vals)) != len(vals) or 1 in vals:
        raise ConsistencyError("derived map is not injective", image)
    img = CandidateSet.of(vals)
    res = is_lcm_k_primitive(img, k - 1, cap=None)
    if not res.result:
        raise ConsistencyError(f"image not lcm {k - 1}-primitive: {res.witness}", image)
    tp2 = not _thin_primes(T)
    if tp2:
        qs = [factor(image[t]) for t in t1]
        if any(len(q.factors) != 1 or q.factors[0][1] < 2 for q in qs):
            raise ConsistencyError("f(T') has a member that is not a proper prime power", image)
        if len({q.P for q in qs}) != len(qs):
            raise ConsistencyError("f(T') members are not pairwise coprime", image)
    return DerivedMapResult(tuple(t1), tuple(t2), image, img, tp2)


def derive_map_strong(T: CandidateSet, k: int, cap: int | None = DEFAULT_CAP) -> DerivedMapResult:
    """f(t) = t/P(t); checks injectivity and strong (k-1)-primitivity of the image."""
    if k < 2:
        raise DomainError("k must be >= 2")
    _check_composite(T)
    thin = _thin_primes(T)
    if thin:
        raise PreconditionError(f"prime {thin[0]} divides fewer than two members")
    if cap is None or len(T) <= cap:
        res = is_strongly_k_primitive(T, k, cap=cap)
        if not res.result:
            raise PreconditionError(f"T is not strongly {k}-primitive: {res.witness}")
    image = {t.n: t.n // t.P for t in T}
    vals = list(image.values())
    if len(set(vals)) != len(vals):
        raise ConsistencyError("derived map is not injective", image)
    img = CandidateSet.of(vals)
    res = is_strongly_k_primitive(img, k - 1, cap=None)
    if not res.result:
        raise ConsistencyError(f"image not strongly {k - 1}-primitive: {res.witness}", image)
    return DerivedMapResult(tuple(T.values), (), image, img, True)

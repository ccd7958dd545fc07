"""Seeded property suites that exercise the lemmas on concrete finite sets (the ``lemma-lab``)."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .errors import ConsistencyError, PreconditionError
from .primitivity import (CandidateSet, check_ysmall, factor, is_lcm_k_primitive,
                          is_strongly_k_primitive)
from .search import max_weight_subset
from .structure import derive_map_lcm, derive_map_strong, split_blocks_p, split_blocks_q

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)
COMPOSITES = [n for n in range(4, 201) if not factor(n).is_prime]


def dominant_power_set(rng: random.Random, k: int, max_value: int = 10**9) -> list[int]:
    """Composites p_i^E_i * (other chosen primes), each prime used by >= 2 members.

    E_i exceeds k times any other member's exponent of p_i, so no k others
    (even with repetition) can supply p_i^E_i. Draws repeat until every
    member is at most ``max_value``.
    """
    while True:
        r = rng.randint(2, 4)
        ps = sorted(rng.sample(SMALL_PRIMES, r))
        side = {}
        for p in ps:
            others = [q for q in ps if q != p]
            side[p] = rng.sample(others, rng.randint(1, len(others)))
        # every prime must show up as a side factor somewhere
        for p in ps:
            if not any(p in side[q] for q in ps if q != p):
                side[rng.choice([q for q in ps if q != p])].append(p)
        side_exp = {p: {q: rng.randint(1, 2) for q in side[p]} for p in ps}
        out = []
        for p in ps:
            top = max([side_exp[q].get(p, 0) for q in ps if q != p] + [1])
            e = k * top + rng.randint(1, 2)
            out.append(p**e * math.prod(q**a for q, a in side_exp[p].items()))
        if max(out) <= max_value:
            return sorted(set(out))


def random_lcm_input(rng: random.Random):
    k = rng.choice((2, 3))
    for _ in range(1000):
        if rng.random() < 0.3:
            vals = dominant_power_set(rng, k)
        else:
            vals = rng.sample(COMPOSITES, rng.randint(1, 7))
        T = CandidateSet.of(vals)
        if is_lcm_k_primitive(T, k).result:
            return T, k
    raise RuntimeError("no lcm-primitive sample found")


def random_strong_input(rng: random.Random):
    k = rng.choice((2, 3))
    for _ in range(1000):
        T = CandidateSet.of(dominant_power_set(rng, k))
        if is_strongly_k_primitive(T, k).result:
            return T, k
    raise RuntimeError("no strongly primitive sample found")


def derived_map_suite(notion: str, trials: int = 500, seed: int = 0) -> dict:
    """Run derive_map_lcm / derive_map_strong on seeded valid inputs."""
    rng = random.Random(seed)
    gen, fn = ((random_lcm_input, derive_map_lcm) if notion == "lcm"
               else (random_strong_input, derive_map_strong))
    violations = []
    coprime_branch = 0
    for _ in range(trials):
        T, k = gen(rng)
        try:
            res = fn(T, k)
        except (ConsistencyError, PreconditionError) as e:
            violations.append({"T": list(T.values), "k": k, "error": str(e)})
            continue
        coprime_branch += res.all_tp_ge2
        # independent re-check of the image with the notion's predicate
        pred = is_lcm_k_primitive if notion == "lcm" else is_strongly_k_primitive
        if len(set(res.image.values())) != len(T) or not pred(res.image_set, k - 1).result:
            violations.append({"T": list(T.values), "k": k, "error": "image check"})
    return {"suite": f"derived_map_{notion}", "trials": trials, "seed": seed,
            "with_all_tp_ge2": coprime_branch, "violations": violations,
            "passed": not violations}


def block_split_suite(trials: int = 500, seed: int = 0) -> dict:
    rng = random.Random(seed)
    violations = []
    for _ in range(trials):
        k = rng.randint(2, 4)
        theta = Fraction(1, k)
        n = 0
        while not 1 < n <= 10**12:
            n = math.prod(rng.choice(SMALL_PRIMES) ** rng.randint(1, 3)
                          for _ in range(rng.randint(1, 5)))
        t = factor(n)
        for fn, big in ((split_blocks_q, t.Q), (split_blocks_p, t.P)):
            # smallest integer z >= t with big < z^theta
            z = max(t.n, big**k + 1)
            try:
                s = fn(t, z, k, theta)
            except ConsistencyError as e:
                violations.append({"t": t.n, "z": z, "k": k, "error": str(e)})
                continue
            if math.prod(s.blocks) != t.n:
                violations.append({"t": t.n, "z": z, "k": k, "error": "product"})
    return {"suite": "block_split", "trials": trials, "seed": seed,
            "violations": violations, "passed": not violations}


def smooth_count_suite(z_max: int = 200, ks=(2, 3)) -> dict:
    """Largest feasible set of smooth members up to z never exceeds z^(1/k + theta).

    lcm notion with Q(t) < t^theta, strong notion with P(t) < t^theta,
    theta = 1/k, every z in [2, z_max].
    """
    rows = []
    violations = []
    for k in ks:
        theta = 1 / k
        for notion, size in (("lcm", lambda f: f.Q), ("strong", lambda f: f.P)):
            smooth = [n for n in range(2, z_max + 1) if size(factor(n)) ** k < n]
            for z in range(2, z_max + 1):
                pool = [n for n in smooth if n <= z]
                bound = z ** (1 / k + theta)
                if len(pool) <= bound:
                    best = len(pool)
                else:
                    vals, best, optimal, _ = max_weight_subset(pool, [1.0] * len(pool), k, notion)
                    best = len(vals)
                    if not optimal:
                        violations.append({"k": k, "notion": notion, "z": z, "error": "budget"})
                if best > bound:
                    violations.append({"k": k, "notion": notion, "z": z, "N": best,
                                       "bound": bound})
            rows.append({"k": k, "notion": notion, "smooth_members": len(smooth)})
    return {"suite": "smooth_count", "z_max": z_max, "rows": rows,
            "violations": violations, "passed": not violations}


def _lcm_primitive_subsets(pool: list[int], k: int):
    """All nonempty lcm k-primitive subsets of ``pool`` (downward-closed enumeration)."""
    pool = sorted(pool)

    def grow(start, current):
        for i in range(start, len(pool)):
            cand = current + [pool[i]]
            if is_lcm_k_primitive(CandidateSet.of(cand), k, cap=None).result:
                yield cand
                yield from grow(i + 1, cand)

    yield from grow(0, [])


def ysmall_exhaustive(n_max: int = 50, ks=(2, 3), lams=(0.0, 0.5, 1.0)) -> dict:
    """Every lcm k-primitive subset of [2..n_max] with at most k support primes."""
    primes = [p for p in range(2, n_max + 1) if factor(p).is_prime]
    violations = []
    checked = 0
    for k in ks:
        for r in range(1, k + 1):
            for S in itertools.combinations(primes, r):
                pool = [n for n in range(2, n_max + 1) if set(factor(n).primes) <= set(S)]
                for A in _lcm_primitive_subsets(pool, k):
                    cs = CandidateSet.of(A)
                    if cs.support != frozenset(S):
                        continue
                    checked += 1
                    rep = check_ysmall(cs, k, lams, cap=None)
                    if not rep.ok:
                        violations.append({"A": A, "k": k})
    return {"suite": "ysmall", "n_max": n_max, "sets_checked": checked,
            "violations": violations, "passed": not violations}


def run_all(seed: int = 0, trials: int = 500) -> dict:
    from .verify import monotone_exponent_property

    suites = [
        block_split_suite(trials, seed),
        derived_map_suite("lcm", trials, seed),
        derived_map_suite("strong", trials, seed),
        smooth_count_suite(),
        ysmall_exhaustive(),
    ]
    mono = monotone_exponent_property(trials * 20, seed)
    suites.append({"suite": "monotone_exponent", **mono})
    return {"seed": seed, "suites": suites, "passed": all(s["passed"] for s in suites)}

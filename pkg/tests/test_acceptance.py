"""Acceptance gate: every criterion at its stated tolerance and time limit.

Each test records one PASS/FAIL line, shown in the terminal summary.
"""

import random
import time

import pytest

from kprim.analytic import erdos_constant, solve_tau1
from kprim.exponents import verify_lemma_primeineq
from kprim.lab import derived_map_suite, ysmall_exhaustive
from kprim.primes import check_log_sum_sandwich, sieve
from kprim.primitivity import CandidateSet, is_primitive_under
from kprim.search import max_weighted_sum
from kprim.verify import (asymptotic_leg_check, claim2_check, i_bound_check,
                          monotone_exponent_property, strong_goal_check)

from oracles import naive_is_primitive

pytestmark = pytest.mark.acceptance


def verdict(record, n, ok, elapsed, limit, detail):
    ok = ok and elapsed < limit
    bound = "no time limit" if limit == float("inf") else f"limit {limit:g}s"
    record(f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail} ({elapsed:.2f}s, {bound})")
    return ok


def failed(reports):
    return [r for r in reports if r.passed is False]


def test_01_tau1(record):
    t0 = time.perf_counter()
    tau = solve_tau1()
    dt = time.perf_counter() - t0
    assert verdict(record, 1, abs(tau - 1.1403) <= 5e-4, dt, 2, f"tau1 = {tau:.10f}")


def test_02_erdos_constant(record):
    t0 = time.perf_counter()
    c = erdos_constant()
    dt = time.perf_counter() - t0
    assert verdict(record, 2, 1.6356 <= c <= 1.6376, dt, 30, f"sum 1/(p log p) = {c:.10f}")


def test_03_prime_product_bounds(record):
    t0 = time.perf_counter()
    t = sieve(10**5)
    reps = verify_lemma_primeineq(t, len(t))
    dt = time.perf_counter() - t0
    direct = [r for r in reps if not r.claim.endswith("_rs") and "sandwich" not in r.claim]
    rs = [r for r in reps if r.claim.endswith("_rs")]
    ok = not failed(reps) and rs and max(r.k for r in direct) == len(t)
    assert verdict(record, 3, ok, dt, 10,
                   f"{len(reps)} reports to k={len(t)} ({len(rs)} closed-form), "
                   f"{len(failed(reps))} failures")


def test_04_log_sum_sandwich(record):
    t0 = time.perf_counter()
    t = sieve(10**5)
    reps = check_log_sum_sandwich(t, [41, 10**2, 10**3, 10**4, 10**5],
                                  [i / 10 for i in range(1, 10)])
    dt = time.perf_counter() - t0
    assert verdict(record, 4, len(reps) == 90 and not failed(reps), dt, 5,
                   f"{len(reps)} bound checks, {len(failed(reps))} failures")


@pytest.mark.parametrize("n,variant,first", [(5, "main", 3), (6, "lcm", 2)])
def test_05_06_claim2(record, n, variant, first):
    t0 = time.perf_counter()
    t = sieve(10**6)
    reps = claim2_check(t, variant, first, 1000)
    dt = time.perf_counter() - t0
    ks = sorted({r.k for r in reps})
    ok = ks == list(range(first, 1001)) and all(r.passed for r in reps)
    assert verdict(record, n, ok, dt, 5,
                   f"{variant}: S(p_k) negative for {first}<=k<=199 and below the "
                   f"margin for 200<=k<=1000, {len(failed(reps))} failures")


def test_07_i_bound(record):
    t0 = time.perf_counter()
    t = sieve(10**6)
    reps = i_bound_check(t, "main", 3, 199) + i_bound_check(t, "lcm", 2, 199)
    reps += asymptotic_leg_check(t, "main", 200, 1000) + asymptotic_leg_check(t, "lcm", 200, 1000)
    dt = time.perf_counter() - t0
    assert verdict(record, 7, not failed(reps), dt, 60,
                   f"I_lam < 0 for main 3..199, lcm 2..199 plus legs to 1000; "
                   f"{len(failed(reps))} failures")


def test_08_strong_chain(record):
    t0 = time.perf_counter()
    t = sieve(10**6)
    reps = strong_goal_check(t, 39, 1000)
    dt = time.perf_counter() - t0
    goal = [r for r in reps if r.claim.startswith("goal")]
    ok = len(goal) == 962 and all(r.passed for r in reps)
    assert verdict(record, 8, ok, dt, 10,
                   f"{len(reps)} reports ({len(goal)} direct), {len(failed(reps))} failures")


def test_09_oracle_equivalence(record):
    t0 = time.perf_counter()
    rng = random.Random(9)
    mismatches = []
    for _ in range(1000):
        vals = rng.sample(range(2, 61), rng.randint(1, 7))
        k = rng.randint(1, 3)
        A = CandidateSet.of(vals)
        for notion in ("k", "strong", "lcm"):
            if is_primitive_under(notion, A, k).result != naive_is_primitive(vals, k, notion):
                mismatches.append((notion, k, sorted(vals)))
    dt = time.perf_counter() - t0
    assert verdict(record, 9, not mismatches, dt, float("inf"),
                   f"3000 predicate calls, {len(mismatches)} mismatches")


def test_10_exact_search(record):
    t0 = time.perf_counter()
    bad = []
    primes = lambda N: tuple(p for p in range(2, N + 1)
                             if all(p % d for d in range(2, p)))
    for N in range(2, 31):
        r = max_weighted_sum(N, 1.2, 1, "main")
        if not (r.optimal and r.primes_win and r.best_set.values == primes(N)):
            bad.append(("1.2", N))
    for N in range(2, 25):
        r = max_weighted_sum(N, 0.8, 2, "main")
        if not (r.optimal and r.primes_win and r.best_value == pytest.approx(r.prime_value)):
            bad.append(("0.8", N))
    dt = time.perf_counter() - t0
    assert verdict(record, 10, not bad, dt, 300,
                   f"primes optimal for N<=30 (lam 1.2, k 1) and N<=24 (lam 0.8, k 2); "
                   f"bad cases {bad}")


def test_11_small_support(record):
    t0 = time.perf_counter()
    rep = ysmall_exhaustive(50, ks=(2, 3), lams=(0.0, 0.5, 1.0))
    dt = time.perf_counter() - t0
    assert verdict(record, 11, rep["passed"] and rep["sets_checked"] > 0, dt, float("inf"),
                   f"{rep['sets_checked']} lcm-primitive subsets of [2..50], "
                   f"{len(rep['violations'])} violations")


def test_12_derived_maps(record):
    t0 = time.perf_counter()
    reps = [derived_map_suite(n, 500, seed=12) for n in ("lcm", "strong")]
    dt = time.perf_counter() - t0
    nviol = sum(len(r["violations"]) for r in reps)
    assert verdict(record, 12, all(r["passed"] for r in reps), dt, float("inf"),
                   f"500 lcm + 500 strong trials, {nviol} violations")


def test_13_monotone_exponent(record):
    t0 = time.perf_counter()
    rep = monotone_exponent_property(10_000, seed=1)
    dt = time.perf_counter() - t0
    assert verdict(record, 13, rep["passed"], dt, float("inf"),
                   f"{rep['trials']} trials ({rep['hypothesis_held']} meet the hypothesis), "
                   f"{len(rep['counterexamples'])} counterexamples")

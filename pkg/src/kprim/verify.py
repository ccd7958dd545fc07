"""Finite numeric checks for the main, lcm and strong exponent schedules."""

from __future__ import annotations

import math
import random

import numpy as np

from .errors import DomainError, InapplicableError
from .exponents import ExponentSchedule, schedule
from .primes import PrimeTable, nth_prime, prime_power_sum
from .report import MarginReport, Variant, check, check_log

# Claim-2 style margin c/log p_k from k = 200 on, and the constant in
# lam - 1/k - theta > c/log p_k used for the tail.
ASYMPTOTIC_FROM = 200
CLAIM2_MARGIN = {Variant.MAIN: 0.015, Variant.LCM: 0.035}
TAIL_RATE = {Variant.MAIN: 1.4, Variant.LCM: 1.6}
FIRST_K = {Variant.MAIN: 3, Variant.LCM: 2}
STRONG_FROM = 39


def _ml_variant(variant) -> Variant:
    v = Variant.parse(variant)
    if v is Variant.STRONG:
        raise DomainError("this check exists for the main and lcm variants only")
    return v


def s_of_y(t: PrimeTable, Y: float, lam: float, lam_prime: float) -> float:
    """S(Y) = sum_{p<=Y} ((p^-2lam - p^-2lam') - (p^-lam - p^-lam'))."""
    if not 0 < lam <= lam_prime:
        raise DomainError(f"need 0 < lam <= lam', got {lam}, {lam_prime}")
    logp = t.log_primes[: t.count_le(Y)]
    y = np.exp(-lam_prime * logp)
    z = np.exp(-lam * logp)
    return math.fsum((z * z - y * y) - (z - y))


def s_of_y_split(t: PrimeTable, Y: float, lam: float, lam_prime: float) -> float:
    """S(Y) as a combination of four prime power sums (cross-check route)."""
    return (prime_power_sum(t, Y, 2 * lam) - prime_power_sum(t, Y, 2 * lam_prime)
            - prime_power_sum(t, Y, lam) + prime_power_sum(t, Y, lam_prime))


def claim1_check(t: PrimeTable, k: int, j_max: int, variant="main") -> list[MarginReport]:
    """p_k^-lam_k <= 1/3, and S(p_j) strictly decreasing for k <= j < j_max."""
    v = _ml_variant(variant)
    sched = schedule(v, t)
    lam, lam_p = sched.lam(k), sched.lam(k - 1)
    pk = nth_prime(t, k)
    out = [check("term_condition", pk ** -lam, "<=", 1 / 3, k=k, variant=v,
                 applicable=k >= FIRST_K[v],
                 terms={"p_k": pk, "lam": lam, "p_k^-lam": pk ** -lam},
                 claim_ref="p^-lam <= 1/3 for p >= p_k")]
    prev = s_of_y(t, pk, lam, lam_p)
    for j in range(k, j_max):
        nxt = s_of_y(t, nth_prime(t, j + 1), lam, lam_p)
        out.append(check("S_decreasing", nxt, "<", prev, k=k, variant=v,
                         terms={"j": j, "S(p_j)": prev, "S(p_j+1)": nxt},
                         claim_ref="S(p_j) decreasing for j >= k"))
        prev = nxt
    return out


def claim2_check(t: PrimeTable, variant="main", k_from: int | None = None,
                 k_to: int = 1000) -> list[MarginReport]:
    """S(p_k) < 0 below k = 200 and S(p_k) < -c/log p_k from there on."""
    v = _ml_variant(variant)
    sched = schedule(v, t)
    out = []
    for k in range(k_from or FIRST_K[v], k_to + 1):
        lam, lam_p = sched.lam(k), sched.lam(k - 1)
        pk = nth_prime(t, k)
        s = s_of_y(t, pk, lam, lam_p)
        terms = {"p_k": pk, "lam": lam, "lam_prime": lam_p, "S(p_k)": s}
        if k < ASYMPTOTIC_FROM:
            out.append(check("S(p_k)<0", s, "<", 0.0, k=k, variant=v, terms=terms,
                             claim_ref="S(p_k) < 0, direct check below k = 200"))
        else:
            bound = -CLAIM2_MARGIN[v] / math.log(pk)
            out.append(check("S(p_k)<-c/log p_k", s, "<", bound, k=k, variant=v,
                             terms={**terms, "bound": bound},
                             claim_ref=f"S(p_k) < -{CLAIM2_MARGIN[v]}/log p_k, k >= 200"))
    return out


def _tail_parts(k: int, variant: Variant, sched: ExponentSchedule, t: PrimeTable):
    """(ratio lam/(lam-1/k-theta), exponent, log of base prime) of the closed-form tail."""
    lam, theta, nu = sched.lam(k), sched.theta(k), sched.nu(k)
    gap = lam - 1 / k - theta
    if gap <= 0:
        raise InapplicableError(f"lam - 1/k - theta = {gap:.4g} <= 0 at k={k}")
    if variant is Variant.STRONG:
        base = nth_prime(t, k + 1)
    else:
        base = nth_prime(t, nu + 1)
    return lam / gap, nu * gap, math.log(base)


def strong_small_sum(k: int, sched: ExponentSchedule, t: PrimeTable) -> float:
    """sum_{j<=k} p_j^-(nu lam): at most j members of T_0 lie below p_{j+1}^nu."""
    e = sched.nu(k) * sched.lam(k)
    return math.fsum(np.exp(-e * t.log_primes[:k]))


def log_smooth_tail(k: int, variant, sched: ExponentSchedule, t: PrimeTable) -> float:
    """Log of the closed-form tail lam/(lam-1/k-theta) * base^-(nu (lam-1/k-theta))."""
    ratio, expo, logb = _tail_parts(k, Variant.parse(variant), sched, t)
    return math.log(ratio) - expo * logb


def smooth_tail_term(k: int, variant, sched: ExponentSchedule, t: PrimeTable) -> float:
    """Bound on the sum of t^-lam over smooth members.

    main/lcm: base p_{nu+1}; strong: base p_{k+1} plus the small-member sum.
    """
    v = Variant.parse(variant)
    val = math.exp(log_smooth_tail(k, v, sched, t))
    if v is Variant.STRONG:
        val += strong_small_sum(k, sched, t)
    return val


def i_bound_check(t: PrimeTable, variant="main", k_from: int | None = None,
                  k_to: int = 199) -> list[MarginReport]:
    """tail + S(p_{nu+1}) < 0: the worst case Y = p_{nu+1}."""
    v = _ml_variant(variant)
    sched = schedule(v, t)
    out = []
    for k in range(k_from or FIRST_K[v], k_to + 1):
        lam, lam_p, nu = sched.lam(k), sched.lam(k - 1), sched.nu(k)
        tail = smooth_tail_term(k, v, sched, t)
        y = nth_prime(t, nu + 1)
        s = s_of_y(t, y, lam, lam_p)
        out.append(check("I_bound<0", tail + s, "<", 0.0, k=k, variant=v,
                         terms={"lam": lam, "theta": sched.theta(k), "nu": nu,
                                "Y=p_{nu+1}": y, "tail": tail, "S(Y)": s},
                         claim_ref="I_lam < tail + S(Y) < 0 at Y = p_{nu+1}"))
    return out


def tail_dominates(variant, p: int) -> MarginReport:
    """1.05 e^(-c p) < margin/log p, compared in log space."""
    v = _ml_variant(variant)
    lhs = math.log(1.05) - TAIL_RATE[v] * p
    rhs = math.log(CLAIM2_MARGIN[v] / math.log(p))
    return check("tail<claim2_margin[log]", lhs, "<", rhs, variant=v,
                 terms={"p_k": p, "log(1.05e^{-c p_k})": lhs, "log(margin/log p_k)": rhs},
                 claim_ref="1.05 e^{-c p_k} < margin/log p_k")


def asymptotic_leg_check(t: PrimeTable, variant="main", k_from: int = ASYMPTOTIC_FROM,
                         k_to: int = 1000) -> list[MarginReport]:
    """The closed-form inequalities that dispose of k >= 200."""
    v = _ml_variant(variant)
    if k_from < ASYMPTOTIC_FROM:
        raise DomainError("asymptotic leg starts at k = 200")
    sched = schedule(v, t)
    c = TAIL_RATE[v]
    out = []
    for k in range(k_from, k_to + 1):
        lam, theta, nu = sched.lam(k), sched.theta(k), sched.nu(k)
        pk = nth_prime(t, k)
        lpk = math.log(pk)
        gap = lam - 1 / k - theta
        base = {"p_k": pk, "lam": lam, "theta": theta}
        out.append(check("gap>c/log p_k", gap, ">", c / lpk, k=k, variant=v,
                         terms={**base, "gap": gap, "c/log p_k": c / lpk},
                         claim_ref=f"lam - 1/k - theta > {c}/log p_k"))
        out.append(check("ratio<1.05", lam / gap, "<", 1.05, k=k, variant=v,
                         terms={**base, "gap": gap}, claim_ref="lam/(lam-1/k-theta) < 1.05"))
        log_tail = log_smooth_tail(k, v, sched, t)
        log_p_nu1 = math.log(nth_prime(t, nu + 1))
        step1 = math.log(1.05) - c * pk / lpk * log_p_nu1
        step2 = math.log(1.05) - c * pk
        out.append(check("tail<1.05*p_{nu+1}^{-c p_k/log p_k}[log]", log_tail, "<", step1,
                         k=k, variant=v, terms={"log_tail": log_tail, "log_bound": step1},
                         claim_ref="tail < 1.05 p_{p_k+1}^{-c p_k/log p_k}"))
        out.append(check("1.05*p_{nu+1}^{..}<1.05e^{-c p_k}[log]", step1, "<", step2, k=k,
                         variant=v, terms={"log_lhs": step1, "log_rhs": step2},
                         claim_ref="p_{p_k+1} > p_k"))
        dom = tail_dominates(v, pk)
        dom.k = k
        out.append(dom)
    return out


def strong_goal_check(t: PrimeTable, k_from: int = STRONG_FROM,
                      k_to: int = 1000) -> list[MarginReport]:
    """Both sides of the strong-variant goal inequality and every step of its bound chain."""
    if k_from < STRONG_FROM:
        raise DomainError("strong goal inequality is claimed from k = 39")
    sched = schedule(Variant.STRONG, t)
    v = Variant.STRONG
    out = []

    def add(name, lhs, rel, rhs, k, ref, log=False, **terms):
        fn = check_log if log else check
        out.append(fn(name, lhs, rel, rhs, k=k, variant=v, terms=terms, claim_ref=ref))

    for k in range(k_from, k_to + 1):
        lam, lam_p = sched.lam(k), sched.lam(k - 1)
        theta, nu = sched.theta(k), sched.nu(k)
        gap = lam - 1 / k - theta
        logk = math.log(k)
        pk, pk1 = nth_prime(t, k), nth_prime(t, k + 1)
        small = strong_small_sum(k, sched, t)
        ratio = lam / gap
        tail = ratio * pk1 ** (-nu * gap)
        left = small + tail
        right = lam_p * theta * pk1 ** (1 - lam_p) * (1 - 1 / math.log(pk1))
        add("goal", left, "<", right, k, "goal inequality, direct", small=small, tail=tail)

        add("nu>k", nu, ">", k, k, "nu > k")
        add("nu*lam>3logk", nu * lam, ">", 3 * logk, k, "nu lam > 3 log k")
        chain = 2 ** (-3 * logk) + (k - 1) * 3 ** (-3 * logk)
        add("small<2^-3logk+(k-1)3^-3logk", small, "<", chain, k, "small-member sum", log=True)
        add("2^-3logk+(k-1)3^-3logk<2/k^2", chain, "<", 2 / k**2, k,
            "k^-2 + k k^-3 = 2k^-2", log=True)
        add("nu*gap>3logk-2", nu * gap, ">", 3 * logk - 2, k, "tail exponent")
        add("ratio<1.23", ratio, "<", 1.23, k, "lam/(lam-1/k-theta) < 1.23")
        tail_chain = 1.23 * pk1 ** (-(3 * logk - 2))
        add("tail<1.23p_{k+1}^-(3logk-2)", tail, "<", tail_chain, k, "tail bound", log=True)
        add("1.23p_{k+1}^-(3logk-2)<k^-2", tail_chain, "<", k**-2, k, "tail below k^-2",
            log=True)
        add("left<3/k^2", left, "<", 3 / k**2, k, "left side < 3k^-2", log=True)
        add("lam'theta>2logk/k^2", lam_p * theta, ">", 2 * logk / k**2, k, "lam' theta bound",
            log=True)
        add("p_{k+1}^lam'<4.4", pk1 ** lam_p, "<", 4.4, k, "p_{k+1}^lam' < 4.4")
        add("1-1/log p_{k+1}>0.79", 1 - 1 / math.log(pk1), ">", 0.79, k, "log factor")
        bound = 0.36 * pk1 * logk / k**2
        add("right>0.36p_{k+1}logk/k^2", right, ">", bound, k, "right side lower bound",
            log=True)
        add("p_{k+1}>p_k", pk1, ">", pk, k, "p_{k+1} > p_k")
        add("p_k>klogk", pk, ">", k * logk, k, "p_k > k log k")
        add("0.36p_{k+1}logk/k^2>0.36log^2k/k", bound, ">", 0.36 * logk**2 / k, k,
            "via p_{k+1} > k log k", log=True)
        add("3/k^2<0.36log^2k/k", 3 / k**2, "<", 0.36 * logk**2 / k, k, "closing step",
            log=True)
    return out


def strong_nu_audit(t: PrimeTable, k_from: int = STRONG_FROM,
                    k_to: int = 1000) -> list[MarginReport]:
    """Audit of the displayed estimate nu > k log(k-1)/(log(k-1) - 1) > k.

    Only nu > k is used downstream (and is checked by strong_goal_check).
    The middle estimate is reported separately because it does not hold:
    1/theta has denominator log k - k log(k/(k-1)), which exceeds
    log(k-1) - 1.
    """
    sched = schedule(Variant.STRONG, t)
    out = []
    for k in range(k_from, k_to + 1):
        nu = sched.nu(k)
        mid = k * math.log(k - 1) / (math.log(k - 1) - 1)
        out.append(check("nu>klog(k-1)/(log(k-1)-1)", nu, ">", mid, k=k, variant=Variant.STRONG,
                         terms={"nu": nu, "estimate": mid},
                         claim_ref="displayed estimate for nu (audit only)"))
        out.append(check("klog(k-1)/(log(k-1)-1)>k", mid, ">", k, k=k, variant=Variant.STRONG,
                         terms={"estimate": mid}, claim_ref="estimate exceeds k"))
    return out


def prefix_differences(A, B, lam: float) -> list[float]:
    """I_lam(x) at every breakpoint x in A u B (enough: I is a step function)."""
    pts = sorted(set(A) | set(B))
    out = []
    for x in pts:
        sa = math.fsum(a ** -lam for a in A if a <= x)
        sb = math.fsum(b ** -lam for b in B if b <= x)
        out.append(sa - sb)
    return out


def _draw_pair(rng: random.Random):
    B = rng.sample(range(2, 201), rng.randint(1, 6))
    mode = rng.randrange(3)
    if mode == 0:
        A = rng.sample(range(2, 201), rng.randint(1, 6))
    elif mode == 1:
        # fewer but smaller members: the hypothesis holds only for large lam
        lo = min(B)
        A = rng.sample(range(2, lo + 1), min(lo - 1, rng.randint(1, len(B))))
    else:
        A = sorted({max(2, b - rng.randint(0, 5)) for b in B})
        if len(A) > 1 and rng.random() < 0.5:
            A.pop(rng.randrange(len(A)))
    return sorted(A), sorted(B)


def monotone_exponent_property(trials: int = 10_000, seed: int = 1,
                               tol: float = 1e-12) -> dict:
    """If I_lam(x) >= 0 at every x, then I_lam'(x) >= 0 at every x for lam' > lam."""
    rng = random.Random(seed)
    held = 0
    bad = []
    for _ in range(trials):
        A, B = _draw_pair(rng)
        lam = rng.uniform(0, 2)
        if min(prefix_differences(A, B, lam)) < 0:
            continue
        held += 1
        for _ in range(3):
            lam2 = lam + rng.uniform(0, 2)
            worst = min(prefix_differences(A, B, lam2))
            if worst < -tol:
                bad.append({"A": A, "B": B, "lam": lam, "lam_prime": lam2, "min_I": worst})
    return {"trials": trials, "seed": seed, "hypothesis_held": held,
            "counterexamples": bad, "passed": not bad}

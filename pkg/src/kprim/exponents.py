"""Exponent schedules for the three primitivity notions and the prime-product bounds on them."""

from __future__ import annotations

import math
from fractions import Fraction

from .analytic import EULER_GAMMA
from .errors import DomainError
from .primes import PrimeTable, nth_prime
from .report import MarginReport, Variant, check

MAIN_SCALE = 2.625
LCM_SCALE = 3.0
DIRECT_RANGE = 2000  # p_k up to here is checked by direct products


class ExponentSchedule:
    """Lazily evaluated lam(k), theta(k), nu(k) for one variant.

    main:   lam = 1.2, 0.8, then 2.625 prod_{i<=k}(1 - 1/p_i); theta_3 = 1/8
    lcm:    lam = 8/7, then 3 prod_{i<=k}(1 - 1/p_i); theta_2 = 1/8
    strong: lam = 3 log k / k; theta = 1 - lam(k)/lam(k-1)

    For main and lcm, theta_k = 1/p_k away from the special index and
    nu_k = 1/theta_k is returned as the exact integer p_k (or 8).
    """

    def __init__(self, variant, table: PrimeTable):
        self.variant = Variant.parse(variant)
        self.table = table
        self._lam: dict[int, float] = {}
        self._mertens = [1.0]  # prod_{i<=k}(1 - 1/p_i), index k

    def mertens(self, k: int) -> float:
        while len(self._mertens) <= k:
            j = len(self._mertens)
            self._mertens.append(self._mertens[-1] * (1 - 1 / nth_prime(self.table, j)))
        return self._mertens[k]

    @property
    def special_index(self) -> int | None:
        return {Variant.MAIN: 3, Variant.LCM: 2}.get(self.variant)

    def lam(self, k: int) -> float:
        if k in self._lam:
            return self._lam[k]
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        v = self.variant
        if v is Variant.MAIN:
            val = {1: 1.2, 2: 0.8}.get(k) or MAIN_SCALE * self.mertens(k)
        elif v is Variant.LCM:
            val = 8 / 7 if k == 1 else LCM_SCALE * self.mertens(k)
        else:
            if k < 2:
                raise DomainError("strong schedule starts at k = 2")
            val = 3 * math.log(k) / k
        self._lam[k] = val
        return val

    def theta(self, k: int) -> float:
        if self.variant is Variant.STRONG:
            if k < 3:
                raise DomainError("strong theta needs k >= 3")
            return 1 - self.lam(k) / self.lam(k - 1)
        return 1 / self.nu(k)

    def nu(self, k: int):
        if self.variant is Variant.STRONG:
            return 1 / self.theta(k)
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        return 8 if k == self.special_index else nth_prime(self.table, k)

    def row(self, k: int) -> dict:
        out = {"k": k, "lam": self.lam(k)}
        if self.variant is not Variant.STRONG:
            out["p_k"] = nth_prime(self.table, k)
        if self.variant is not Variant.STRONG or k >= 3:
            out["theta"] = self.theta(k)
            out["nu"] = self.nu(k)
        return out


def schedule(variant, table: PrimeTable) -> ExponentSchedule:
    return ExponentSchedule(variant, table)


def exact_lam(variant, k: int, primes) -> Fraction:
    """Rational value of lam(k) for main/lcm, from the first k primes."""
    variant = Variant.parse(variant)
    if variant is Variant.MAIN and k <= 2:
        return Fraction(6, 5) if k == 1 else Fraction(4, 5)
    if variant is Variant.LCM and k == 1:
        return Fraction(8, 7)
    prod = Fraction(1)
    for p in primes[:k]:
        prod *= Fraction(p - 1, p)
    scale = Fraction(21, 8) if variant is Variant.MAIN else Fraction(3)
    return scale * prod


# lower bounds are claimed from these k on; upper bounds for all k >= 1
_BOUNDS = {
    # name: (scale, lower constant, lower from k, upper constant)
    "lam": (MAIN_SCALE, 1.45, 62, 1.5),
    "mu": (LCM_SCALE, 1.65, 47, 1.7),
}


def verify_lemma_primeineq(t: PrimeTable, k_max: int) -> list[MarginReport]:
    """lam_k and mu_k against c/log p_k, directly and by the Rosser-Schoenfeld route.

    For p_k > 2000 the closed-form route is reported as well:
    prod_{p<=x}(1-1/p) lies within e^-gamma/log x (1 +- 1/(2 log^2 x)),
    so scale * e^-gamma (1 +- 1/(2 log^2 p_k)) must clear the constant.
    """
    nth_prime(t, k_max)
    sched = {"lam": schedule(Variant.MAIN, t), "mu": schedule(Variant.LCM, t)}
    e_mg = math.exp(-EULER_GAMMA)
    out = []
    for k in range(1, k_max + 1):
        p = nth_prime(t, k)
        lp = math.log(p)
        for name, (scale, c_lo, k_lo, c_hi) in _BOUNDS.items():
            val = sched[name].lam(k)
            variant = Variant.MAIN if name == "lam" else Variant.LCM
            base = {"p_k": p, name: val}
            out.append(check(f"{name}_upper", val, "<", c_hi / lp, k=k, variant=variant,
                             terms={**base, "bound": c_hi / lp},
                             claim_ref=f"{name}_k < {c_hi}/log p_k, k >= 1"))
            out.append(check(f"{name}_lower", val, ">", c_lo / lp, k=k, variant=variant,
                             applicable=k >= k_lo, terms={**base, "bound": c_lo / lp},
                             claim_ref=f"{name}_k > {c_lo}/log p_k, k >= {k_lo}"))
            if p <= DIRECT_RANGE:
                continue
            corr = 1 / (2 * lp * lp)
            rs_lo = scale * e_mg * (1 - corr)
            rs_hi = scale * e_mg * (1 + corr)
            out.append(check(f"{name}_lower_rs", rs_lo, ">=", c_lo, k=k, variant=variant,
                             terms={"p_k": p, "scale*e^-gamma*(1-1/(2log^2 p_k))": rs_lo},
                             claim_ref="Rosser-Schoenfeld lower route for the Mertens product"))
            out.append(check(f"{name}_upper_rs", rs_hi, "<", c_hi, k=k, variant=variant,
                             terms={"p_k": p, "scale*e^-gamma*(1+1/(2log^2 p_k))": rs_hi},
                             claim_ref="Rosser-Schoenfeld upper route for the Mertens product"))
            # the direct product must sit inside the RS sandwich
            out.append(check(f"{name}_rs_sandwich", val * lp, ">=", rs_lo, k=k, variant=variant,
                             terms={"p_k": p, f"{name}*log p_k": val * lp, "rs_lower": rs_lo},
                             claim_ref="direct product agrees with RS lower bound"))
            out.append(check(f"{name}_rs_sandwich_upper", val * lp, "<=", rs_hi, k=k,
                             variant=variant,
                             terms={"p_k": p, f"{name}*log p_k": val * lp, "rs_upper": rs_hi},
                             claim_ref="direct product agrees with RS upper bound"))
    return out


def verify_strong_base(t: PrimeTable, k_to: int = 38) -> list[MarginReport]:
    """lam_main(k) <= 3 log k / k for 2 <= k <= 38, so the strong case reduces to main."""
    main = schedule(Variant.MAIN, t)
    out = []
    for k in range(2, k_to + 1):
        lam = main.lam(k)
        bound = 3 * math.log(k) / k
        out.append(check("strong_base", lam, "<=", bound, k=k, variant=Variant.STRONG,
                         terms={"lam_main": lam, "3logk/k": bound},
                         claim_ref="strong case follows from main for k <= 38"))
    return out

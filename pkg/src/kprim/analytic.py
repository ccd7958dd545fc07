"""Riemann and prime zeta at real arguments, the tau_1 equation, and named constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .errors import BracketError, DomainError, PoleError
from .primes import PrimeTable, sieve

EULER_GAMMA = 0.57721566490153286
E_GAMMA = math.exp(EULER_GAMMA)
CLP_LAMBDA = 0.7983
POLE_GAP = 1e-6

# B_2, B_4, ..., B_20
_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
              Fraction(43867, 798), Fraction(-174611, 330)]
_EM_COEFFS = [float(b / math.factorial(2 * j + 2)) for j, b in enumerate(_BERNOULLI)]


@dataclass(frozen=True)
class Precision:
    rel_tol: float = 1e-10
    max_terms: int = 200
    bisect_tol: float = 1e-8

    def __post_init__(self):
        if min(self.rel_tol, self.max_terms, self.bisect_tol) <= 0:
            raise DomainError("precision parameters must be positive")
        if self.rel_tol >= 1e-4:
            raise DomainError("rel_tol must be below 1e-4")


DEFAULT_PRECISION = Precision()


def _check_pole(s: float) -> None:
    if not s > 1 + POLE_GAP:
        raise PoleError(f"s={s} too close to (or left of) the pole at 1")


def zeta_minus_one(s: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """zeta(s) - 1 by Euler-Maclaurin with the direct sum started at n = 2.

    Keeping the leading 1 out avoids cancellation when s is large.
    """
    _check_pole(s)
    n_cut = 16
    while True:
        n = np.arange(2, n_cut, dtype=np.float64)
        head = math.fsum(np.exp(-s * np.log(n)))
        big_n = float(n_cut)
        tail = big_n ** (1 - s) / (s - 1) + 0.5 * big_n ** (-s)
        rising = s  # s (s+1) ... (s+2j-2)
        power = big_n ** (-s - 1)
        last = 0.0
        for j, c in enumerate(_EM_COEFFS):
            last = c * rising * power
            tail += last
            rising *= (s + 2 * j + 1) * (s + 2 * j + 2)
            power /= big_n * big_n
        total = head + tail
        if abs(last) <= prec.rel_tol * 1e-3 * (1 + total) or n_cut > 4096:
            return total
        n_cut *= 2


def zeta(s: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """Riemann zeta for real s > 1."""
    return 1.0 + zeta_minus_one(s, prec)


def mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def prime_zeta(s: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """P(s) = sum_p p^-s via sum_n mu(n)/n log zeta(ns)."""
    _check_pole(s)
    total = 0.0
    for n in range(1, prec.max_terms + 1):
        mag = math.log1p(zeta_minus_one(n * s, prec)) / n
        mu = mobius(n)
        total += mu * mag
        # terms shrink at least geometrically (ratio 2^-s), so the next
        # magnitude bounds the remainder up to a factor 2
        if n > 1 and mag < prec.rel_tol * abs(total):
            break
    return total


def tau_equation(tau: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """g(tau) = P(tau) - 1 - sqrt(1 - P(2 tau)); decreasing, root at tau_1."""
    return prime_zeta(tau, prec) - 1.0 - math.sqrt(1.0 - prime_zeta(2 * tau, prec))


def tau_residual(tau: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """(P(tau) - 1)^2 + P(2 tau) - 1, zero at tau_1."""
    return (prime_zeta(tau, prec) - 1.0) ** 2 + prime_zeta(2 * tau, prec) - 1.0


def solve_tau1(prec: Precision = DEFAULT_PRECISION, lo: float = 1.05, hi: float = 1.30) -> float:
    """Critical exponent for primitive sets, by bisection on the defining equation."""
    g_lo, g_hi = tau_equation(lo, prec), tau_equation(hi, prec)
    if g_lo * g_hi > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: g={g_lo:.3g}, {g_hi:.3g}")
    while True:
        mid = 0.5 * (lo + hi)
        g_mid = tau_equation(mid, prec)
        if abs(g_mid) <= prec.bisect_tol or hi - lo < 1e-15:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid


def semiprime_zeta(s: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """sum over n with Omega(n) = 2 of n^-s, i.e. (P(s)^2 + P(2s)) / 2."""
    p = prime_zeta(s, prec)
    return 0.5 * (p * p + prime_zeta(2 * s, prec))


def erdos_constant(prec: Precision = DEFAULT_PRECISION, x_cut: int = 10**5,
                   table: PrimeTable | None = None) -> float:
    """sum_p 1/(p log p).

    Primes up to ``x_cut`` are summed directly; the rest equals
    int_1^inf (P(s) - sum_{p <= x_cut} p^-s) ds. The integrand has a log
    singularity at s = 1, handled by starting at 1 + delta and adding
    delta (f(1 + delta) + 1), the exact integral of a pure -log(s-1) head.
    Beyond s = 3 the integrand is below x_cut^-2 and is dropped.
    """
    if table is None or table.limit < x_cut:
        table = sieve(x_cut)
    logp = table.log_primes[: table.count_le(x_cut)]
    head = math.fsum(np.exp(-logp) / logp)

    def integrand(s):
        return prime_zeta(s, prec) - math.fsum(np.exp(-s * logp))

    delta = 1e-5
    body, _ = integrate.quad(integrand, 1 + delta, 3.0, limit=200, epsabs=1e-9, epsrel=1e-9)
    near_pole = delta * (integrand(1 + delta) + 1.0)
    return head + body + near_pole


def erdos_partial_sum(table: PrimeTable, x: float) -> float:
    logp = table.log_primes[: table.count_le(x)]
    return math.fsum(np.exp(-logp) / logp)


def named_constants() -> dict:
    return {
        "e_gamma": E_GAMMA,
        "tau2_interval": [0.5, CLP_LAMBDA],
        "clp_lambda": CLP_LAMBDA,
        "euler_gamma": EULER_GAMMA,
    }

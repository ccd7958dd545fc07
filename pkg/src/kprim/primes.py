"""Prime table, Chebyshev theta, and explicit prime sums.

All sums run over the primes of a sieved table and are evaluated with
``math.fsum`` so the result does not depend on the platform's reduction order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError, OutOfRangeError, ResourceError
from .report import MarginReport, check

DEFAULT_CAP = 10**8

# Rosser-Schoenfeld constants: theta(x) < 1.01624 x for x > 0 and
# theta(x) > x (1 - 1/log x) for x >= 41.
RS_THETA_UPPER = 1.01624
RS_THETA_LOWER_FROM = 41


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray
    theta_prefix: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)

    @cached_property
    def log_primes(self) -> np.ndarray:
        return np.log(self.primes.astype(np.float64))

    def count_le(self, x: float) -> int:
        """pi(x) for x within the table."""
        self._check_range(x)
        if x < 2:
            return 0
        return int(np.searchsorted(self.primes, math.floor(x), side="right"))

    def upto(self, x: float) -> np.ndarray:
        return self.primes[: self.count_le(x)]

    def _check_range(self, x: float) -> None:
        if x > self.limit:
            raise OutOfRangeError(
                f"x={x} exceeds sieve limit {self.limit}", required_limit=math.ceil(x))


def sieve(limit: int, cap: int = DEFAULT_CAP) -> PrimeTable:
    """Sieve of Eratosthenes over [2, limit]."""
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > cap:
        raise ResourceError(f"sieve limit {limit} above memory cap {cap}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    theta_prefix = np.cumsum(np.log(primes.astype(np.float64)))
    primes.setflags(write=False)
    theta_prefix.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes, theta_prefix=theta_prefix)


def nth_prime(t: PrimeTable, k: int) -> int:
    """p_k, 1-indexed."""
    if k < 1:
        raise DomainError(f"prime index must be >= 1, got {k}")
    if k > len(t):
        # p_k < k (log k + log log k) for k >= 6
        need = math.ceil(k * (math.log(k) + math.log(math.log(k)))) if k >= 6 else 13
        raise OutOfRangeError(
            f"p_{k} not in table (limit {t.limit}, {len(t)} primes); sieve to at least {need}",
            required_limit=need)
    return int(t.primes[k - 1])


def chebyshev_theta(t: PrimeTable, x: float) -> float:
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    n = t.count_le(x)
    return float(t.theta_prefix[n - 1]) if n else 0.0


def check_rs_theta_bounds(t: PrimeTable, xs) -> list[MarginReport]:
    """Both Rosser-Schoenfeld theta bounds at each x (two reports per x)."""
    out = []
    for x in xs:
        x = float(x)
        th = chebyshev_theta(t, x)
        lower_ok = x >= RS_THETA_LOWER_FROM
        lower = x * (1 - 1 / math.log(x)) if x > 1 else 0.0
        out.append(check("theta_lower", th, ">", lower, applicable=lower_ok,
                         terms={"x": x, "theta": th, "x(1-1/log x)": lower},
                         claim_ref="x(1-1/log x) < theta(x), x >= 41"))
        out.append(check("theta_upper", th, "<", RS_THETA_UPPER * x,
                         terms={"x": x, "theta": th, "1.01624x": RS_THETA_UPPER * x},
                         claim_ref="theta(x) < 1.01624 x"))
    return out


def prime_power_sum(t: PrimeTable, x: float, lam: float) -> float:
    """sum_{p <= x} p^-lam."""
    if lam <= 0:
        raise DomainError(f"lam must be > 0, got {lam}")
    n = t.count_le(x)
    return math.fsum(np.exp(-lam * t.log_primes[:n]))


def prime_log_sum(t: PrimeTable, x: float, lam: float, relaxed: bool = False) -> float:
    """sum_{p <= x} log(p) / p^lam.

    The explicit sandwich bounds are only claimed for 0 < lam < 1; pass
    ``relaxed=True`` to sum outside that range anyway.
    """
    if not relaxed and not 0 < lam < 1:
        raise DomainError(f"lam must lie in (0, 1), got {lam}")
    n = t.count_le(x)
    lp = t.log_primes[:n]
    return math.fsum(lp * np.exp(-lam * lp))


def log_sum_bounds(x: float, lam: float) -> tuple[float, float]:
    """Explicit lower/upper bounds for prime_log_sum, valid for x >= 41, 0 < lam < 1."""
    lo = x ** (1 - lam) * (1 - 1 / math.log(x))
    hi = RS_THETA_UPPER / (1 - lam) * x ** (1 - lam)
    return lo, hi


def check_log_sum_sandwich(t: PrimeTable, xs, lams) -> list[MarginReport]:
    out = []
    for x in xs:
        for lam in lams:
            s = prime_log_sum(t, x, lam)
            lo, hi = log_sum_bounds(x, lam)
            terms = {"x": float(x), "lam": lam, "sum": s, "lower": lo, "upper": hi}
            out.append(check("log_sum_lower", s, ">=", lo, terms=terms,
                             claim_ref="x^(1-lam)(1-1/log x) <= sum log p/p^lam"))
            out.append(check("log_sum_upper", s, "<=", hi, terms=terms,
                             claim_ref="sum log p/p^lam <= 1.01624/(1-lam) x^(1-lam)"))
    return out

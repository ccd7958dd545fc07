"""Critical exponents for k-primitive sets: exact predicates, prime sums, and verification checks."""

__version__ = "0.1.0"

from .analytic import Precision, erdos_constant, named_constants, prime_zeta, solve_tau1, zeta
from .exponents import ExponentSchedule, schedule, verify_lemma_primeineq, verify_strong_base
from .primes import PrimeTable, chebyshev_theta, nth_prime, prime_log_sum, prime_power_sum, sieve
from .primitivity import (CandidateSet, FactoredInt, check_ysmall, factor, is_k_primitive,
                          is_lcm_k_primitive, is_strongly_k_primitive)
from .report import MarginReport, Variant
from .search import bracket_tau, cgs_construct, max_weighted_sum
from .structure import derive_map_lcm, derive_map_strong, split_blocks_p, split_blocks_q

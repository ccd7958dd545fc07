import random

from kprim.lab import (block_split_suite, derived_map_suite, dominant_power_set,
                       smooth_count_suite, ysmall_exhaustive)
from kprim.primitivity import CandidateSet


def test_dominant_sets_share_every_prime():
    rng = random.Random(0)
    for _ in range(50):
        vals = dominant_power_set(rng, 2)
        assert max(vals) <= 10**9
        A = CandidateSet.of(vals)
        for p in A.support:
            assert sum(1 for n in vals if n % p == 0) >= 2


def test_block_split_suite():
    assert block_split_suite(200, seed=2)["passed"]


def test_derived_suites_small():
    for notion in ("lcm", "strong"):
        rep = derived_map_suite(notion, 60, seed=4)
        assert rep["passed"], rep


def test_smooth_count_suite():
    assert smooth_count_suite(60)["passed"]


def test_ysmall_small_range():
    rep = ysmall_exhaustive(24)
    assert rep["passed"] and rep["sets_checked"] > 0

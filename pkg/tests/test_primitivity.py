import random

import pytest
from hypothesis import given, settings, strategies as st

from kprim.errors import DomainError, SizeError
from kprim.primitivity import (CandidateSet, Witness, check_ysmall, conflict_with, factor,
                               is_k_primitive, is_lcm_k_primitive, is_primitive_under,
                               is_strongly_k_primitive)

from oracles import naive_is_primitive


def S(*xs):
    return CandidateSet.of(xs)


def test_factor_examples():
    f = factor(60)
    assert f.factors == ((2, 2), (3, 1), (5, 1))
    assert (f.P, f.Q, f.omega) == (5, 5, 4)
    f = factor(2520)
    assert (f.P, f.Q, f.omega) == (7, 9, 7)
    f = factor(97)
    assert f.is_prime and f.P == f.Q == 97


def test_factor_limits():
    with pytest.raises(DomainError):
        factor(1)
    assert factor(999_999_999_989).is_prime


@given(st.integers(min_value=2, max_value=10**9))
@settings(max_examples=200, deadline=None)
def test_factor_reconstructs(n):
    f = factor(n)
    prod = 1
    for p, e in f.factors:
        assert factor(p).is_prime
        prod *= p**e
    assert prod == n


def test_candidate_set_validation():
    with pytest.raises(DomainError):
        CandidateSet.of([1, 4])
    with pytest.raises(DomainError):
        CandidateSet.of([6, 4, 6])
    assert S(6, 4).values == (4, 6)


def test_k_primitive_examples():
    assert is_k_primitive(S(4, 5, 6), 2).result is True
    r = is_k_primitive(S(4, 6, 10), 2)
    assert r.result is False
    assert (r.witness.target, r.witness.helpers) == (4, (6, 10))
    assert r.witness.recheck()
    assert is_k_primitive(S(2, 3, 5, 7, 11, 13), 5).result is True


def test_strong_examples():
    r = is_strongly_k_primitive(S(4, 5, 6), 2)
    assert r.result is False and r.witness.helpers == (6, 6)
    assert is_strongly_k_primitive(S(4, 9, 25), 3).result is True
    assert is_strongly_k_primitive(S(8, 6), 2).result is True
    r = is_strongly_k_primitive(S(8, 6), 3)
    assert r.result is False and (r.witness.target, r.witness.helpers) == (8, (6, 6, 6))


def test_lcm_examples():
    assert is_lcm_k_primitive(S(4, 6, 10), 2).result is True
    r = is_lcm_k_primitive(S(4, 9, 6), 2)
    assert r.result is False and (r.witness.target, r.witness.helpers) == (6, (4, 9))
    assert is_lcm_k_primitive(S(12, 8), 2).result is True


def test_exact_j_definition_differs_for_small_sets():
    # cumulative: 2 | 4 already violates; exactly-k: no product of 3 others exists
    A = S(2, 4, 7)
    assert is_k_primitive(A, 3).result is False
    assert is_k_primitive(A, 3, exact_j=True).result is True
    r = is_k_primitive(S(2, 4, 7, 9), 3, exact_j=True)
    assert r.result is False and len(r.witness.helpers) == 3 and r.witness.recheck()


def test_size_cap():
    with pytest.raises(SizeError):
        is_k_primitive(CandidateSet.of(range(2, 80)), 2, cap=64)


def test_refute_mode_finds_witness():
    r = is_k_primitive(CandidateSet.of(range(2, 80)), 2, cap=None, mode="refute", seed=3)
    assert r.result is False and r.witness.recheck()


def test_unknown_notion():
    with pytest.raises(DomainError):
        is_primitive_under("nope", S(4, 6), 2)


def test_witness_recheck_rejects_bad_witness():
    assert not Witness("k", 4, (6, 9)).recheck()
    assert Witness("lcm", 12, (4, 6)).recheck()


sets = st.lists(st.integers(min_value=2, max_value=60), min_size=1, max_size=7, unique=True)


@given(sets, st.integers(min_value=1, max_value=3), st.sampled_from(["k", "strong", "lcm"]))
@settings(max_examples=400, deadline=None)
def test_matches_naive_oracle(vals, k, notion):
    r = is_primitive_under(notion, CandidateSet.of(vals), k)
    assert r.result == naive_is_primitive(vals, k, notion)
    if r.result is False:
        assert r.witness.recheck()
        assert r.witness.target not in r.witness.helpers
        assert len(r.witness.helpers) <= k


@given(sets, st.integers(min_value=2, max_value=60), st.integers(min_value=1, max_value=3),
       st.sampled_from(["k", "strong", "lcm"]))
@settings(max_examples=300, deadline=None)
def test_conflict_with_is_incremental(vals, new, k, notion):
    if new in vals or not naive_is_primitive(vals, k, notion):
        return
    current = [factor(v) for v in sorted(vals)]
    w = conflict_with(notion, current, factor(new), k)
    assert (w is None) == naive_is_primitive(vals + [new], k, notion)


@given(st.sampled_from(["k", "strong", "lcm"]), st.integers(min_value=1, max_value=3))
def test_subsets_inherit_primitivity(notion, k):
    rng = random.Random(k)
    vals = rng.sample(range(2, 60), 6)
    if naive_is_primitive(vals, k, notion):
        for drop in vals:
            rest = [v for v in vals if v != drop]
            assert is_primitive_under(notion, CandidateSet.of(rest), k).result


def test_ysmall_examples():
    rep = check_ysmall(S(4, 9), 2)
    assert rep.ok and rep.card_bound_ok and rep.injective
    lhs, rhs, ok = rep.sum_checks[1.0]
    assert lhs == pytest.approx(1 / 4 + 1 / 9) and rhs == pytest.approx(1 / 2 + 1 / 3) and ok
    assert check_ysmall(S(7), 2).ok

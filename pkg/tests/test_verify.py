import math

import pytest

from kprim.exponents import schedule
from kprim.primes import nth_prime
from kprim.report import Variant
from kprim.verify import (asymptotic_leg_check, claim1_check, claim2_check, i_bound_check,
                          monotone_exponent_property, prefix_differences, s_of_y, s_of_y_split,
                          smooth_tail_term, strong_goal_check, strong_nu_audit, tail_dominates)
from kprim.errors import DomainError, InapplicableError

from oracles import naive_primes


def direct_s(Y, lam, lp):
    return math.fsum((p ** (-2 * lam) - p ** (-2 * lp)) - (p ** -lam - p ** -lp)
                     for p in naive_primes(int(Y)))


def test_s_examples(table):
    assert s_of_y(table, 5, 0.7, 0.8) == pytest.approx(direct_s(5, 0.7, 0.8), rel=1e-12)
    assert s_of_y(table, 5, 0.7, 0.8) == pytest.approx(-0.017, abs=5e-4)
    assert s_of_y(table, 23, 0.7, 0.8) == pytest.approx(-0.169, abs=1e-3)
    assert s_of_y(table, 1.5, 0.7, 0.8) == 0
    assert s_of_y(table, 1000, 0.6, 0.6) == 0


def test_s_two_routes(table):
    for Y, lam, lp in [(1223, 0.2, 0.25), (10**5, 0.13, 0.131), (97, 0.5, 0.9)]:
        scale = math.fsum(p ** -lam for p in table.upto(Y).tolist())
        assert abs(s_of_y(table, Y, lam, lp) - s_of_y_split(table, Y, lam, lp)) < 1e-12 * scale


def test_s_requires_order(table):
    with pytest.raises(DomainError):
        s_of_y(table, 10, 0.9, 0.8)


def test_claim1(table):
    reps = claim1_check(table, 3, 40, "main")
    assert reps[0].lhs == pytest.approx(5 ** -0.7) and reps[0].passed
    assert all(r.passed for r in reps)
    assert len(claim1_check(table, 3, 3, "main")) == 1
    lcm = claim1_check(table, 2, 30, "lcm")
    assert all(r.passed for r in lcm)


@pytest.mark.parametrize("variant,first", [("main", 3), ("lcm", 2)])
def test_claim2_full_range(table, variant, first):
    reps = claim2_check(table, variant, first, 1000)
    assert all(r.passed for r in reps)
    assert sorted({r.k for r in reps}) == list(range(first, 1001))


def test_claim2_k200_margin(table):
    r = [r for r in claim2_check(table, "main", 200, 200)][0]
    assert nth_prime(table, 200) == 1223
    assert r.rhs == pytest.approx(-0.015 / math.log(1223))
    assert r.lhs == pytest.approx(direct_s(1223, schedule("main", table).lam(200),
                                           schedule("main", table).lam(199)), rel=1e-10)


def test_lcm_k2_value(table):
    r = claim2_check(table, "lcm", 2, 2)[0]
    assert r.lhs == pytest.approx(direct_s(3, 1.0, 8 / 7), rel=1e-12) and r.passed


def test_tail_term_main_k3(table):
    s = schedule("main", table)
    assert smooth_tail_term(3, "main", s, table) == pytest.approx(
        0.7 / (0.7 - 1 / 3 - 0.125) * 23 ** (-8 * (0.7 - 1 / 3 - 0.125)), rel=1e-12)
    assert smooth_tail_term(3, "main", s, table) == pytest.approx(0.0068, abs=1e-4)


def test_tail_term_inapplicable(table):
    s = schedule("main", table)
    with pytest.raises(InapplicableError):
        smooth_tail_term(1, "main", s, table)


@pytest.mark.parametrize("variant,first", [("main", 3), ("lcm", 2)])
def test_i_bound(table, variant, first):
    reps = i_bound_check(table, variant, first, 199)
    assert all(r.passed for r in reps)


@pytest.mark.parametrize("variant", ["main", "lcm"])
def test_asymptotic_legs(table, variant):
    reps = asymptotic_leg_check(table, variant, 200, 1000)
    assert all(r.passed is not False for r in reps)


def test_tail_dominates_from_five():
    assert tail_dominates("main", 5).passed


def test_strong_goal(table):
    reps = strong_goal_check(table, 39, 1000)
    assert all(r.passed for r in reps)
    names = {r.claim.replace("[log]", "") for r in reps}
    for needed in ("goal", "ratio<1.23", "3/k^2<0.36log^2k/k"):
        assert any(needed in n for n in names), needed


def test_strong_nu_audit_flags_displayed_estimate(table):
    reps = strong_nu_audit(table, 39, 60)
    assert any(r.passed is False for r in reps if r.k == 39)


def test_prefix_differences_trivial():
    assert prefix_differences([4, 6], [4, 6], 0.7) == [0.0, 0.0]
    assert min(prefix_differences([4], [2], 0.5)) < 0


def test_monotone_property_small():
    rep = monotone_exponent_property(2000, seed=5)
    assert rep["passed"] and rep["hypothesis_held"] > 0

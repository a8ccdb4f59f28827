"""Membership thresholds, gap censuses, the coverage diagnostic, and the
power-of-two partner construction with its exact verification."""

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interlock.arith import tau
from interlock.construction import (
    DIVISORS_OF_231,
    JumpParams,
    SearchBudgetError,
    build_pow2_partner,
    count_bounded_jumps,
    gap_census,
    gap_ratio,
    has_bounded_jumps,
    interval_coverage_diagnostic,
    jump_constant,
    mixed_radix_compose,
    mixed_radix_decompose,
    plan_from_dict,
    plan_to_dict,
    verify_construction,
)
from interlock.pairs import check_interlock_divisors
from interlock.construction import plan_divisors
from oracles import divisor_table


def naive_in_set(divs, c_value: float) -> bool:
    for prev, cur in zip(divs, divs[1:]):
        if not math.log(cur) <= max(c_value, prev):
            return False
    return True


def test_jump_constant():
    jc = jump_constant(2)
    assert jc.exp_log2 == 1  # e^c = 2
    assert abs(float(jc.value) - math.log(2)) < 1e-12
    jc = jump_constant(5)
    assert jc.exp_log2 == 8  # e^c = 256
    assert abs(float(jc.value) - 8 * math.log(2)) < 1e-12
    jc = jump_constant(50)
    assert jc.exp_log2 == 2**48  # symbolic only; never materialized
    with pytest.raises(ValueError):
        jump_constant(1)


def test_params_validation():
    with pytest.raises(ValueError):
        JumpParams(t=5, override=Fraction(2))
    with pytest.raises(ValueError):
        JumpParams()
    with pytest.raises(ValueError):
        JumpParams.from_override(0)


def test_membership_examples():
    t5 = JumpParams.from_t(5)
    assert has_bounded_jumps(1, t5).bounded  # no divisor pair at all
    check = has_bounded_jumps(514, t5)  # 514 = 2 * 257 and 257 > e^c = 256
    assert not check.bounded and check.witness == (2, 257)
    assert has_bounded_jumps(12, t5).bounded
    assert has_bounded_jumps(513, t5).bounded  # 513 = 3^3 * 19: jumps are tame
    with pytest.raises(ValueError):
        has_bounded_jumps(0, t5)


def test_membership_monotone_in_threshold():
    # A larger threshold only weakens the condition.
    small = JumpParams.from_override(3)
    large = JumpParams.from_override(6)
    t_small, t_large = JumpParams.from_t(4), JumpParams.from_t(6)
    for n in range(1, 10_001):
        if has_bounded_jumps(n, small).bounded:
            assert has_bounded_jumps(n, large).bounded, n
        if has_bounded_jumps(n, t_small).bounded:
            assert has_bounded_jumps(n, t_large).bounded, n


def test_membership_against_float_oracle():
    table = divisor_table(3000)
    params = JumpParams.from_override(5)
    for n in range(1, 3001):
        assert has_bounded_jumps(n, params).bounded == naive_in_set(table[n], 5.0), n


def test_count_examples():
    assert count_bounded_jumps(10**4, JumpParams.from_override(5)) == 6908
    assert count_bounded_jumps(10**4, JumpParams.from_override(5)) > 5000
    # e^c = 2^1024 dwarfs every divisor below 1e5: vacuous regime.
    assert count_bounded_jumps(10**5, JumpParams.from_t(12)) == 10**5
    assert count_bounded_jumps(1, JumpParams.from_override(5)) == 1


def test_count_against_oracle():
    table = divisor_table(2000)
    expected = sum(1 for n in range(1, 2001) if naive_in_set(table[n], 3.0))
    assert count_bounded_jumps(2000, JumpParams.from_override(3)) == expected


def test_gap_census_examples():
    assert gap_census(100, 2, 100) == 1  # only n = 1 avoids [2, 100]
    assert gap_census(30, 3, 5) == 12
    with pytest.raises(ValueError):
        gap_census(100, 1, 50)
    with pytest.raises(ValueError):
        gap_census(100, 60, 50)
    ratio = gap_ratio(30, 3, 5, 12)
    assert ratio == pytest.approx(12 * math.log(5) / (30 * math.log(3)))


def test_gap_census_monotone_grid():
    # Non-increasing as z grows, non-decreasing as y grows.
    for x in (500, 2000):
        for y in (2, 3, 5, 10):
            counts = [gap_census(x, y, z) for z in range(y, 40)]
            assert counts == sorted(counts, reverse=True)
        for z in (40, 60):
            counts = [gap_census(x, y, z) for y in range(2, z + 1)]
            assert counts == sorted(counts)


def test_gap_census_against_oracle():
    table = divisor_table(1000)
    for x, y, z in ((1000, 2, 30), (800, 5, 17), (999, 10, 100), (100, 2, 100)):
        expected = sum(
            1 for n in range(1, x + 1) if not any(y <= d <= z for d in table[n])
        )
        assert gap_census(x, y, z) == expected, (x, y, z)


def test_coverage_diagnostic_standard_regime():
    report = interval_coverage_diagnostic(10**4, JumpParams.from_override(2))
    assert report.regime == "standard"
    assert report.l == 1  # floor(log2(log_2(ln 1e4))) = floor(log2(3.20)) = 1
    assert [(ic.y_int, ic.z_int) for ic in report.intervals] == [(5, 7), (8, 54)]
    assert report.union_bound_ok
    assert report.union_missing <= report.sum_missing
    assert report.covered + report.union_missing == 10**4
    assert report.covered_in_set + report.covered_outside_set == report.covered
    # per-interval censuses agree with direct calls
    for ic in report.intervals:
        assert ic.missing == gap_census(10**4, ic.y_int, ic.z_int)


def test_coverage_diagnostic_vacuous_regimes():
    # threshold at or above ln x
    report = interval_coverage_diagnostic(100, JumpParams.from_override(5))
    assert report.regime == "vacuous" and report.l is None
    # threshold <= 1 cannot define the level at all
    report = interval_coverage_diagnostic(10**4, JumpParams.from_override(1))
    assert report.regime == "vacuous"
    report = interval_coverage_diagnostic(10**4, JumpParams.from_t(2))
    assert report.regime == "vacuous"


def test_coverage_diagnostic_exact_power_boundary():
    # x = e^c exactly (t-form): the level is exactly 0.
    report = interval_coverage_diagnostic(256, JumpParams.from_t(5))
    assert report.l == 0
    assert report.intervals[0].z_int == 256


def test_build_plan_k32():
    plan = build_pow2_partner(32, 5)
    assert plan.m == 231 * 257 * 65537
    assert plan.r == 5 and plan.exponents == (1, 1, 1, 1, 1)
    assert [(l.index, l.pow2, l.prime) for l in plan.levels] == [
        (4, 256, 257),
        (5, 65536, 65537),
    ]
    assert plan.probabilistic_primes == ()


def test_build_plan_k96():
    plan = build_pow2_partner(96, 5)
    assert plan.exponents == (1, 1, 1, 1, 1, 2)
    assert plan.levels[-1].pow2 == 2**32
    assert plan.levels[-1].prime == 2**32 + 15
    assert plan.m == 231 * 257 * 65537 * (2**32 + 15) ** 2


def test_build_plan_rejections():
    with pytest.raises(ValueError):
        build_pow2_partner(48, 5)  # 2^5 does not divide 48
    with pytest.raises(ValueError):
        build_pow2_partner(32, 3)  # t below 4
    with pytest.raises(ValueError):
        build_pow2_partner(32 * 514, 5)  # 514 jumps out of the set at t = 5
    with pytest.raises(SearchBudgetError):
        build_pow2_partner(2**13, 4, prime_search_bits=256)


def test_mixed_radix_examples():
    plan = build_pow2_partner(32, 5)
    d = mixed_radix_decompose(0, plan)
    assert d.c0 == 0 and d.upper == (0, 0)
    d = mixed_radix_decompose(9, plan)
    assert d.c0 == 1 and d.upper == (1, 0)  # 9 = 1 + 1 * 8
    d = mixed_radix_decompose(31, plan)
    assert d.c0 == 7 and d.upper == (1, 1)  # 31 = 7 + 8 + 16
    with pytest.raises(ValueError):
        mixed_radix_decompose(32, plan)
    with pytest.raises(ValueError):
        mixed_radix_decompose(-1, plan)


def test_mixed_radix_bijection():
    for k, t in ((32, 5), (96, 5), (48, 4)):
        plan = build_pow2_partner(k, t)
        seen = set()
        for d in range(k):
            digits = mixed_radix_decompose(d, plan)
            assert mixed_radix_compose(digits, plan) == d
            seen.add((digits.c0, digits.upper))
        assert len(seen) == k


def test_verify_k32_with_direct_check():
    plan = build_pow2_partner(32, 5)
    report = verify_construction(plan, direct_interlock=True)
    assert report.verified
    assert report.dyadic_checks == 32 and report.first_failure is None
    assert report.tau_m == 32 and report.tau_identity_ok
    assert report.injective
    assert report.interlock_checked and report.interlock_report.verdict
    assert plan.verified and plan.claims is report.claims


def test_claim_diagnostics_k32():
    plan = build_pow2_partner(32, 5)
    report = verify_construction(plan)
    claims = report.claims
    # The tightest digit ratio is 231/256 = 0.9023... < 10/11 = 0.9090...
    assert claims.digit_ratio == tuple((c0, True) for c0 in range(8))
    assert max(Fraction(DIVISORS_OF_231[c], 2 ** (c + 1)) for c in range(8)) == Fraction(
        231, 256
    )
    # Prime-ratio inequality at level 4 holds by a tiny margin.
    assert (4, True) in claims.prime_ratio
    assert claims.aggregate == Fraction(257, 256) * Fraction(65537, 65536)
    assert claims.aggregate_below_exp and claims.aggregate_below_11_10
    assert claims.exp_below_11_10
    assert claims.all_hold


def test_verified_plans_interlock():
    for k, t in ((16, 4), (32, 5), (48, 4), (64, 4), (96, 5), (160, 5), (256, 4)):
        plan = build_pow2_partner(k, t)
        report = verify_construction(plan, direct_interlock=True)
        assert report.verified, (k, t)
        assert report.tau_m == k == tau(1 << k) - 1, (k, t)
        assert report.interlock_report.verdict, (k, t)


def test_k256_records_probabilistic_primes():
    plan = build_pow2_partner(256, 4)
    # Levels reach 2^128; those next-primes are only probabilistically tested.
    assert plan.levels[-1].pow2 == 2**128
    assert plan.probabilistic_primes
    assert all(p > 2**64 for p in plan.probabilistic_primes)


def test_plan_serialization_roundtrip(tmp_path):
    plan = build_pow2_partner(96, 5)
    verify_construction(plan)
    data = plan_to_dict(plan)
    assert data["m"] == str(plan.m)
    assert all(isinstance(lv["pow2"], str) for lv in data["levels"])
    text = json.dumps(data, sort_keys=True)
    back = plan_from_dict(json.loads(text))
    assert back == plan
    # a reloaded plan re-verifies identically
    report = verify_construction(back, direct_interlock=True)
    assert report.verified


def test_digit_map_reaches_every_divisor():
    plan = build_pow2_partner(96, 5)
    divs = plan_divisors(plan)
    assert len(divs) == 96
    report = verify_construction(plan)
    assert report.injective and report.tau_m == len(divs)
    assert check_interlock_divisors(
        plan.m, 1 << 96, divs, tuple(1 << i for i in range(97))
    ).verdict


@given(st.integers(min_value=0, max_value=95))
@settings(max_examples=96, deadline=None)
def test_mixed_radix_roundtrip_k96(d):
    plan = build_pow2_partner(96, 5)
    digits = mixed_radix_decompose(d, plan)
    assert 0 <= digits.c0 <= 7
    assert all(0 <= c <= lvl.exponent for c, lvl in zip(digits.upper, plan.levels))
    assert mixed_radix_compose(digits, plan) == d

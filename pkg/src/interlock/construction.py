"""Slow-divisor-growth membership, gap censuses, and the explicit
construction of an interlocking partner for 2^k.

The membership test: with a threshold constant c = ln 2 * 2^(t-2) (or a
direct rational override), an integer belongs to the slow-growth set when
every consecutive divisor pair d_prev < d satisfies d <= e^max(c, d_prev).
In the t-parameterized form e^c is the exact power of two 2^(2^(t-2)), so
that branch of the comparison is pure integer arithmetic; the e^d_prev
branch reduces to d <= floor(e^d_prev), again exact.  Direct overrides go
through interval arithmetic with a hard error on indeterminate margins.

The partner construction: for k divisible by 2^t (t >= 4) with k/2^t in the
slow-growth set, write k = prod(e_i + 1) with each e_i + 1 prime, ascending,
so e_i = 1 for i <= t.  For levels i = 4..r set n_i = 2^((e_1+1)...(e_{i-1}+1))
and p_i = the next prime above n_i.  Then

    m = 231 * prod_{i=4..r} p_i^{e_i}

has tau(m) = 8 * prod(e_i + 1) = k = tau(2^k) - 1, and indexing the divisors
of m by mixed-radix digits d = c_0 + sum c_i (e_1+1)...(e_{i-1}+1) places the
divisor d' = d231[c_0] * prod p_i^{c_i} strictly inside the dyadic interval
(2^d, 2^(d+1)) for every d in [1, k-1]; the d = 0 digit is the divisor 1
itself (the lone divisor not exceeding 2^0, where strict containment is
impossible and not needed: the gaps of 2^k start at (2, 4)).  verify_
construction replays every one of these k placements with exact big-integer
comparisons, which is what makes small-t plans trustworthy even where the
asymptotic claim diagnostics fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .arith import (
    divisors,
    divisors_from_factorization,
    factorize,
    next_prime,
    primality_is_certified,
    warm_sieve,
)
from .pairs import InterlockReport, check_interlock_divisors
from .precision import (
    escalating,
    exp_lt_fraction,
    floor_exp,
    fraction_lt_exp,
    interval_ceil,
    interval_floor,
    iv_fraction,
    log_le,
    precision_bits,
)

# Divisors of 231 = 3 * 7 * 11, the fixed low-end block of every plan.  One
# entry per value of the low digit c_0; cross-checked against divisors(231)
# at import time.
DIVISORS_OF_231 = (1, 3, 7, 11, 21, 33, 77, 231)

# Levels with n_i = 2^bits beyond this bit budget are refused: the next-prime
# search above n_i would dominate the run.
DEFAULT_PRIME_SEARCH_BITS = 1024

# Direct interlock cross-checks are skipped above this tau(m) unless forced.
_DIRECT_CHECK_CAP = 4096


class SearchBudgetError(RuntimeError):
    """A plan level exceeded the configured next-prime search budget."""


# --- membership parameters ---------------------------------------------------


@dataclass(frozen=True)
class JumpParams:
    """Threshold parameters for the bounded-divisor-jump test.

    Exactly one of t / override is set.  t-form: the threshold constant is
    ln 2 * 2^(t-2) and its exponential is the exact integer 2^(2^(t-2)).
    Override form: an exact rational threshold, compared at the working
    precision.
    """

    t: int | None = None
    override: Fraction | None = None
    bits: int | None = None  # working precision; None = environment default

    def __post_init__(self):
        if (self.t is None) == (self.override is None):
            raise ValueError("JumpParams: set exactly one of t / override")
        if self.t is not None and self.t < 2:
            raise ValueError(f"JumpParams: t must be >= 2, got {self.t}")
        if self.override is not None and self.override <= 0:
            raise ValueError("JumpParams: override threshold must be positive")

    @classmethod
    def from_t(cls, t: int, bits: int | None = None) -> "JumpParams":
        return cls(t=t, bits=bits)

    @classmethod
    def from_override(cls, value, bits: int | None = None) -> "JumpParams":
        return cls(override=Fraction(value), bits=bits)

    @property
    def exp_threshold_log2(self) -> int | None:
        """log2 of e^threshold when that is an exact power of two (t-form)."""
        return None if self.t is None else 1 << (self.t - 2)

    def threshold_value(self) -> mpmath.mpf:
        """The threshold constant as a high-precision float (display only)."""
        saved = mpmath.mp.prec
        mpmath.mp.prec = self.bits or precision_bits()
        try:
            if self.t is not None:
                return mpmath.log(2) * mpmath.mpf(2) ** (self.t - 2)
            return mpmath.mpf(self.override.numerator) / self.override.denominator
        finally:
            mpmath.mp.prec = saved

    def describe(self) -> str:
        if self.t is not None:
            return f"ln(2) * 2^{self.t - 2}  (t = {self.t}, e^c = 2^{1 << (self.t - 2)})"
        return f"{self.override}  (direct override)"


@dataclass(frozen=True)
class JumpConstant:
    """The t-form threshold constant and its exact exponential."""

    t: int
    value: mpmath.mpf  # ln 2 * 2^(t-2) at working precision
    exp_log2: int  # e^value = 2^exp_log2 exactly


def jump_constant(t: int, bits: int | None = None) -> JumpConstant:
    """Threshold constant for a given t >= 2, with e^c kept symbolic as a
    power of two (materializing 2^(2^48) is neither possible nor needed)."""
    if t < 2:
        raise ValueError(f"jump_constant: t must be >= 2, got {t}")
    params = JumpParams.from_t(t, bits)
    return JumpConstant(t=t, value=params.threshold_value(), exp_log2=1 << (t - 2))


# --- membership test ---------------------------------------------------------


@dataclass(frozen=True)
class JumpCheck:
    n: int
    bounded: bool
    witness: tuple[int, int] | None  # first (d_prev, d) violating the bound


def _le_exp_threshold(d: int, params: JumpParams) -> bool:
    """Decide d <= e^threshold."""
    if params.t is not None:
        # d <= 2^E  <=>  bit_length(d - 1) <= E; never materializes 2^E.
        return (d - 1).bit_length() <= params.exp_threshold_log2
    return log_le(d, params.override, params.bits)


def _exp_threshold_floor(params: JumpParams) -> int | None:
    """floor(e^threshold) for override params with a modest threshold, else
    None.  Used to turn the per-divisor comparison into plain int compares."""
    if params.override is None or params.override > 100000:
        return None
    q = params.override

    def step(iv):
        enc = iv.exp(iv_fraction(q))
        return interval_floor(enc)

    return escalating(step, f"floor(e^{q})", params.bits)


def has_bounded_jumps(n: int, params: JumpParams) -> JumpCheck:
    """Decide membership in the slow-divisor-growth set.

    True iff every consecutive divisor pair d_prev < d of n satisfies
    d <= e^max(threshold, d_prev), i.e. d <= e^threshold or d <= e^d_prev.
    n = 1 has no divisor pair and is always a member.
    """
    if n < 1:
        raise ValueError(f"has_bounded_jumps: n must be >= 1, got {n}")
    ds = divisors(n)
    exp_floor = _exp_threshold_floor(params)
    for prev, cur in zip(ds, ds[1:]):
        if exp_floor is not None:
            if cur <= exp_floor:
                continue
        elif _le_exp_threshold(cur, params):
            continue
        # cur <= e^prev  <=>  cur <= floor(e^prev); cheap power-of-two
        # sufficient test first since 2^prev <= e^prev.
        if (cur - 1).bit_length() <= prev:
            continue
        if cur <= floor_exp(prev):
            continue
        return JumpCheck(n, False, (prev, cur))
    return JumpCheck(n, True, None)


def count_bounded_jumps(x: int, params: JumpParams) -> int:
    """Number of n <= x in the slow-growth set.

    When e^threshold >= x every divisor comparison is vacuous and the count
    is x without enumeration.
    """
    if x < 1:
        raise ValueError(f"count_bounded_jumps: x must be >= 1, got {x}")
    if _le_exp_threshold(x, params):
        return x
    warm_sieve(x)
    exp_floor = _exp_threshold_floor(params)
    count = 0
    for n in range(1, x + 1):
        ds = divisors_from_factorization(factorize(n))
        ok = True
        for prev, cur in zip(ds, ds[1:]):
            if exp_floor is not None:
                if cur <= exp_floor:
                    continue
            elif _le_exp_threshold(cur, params):
                continue
            if (cur - 1).bit_length() <= prev:
                continue
            if cur <= floor_exp(prev):
                continue
            ok = False
            break
        count += ok
    return count


# --- divisor-free-interval census --------------------------------------------


def gap_census(x: int, y: int, z: int) -> int:
    """Exact count of n <= x having no divisor d with y <= d <= z."""
    if not 2 <= y <= z <= x:
        raise ValueError(f"gap_census: need 2 <= y <= z <= x, got ({x}, {y}, {z})")
    marked = bytearray(x + 1)
    for d in range(y, z + 1):
        marked[d::d] = b"\x01" * (x // d)
    return x - sum(marked)  # index 0 is never marked: n runs over [1, x]


def gap_ratio(x: int, y: int, z: int, count: int) -> float:
    """count * log z / (x * log y): the scale on which the census count is
    expected to be bounded by an absolute constant."""
    return count * math.log(z) / (x * math.log(y))


# --- interval-coverage diagnostic ---------------------------------------------


@dataclass(frozen=True)
class IntervalCensus:
    index: int
    y_int: int  # ceil of the real lower endpoint e^(c^(2^(i-1)))
    z_int: int  # floor of the real upper endpoint e^(c^(2^i))
    missing: int  # n <= x with no divisor in [y_int, z_int]
    ratio: float


@dataclass(frozen=True)
class CoverageReport:
    """Numerical replay of the interval-coverage argument at a desk-scale
    threshold.

    The intervals [y_i, z_i] tile divisor space so that an integer with a
    divisor in every interval has bounded jumps (at the intended enormous
    threshold).  At small thresholds the implication can fail, so the report
    also counts covered integers that are nevertheless outside the set.
    """

    x: int
    threshold: str
    regime: str  # "standard" | "vacuous"
    l: int | None
    intervals: tuple[IntervalCensus, ...]
    sum_missing: int | None
    union_missing: int | None
    union_bound_ok: bool | None  # union <= sum of per-interval counts
    covered: int | None  # n <= x with a divisor in every interval
    majority_covered: bool | None  # covered > x / 2
    covered_in_set: int | None
    covered_outside_set: int | None


def _ln_threshold(params: JumpParams, iv):
    if params.t is not None:
        # ln c = ln ln 2 + (t - 2) ln 2
        ln2 = iv.log(iv.mpf(2))
        return iv.log(ln2) + (params.t - 2) * ln2
    return iv.log(iv_fraction(params.override))


def _threshold_iv(params: JumpParams, iv):
    if params.t is not None:
        return iv.log(iv.mpf(2)) * iv.mpf(2) ** (params.t - 2)
    return iv_fraction(params.override)


def _threshold_gt_one(params: JumpParams) -> bool:
    if params.t is not None:
        return params.t >= 3  # ln 2 * 2^(t-2) > 1 iff 2^(t-2) > 1/ln 2
    return params.override > 1


def _coverage_level(x: int, params: JumpParams) -> int | None:
    """floor(log2(log_threshold(ln x))), or None in the vacuous regime."""
    if params.t is not None:
        e_log2 = params.exp_threshold_log2
        if (x - 1).bit_length() <= e_log2:
            # x <= e^threshold: if equal, the level is exactly 0; below, the
            # inner log is < 1 and the level is undefined.
            if x.bit_length() - 1 == e_log2 and x == 1 << e_log2:
                return 0
            return None

    def step(iv):
        lnx = iv.log(iv.mpf(x))
        lnc = _ln_threshold(params, iv)
        inner = iv.log(lnx) / lnc  # = ln(ln x)/ln c: exponent with log_c
        if inner.b <= 0:
            return ("vacuous",)
        if not inner.a > 0:
            return None
        level = iv.log(inner) / iv.log(iv.mpf(2))
        fl = interval_floor(level)
        if fl is None:
            return None
        return ("ok", fl)

    result = escalating(step, f"coverage level for x={x}", params.bits)
    if result[0] == "vacuous" or result[1] < 0:
        return None
    return result[1]


def _interval_bounds(params: JumpParams, power_log2: int) -> tuple[int, int]:
    """(ceil, floor) integer bracket of e^(c^p) where p = 2^power_log2 for
    power_log2 >= 0, or p = 1/2 for power_log2 = -1."""
    if params.t is not None and power_log2 == 0:
        exact = 1 << params.exp_threshold_log2  # e^c is exactly 2^(2^(t-2))
        return exact, exact

    def step(iv):
        c = _threshold_iv(params, iv)
        if power_log2 == -1:
            expo = iv.sqrt(c)
        else:
            expo = c ** (1 << power_log2)
        enc = iv.exp(expo)
        ce = interval_ceil(enc)
        fl = interval_floor(enc)
        if ce is None or fl is None:
            return None
        return (ce, fl)

    return escalating(step, f"interval endpoint e^(c^2^{power_log2})", params.bits)


def interval_coverage_diagnostic(x: int, params: JumpParams) -> CoverageReport:
    """Compute the coverage level l, the intervals, per-interval censuses,
    the union bound, and the empirical relation to set membership."""
    if x < 1:
        raise ValueError(f"interval_coverage_diagnostic: x must be >= 1, got {x}")
    threshold = params.describe()
    if not _threshold_gt_one(params):
        return CoverageReport(
            x, threshold, "vacuous", None, (), None, None, None, None, None, None, None
        )
    level = _coverage_level(x, params)
    if level is None:
        return CoverageReport(
            x, threshold, "vacuous", None, (), None, None, None, None, None, None, None
        )

    intervals = []
    bounds = []
    for i in range(level + 1):
        y_ceil, _ = _interval_bounds(params, i - 1)
        _, z_floor = _interval_bounds(params, i)
        y_int = max(2, y_ceil)
        z_int = min(x, z_floor)
        if y_int > z_int:
            continue  # rounding emptied the interval; nothing to census
        missing = gap_census(x, y_int, z_int)
        intervals.append(
            IntervalCensus(i, y_int, z_int, missing, gap_ratio(x, y_int, z_int, missing))
        )
        bounds.append((y_int, z_int))

    # Exact union: n missing a divisor in at least one interval.
    has_all = bytearray(b"\x01" * (x + 1))
    for y_int, z_int in bounds:
        cur = bytearray(x + 1)
        for d in range(y_int, z_int + 1):
            cur[d::d] = b"\x01" * (x // d)
        for n in range(1, x + 1):
            has_all[n] &= cur[n]
    covered = sum(has_all[1:])
    union_missing = x - covered
    sum_missing = sum(ic.missing for ic in intervals)

    covered_in = 0
    for n in range(1, x + 1):
        if has_all[n] and has_bounded_jumps(n, params).bounded:
            covered_in += 1

    return CoverageReport(
        x=x,
        threshold=threshold,
        regime="standard",
        l=level,
        intervals=tuple(intervals),
        sum_missing=sum_missing,
        union_missing=union_missing,
        union_bound_ok=union_missing <= sum_missing,
        covered=covered,
        majority_covered=2 * covered > x,
        covered_in_set=covered_in,
        covered_outside_set=covered - covered_in,
    )


# --- the partner construction -------------------------------------------------


@dataclass(frozen=True)
class PlanLevel:
    """One level i of the construction: the power of two n_i = 2^bits with
    bits = (e_1+1)...(e_{i-1}+1), the next prime above it, and the exponent
    it carries in m."""

    index: int  # i, starting at 4
    exponent: int  # e_i
    bits: int  # log2(n_i)
    pow2: int  # n_i
    prime: int  # p_i = next_prime(n_i)
    certified: bool  # primality proven (vs. probabilistic beyond 2^81-ish)


@dataclass(frozen=True)
class MixedRadixDigits:
    c0: int  # in [0, 7]
    upper: tuple[int, ...]  # c_i in [0, e_i] per level, ascending i


@dataclass(frozen=True)
class ClaimDiagnostics:
    """Asymptotic-regime inequalities, evaluated exactly at this plan's
    scale.  They are guaranteed only for enormous t, so small-t plans may
    legitimately fail them; plan validity rests on the per-digit dyadic
    checks instead."""

    exponent_fourth_root: tuple[tuple[int, bool], ...]  # per level i > t: e_i^4 <= n_i
    prime_ratio: tuple[tuple[int, bool], ...]  # per level: (p/n)^e < e^(1/4^i)
    digit_ratio: tuple[tuple[int, bool], ...]  # per c0: d231/2^(c0+1) < 10/11
    aggregate: Fraction  # prod over levels of (p/n)^e
    aggregate_below_exp: bool  # aggregate < e^(1/192)
    aggregate_below_11_10: bool
    exp_below_11_10: bool  # e^(1/192) < 11/10
    all_hold: bool


@dataclass
class ConstructionPlan:
    k: int
    t: int
    r: int  # number of prime factors of k with multiplicity
    exponents: tuple[int, ...]  # e_1..e_r, ascending, each e_i + 1 prime
    levels: tuple[PlanLevel, ...]  # i = 4..r
    m: int  # 231 * prod p_i^e_i
    probabilistic_primes: tuple[int, ...]
    claims: ClaimDiagnostics | None = None
    verified: bool = False


@dataclass(frozen=True)
class ConstructionReport:
    k: int
    t: int
    dyadic_checks: int  # digit positions replayed (= k)
    first_failure: int | None  # first digit whose divisor misses its slot
    tau_m: int
    tau_identity_ok: bool  # tau(m) = k = tau(2^k) - 1
    injective: bool  # distinct digits gave distinct divisors
    verified: bool
    claims: ClaimDiagnostics
    interlock_checked: bool
    interlock_report: InterlockReport | None


def build_pow2_partner(
    k: int,
    t: int,
    prime_search_bits: int = DEFAULT_PRIME_SEARCH_BITS,
) -> ConstructionPlan:
    """Build the explicit partner plan for 2^k.

    Requires t >= 4, 2^t | k, and k/2^t in the slow-growth set for this t
    (checked, not assumed).  Levels whose power of two exceeds
    prime_search_bits bits raise SearchBudgetError before any expensive
    next-prime walk starts.
    """
    if t < 4:
        raise ValueError(f"build_pow2_partner: t must be >= 4, got {t}")
    if k < 1:
        raise ValueError(f"build_pow2_partner: k must be >= 1, got {k}")
    if k % (1 << t):
        raise ValueError(f"build_pow2_partner: 2^{t} does not divide k = {k}")
    reduced = k >> t
    membership = has_bounded_jumps(reduced, JumpParams.from_t(t))
    if not membership.bounded:
        prev, cur = membership.witness
        raise ValueError(
            f"build_pow2_partner: k/2^t = {reduced} is outside the slow-growth "
            f"set for t = {t}: divisor jump {prev} -> {cur} exceeds the bound"
        )

    exps: list[int] = []
    for p, e in factorize(k):
        exps.extend([p - 1] * e)
    exps.sort()
    r = len(exps)
    assert all(e == 1 for e in exps[:t]), "2^t | k forces e_i = 1 for i <= t"

    levels: list[PlanLevel] = []
    partial = 1  # (e_1+1)...(e_{i-1}+1) as i advances
    for i, e in enumerate(exps, start=1):
        if i >= 4:
            if partial > prime_search_bits:
                raise SearchBudgetError(
                    f"level {i} needs the next prime above 2^{partial}, beyond "
                    f"the {prime_search_bits}-bit search budget"
                )
            pow2 = 1 << partial
            prime = next_prime(pow2)
            levels.append(
                PlanLevel(
                    index=i,
                    exponent=e,
                    bits=partial,
                    pow2=pow2,
                    prime=prime,
                    certified=primality_is_certified(prime),
                )
            )
        partial *= e + 1

    m = 231
    for lvl in levels:
        m *= lvl.prime**lvl.exponent
    tau_m = 8
    for lvl in levels:
        tau_m *= lvl.exponent + 1
    assert tau_m == k, "8 * prod(e_i + 1) over levels must reproduce k"

    return ConstructionPlan(
        k=k,
        t=t,
        r=r,
        exponents=tuple(exps),
        levels=tuple(levels),
        m=m,
        probabilistic_primes=tuple(l.prime for l in levels if not l.certified),
    )


def mixed_radix_decompose(d: int, plan: ConstructionPlan) -> MixedRadixDigits:
    """Digits of d in the plan's mixed radix: d = c0 + sum over levels of
    c_i * (e_1+1)...(e_{i-1}+1), with c0 in [0, 7] and c_i in [0, e_i].
    The radices multiply to k, so every d in [0, k-1] has unique digits."""
    if not 0 <= d < plan.k:
        raise ValueError(f"mixed_radix_decompose: d must be in [0, {plan.k - 1}], got {d}")
    c0 = d % 8
    q = d // 8
    upper = []
    for lvl in plan.levels:
        upper.append(q % (lvl.exponent + 1))
        q //= lvl.exponent + 1
    assert q == 0
    return MixedRadixDigits(c0, tuple(upper))


def mixed_radix_compose(digits: MixedRadixDigits, plan: ConstructionPlan) -> int:
    """Inverse of mixed_radix_decompose."""
    if not 0 <= digits.c0 <= 7:
        raise ValueError(f"c0 out of range: {digits.c0}")
    if len(digits.upper) != len(plan.levels):
        raise ValueError("digit count does not match plan levels")
    d = digits.c0
    weight = 8
    for c, lvl in zip(digits.upper, plan.levels):
        if not 0 <= c <= lvl.exponent:
            raise ValueError(f"digit {c} out of range at level {lvl.index}")
        d += c * weight
        weight *= lvl.exponent + 1
    return d


def digit_divisor(digits: MixedRadixDigits, plan: ConstructionPlan) -> int:
    """The divisor of m indexed by a digit vector."""
    value = DIVISORS_OF_231[digits.c0]
    for c, lvl in zip(digits.upper, plan.levels):
        if c:
            value *= lvl.prime**c
    return value


def plan_divisors(plan: ConstructionPlan) -> tuple[int, ...]:
    """All divisors of m, from the factorization known by construction."""
    fac = [(3, 1), (7, 1), (11, 1)] + [(l.prime, l.exponent) for l in plan.levels]
    return divisors_from_factorization(fac)


def _compute_claims(plan: ConstructionPlan) -> ClaimDiagnostics:
    exponent_fourth_root = tuple(
        (lvl.index, lvl.exponent**4 <= lvl.pow2)
        for lvl in plan.levels
        if lvl.index > plan.t
    )
    prime_ratio = []
    aggregate = Fraction(1)
    for lvl in plan.levels:
        q = Fraction(lvl.prime, lvl.pow2) ** lvl.exponent
        aggregate *= q
        prime_ratio.append((lvl.index, fraction_lt_exp(q, Fraction(1, 4**lvl.index))))
    digit_ratio = tuple(
        (c0, Fraction(DIVISORS_OF_231[c0], 1 << (c0 + 1)) < Fraction(10, 11))
        for c0 in range(8)
    )
    aggregate_below_exp = fraction_lt_exp(aggregate, Fraction(1, 192))
    aggregate_below_11_10 = aggregate < Fraction(11, 10)
    exp_below = exp_lt_fraction(Fraction(1, 192), Fraction(11, 10))
    all_hold = (
        all(ok for _, ok in exponent_fourth_root)
        and all(ok for _, ok in prime_ratio)
        and all(ok for _, ok in digit_ratio)
        and aggregate_below_exp
        and aggregate_below_11_10
        and exp_below
    )
    return ClaimDiagnostics(
        exponent_fourth_root=exponent_fourth_root,
        prime_ratio=tuple(prime_ratio),
        digit_ratio=digit_ratio,
        aggregate=aggregate,
        aggregate_below_exp=aggregate_below_exp,
        aggregate_below_11_10=aggregate_below_11_10,
        exp_below_11_10=exp_below,
        all_hold=all_hold,
    )


def verify_construction(
    plan: ConstructionPlan, direct_interlock: bool | None = None
) -> ConstructionReport:
    """Replay every digit placement with exact integer comparisons.

    For each d in [0, k-1] the indexed divisor d' must satisfy
    2^d < d' < 2^(d+1), except d = 0 whose slot holds the divisor 1 = 2^0
    exactly.  Also checks digit-map injectivity and the divisor-count
    identity tau(m) = k (from the construction's factorization; the p_i are
    distinct and exceed 11, so tau multiplies out directly).  Claim
    diagnostics are attached but do not gate `verified`.

    direct_interlock: None = run the full interlock cross-check when
    tau(m) is small enough; True/False forces it on or off.
    """
    k = plan.k
    seen: set[int] = set()
    first_failure: int | None = None
    for d in range(k):
        digits = mixed_radix_decompose(d, plan)
        dprime = digit_divisor(digits, plan)
        seen.add(dprime)
        if d == 0:
            ok = dprime == 1
        else:
            ok = (1 << d) < dprime < (1 << (d + 1))
        if not ok and first_failure is None:
            first_failure = d
    injective = len(seen) == k

    tau_m = 8
    for lvl in plan.levels:
        tau_m *= lvl.exponent + 1
    tau_ok = tau_m == k

    claims = _compute_claims(plan)
    verified = first_failure is None and injective and tau_ok

    if direct_interlock is None:
        direct_interlock = k <= _DIRECT_CHECK_CAP
    interlock_report = None
    if direct_interlock:
        div_m = plan_divisors(plan)
        div_n = tuple(1 << i for i in range(k + 1))
        interlock_report = check_interlock_divisors(plan.m, 1 << k, div_m, div_n)
        verified = verified and interlock_report.verdict

    plan.claims = claims
    plan.verified = verified
    return ConstructionReport(
        k=k,
        t=plan.t,
        dyadic_checks=k,
        first_failure=first_failure,
        tau_m=tau_m,
        tau_identity_ok=tau_ok,
        injective=injective,
        verified=verified,
        claims=claims,
        interlock_checked=direct_interlock,
        interlock_report=interlock_report,
    )


# --- plan serialization -------------------------------------------------------
#
# Integers are emitted as decimal strings so arbitrary-precision values
# survive any JSON tooling downstream.


def _claims_to_dict(c: ClaimDiagnostics) -> dict:
    return {
        "exponent_fourth_root": [[str(i), ok] for i, ok in c.exponent_fourth_root],
        "prime_ratio": [[str(i), ok] for i, ok in c.prime_ratio],
        "digit_ratio": [[str(i), ok] for i, ok in c.digit_ratio],
        "aggregate": f"{c.aggregate.numerator}/{c.aggregate.denominator}",
        "aggregate_below_exp": c.aggregate_below_exp,
        "aggregate_below_11_10": c.aggregate_below_11_10,
        "exp_below_11_10": c.exp_below_11_10,
        "all_hold": c.all_hold,
    }


def _claims_from_dict(d: dict) -> ClaimDiagnostics:
    num, den = d["aggregate"].split("/")
    return ClaimDiagnostics(
        exponent_fourth_root=tuple((int(i), ok) for i, ok in d["exponent_fourth_root"]),
        prime_ratio=tuple((int(i), ok) for i, ok in d["prime_ratio"]),
        digit_ratio=tuple((int(i), ok) for i, ok in d["digit_ratio"]),
        aggregate=Fraction(int(num), int(den)),
        aggregate_below_exp=d["aggregate_below_exp"],
        aggregate_below_11_10=d["aggregate_below_11_10"],
        exp_below_11_10=d["exp_below_11_10"],
        all_hold=d["all_hold"],
    )


def plan_to_dict(plan: ConstructionPlan) -> dict:
    return {
        "k": str(plan.k),
        "t": str(plan.t),
        "r": str(plan.r),
        "exponents": [str(e) for e in plan.exponents],
        "levels": [
            {
                "index": str(l.index),
                "exponent": str(l.exponent),
                "bits": str(l.bits),
                "pow2": str(l.pow2),
                "prime": str(l.prime),
                "certified": l.certified,
            }
            for l in plan.levels
        ],
        "m": str(plan.m),
        "probabilistic_primes": [str(p) for p in plan.probabilistic_primes],
        "claims": None if plan.claims is None else _claims_to_dict(plan.claims),
        "verified": plan.verified,
    }


def plan_from_dict(data: dict) -> ConstructionPlan:
    levels = tuple(
        PlanLevel(
            index=int(l["index"]),
            exponent=int(l["exponent"]),
            bits=int(l["bits"]),
            pow2=int(l["pow2"]),
            prime=int(l["prime"]),
            certified=bool(l["certified"]),
        )
        for l in data["levels"]
    )
    claims = None if data.get("claims") is None else _claims_from_dict(data["claims"])
    return ConstructionPlan(
        k=int(data["k"]),
        t=int(data["t"]),
        r=int(data["r"]),
        exponents=tuple(int(e) for e in data["exponents"]),
        levels=levels,
        m=int(data["m"]),
        probabilistic_primes=tuple(int(p) for p in data["probabilistic_primes"]),
        claims=claims,
        verified=bool(data["verified"]),
    )


def _check_fixed_divisor_table() -> None:
    if divisors(231) != DIVISORS_OF_231:
        raise AssertionError("fixed divisor table for 231 is wrong")


_check_fixed_divisor_table()

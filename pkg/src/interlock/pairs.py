"""Deciding whether two integers interlock.

(m, n) interlock when between every two consecutive divisors of n that both
exceed 1 there is a divisor of m strictly between them, and symmetrically
with the roles swapped.  "Strictly between" means strict inequality on both
sides.  A side with fewer than two divisors exceeding 1 (i.e. tau <= 2)
imposes no condition at all; pairs that interlock only through such vacuous
sides are flagged as degenerate rather than filtered out.

Two deciders are provided.  check_interlock implements the definition
directly and is the canonical semantics.  check_alternation decides the same
question for coprime inputs by merging the two divisor lists and requiring
the sources to alternate strictly; a common divisor > 1 shows up as a tie
and is reported as a violation instead of being broken arbitrarily.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .arith import divisors, smallest_prime_divisor, tau

FIRST = "first"
SECOND = "second"


@dataclass(frozen=True)
class GapWitness:
    """Why a pair fails: either an unseparated gap or a tie in the merge.

    kind "gap": `lower` and `upper` are consecutive divisors (> 1) of the
    side named by `side`, with no divisor of the other side strictly
    between them.  kind "tie": lower == upper is a common divisor > 1.
    """

    kind: str  # "gap" | "tie"
    side: str  # "first" | "second" | "both"
    lower: int
    upper: int


@dataclass(frozen=True)
class InterlockReport:
    verdict: bool
    method: str  # "definitional" | "alternation"
    first: int
    second: int
    degenerate: bool
    witness: GapWitness | None = None
    trace: tuple[int, ...] | None = None


@dataclass(frozen=True)
class TauRelation:
    """Divisor-count relation between the members of an oriented pair.

    Orientation puts `b` = the member whose smallest prime divisor is
    smaller and `a` = the other; for interlocking pairs the expected
    difference tau(a) - tau(b) is 0 when b < a and -1 when b > a.  The
    relation is pure arithmetic: it is computed whether or not the pair
    actually interlocks.
    """

    smaller_d2_side: str  # which argument has the smaller least prime
    order: str  # "less" | "greater" | "equal": b compared with a
    expected_tau_delta: int
    observed_tau_delta: int
    consistent: bool


def _above_one(n: int) -> tuple[int, ...]:
    return divisors(n)[1:]


def _first_unseparated_gap(
    own: tuple[int, ...], other: tuple[int, ...]
) -> tuple[int, int] | None:
    """First consecutive pair of `own` with no `other` entry strictly inside."""
    for lo, hi in zip(own, own[1:]):
        i = bisect_right(other, lo)
        if not (i < len(other) and other[i] < hi):
            return lo, hi
    return None


def check_interlock(m: int, n: int) -> InterlockReport:
    """Decide interlocking by the definition (the canonical semantics).

    On success the trace is the merged ascending list of all divisors > 1 of
    either member (duplicates collapsed).  On failure the witness names the
    first unseparated gap, checking the first argument's gaps first.
    """
    if m < 1 or n < 1:
        raise ValueError(f"check_interlock: inputs must be >= 1, got ({m}, {n})")
    return check_interlock_divisors(m, n, divisors(m), divisors(n))


def check_interlock_divisors(
    m: int, n: int, div_m: tuple[int, ...], div_n: tuple[int, ...]
) -> InterlockReport:
    """check_interlock for callers that already hold the complete sorted
    divisor lists (including 1), e.g. for numbers whose factorization is
    known by construction and should not be recomputed.
    """
    dm = div_m[1:] if div_m and div_m[0] == 1 else div_m
    dn = div_n[1:] if div_n and div_n[0] == 1 else div_n
    degenerate = len(dm) < 2 or len(dn) < 2
    gap = _first_unseparated_gap(dm, dn)
    if gap is not None:
        return InterlockReport(
            False, "definitional", m, n, degenerate,
            witness=GapWitness("gap", FIRST, *gap),
        )
    gap = _first_unseparated_gap(dn, dm)
    if gap is not None:
        return InterlockReport(
            False, "definitional", m, n, degenerate,
            witness=GapWitness("gap", SECOND, *gap),
        )
    trace = tuple(sorted(set(dm) | set(dn)))
    return InterlockReport(True, "definitional", m, n, degenerate, trace=trace)


def check_alternation(m: int, n: int) -> InterlockReport:
    """Decide interlocking by merging divisor lists and requiring strict
    alternation of sources.  Valid as an interlock test for coprime inputs;
    a common divisor > 1 yields verdict False with a tie witness.
    """
    if m < 1 or n < 1:
        raise ValueError(f"check_alternation: inputs must be >= 1, got ({m}, {n})")
    dm = _above_one(m)
    dn = _above_one(n)
    degenerate = len(dm) < 2 or len(dn) < 2
    merged = sorted([(d, FIRST) for d in dm] + [(d, SECOND) for d in dn])
    for (a, src_a), (b, src_b) in zip(merged, merged[1:]):
        if a == b:
            return InterlockReport(
                False, "alternation", m, n, degenerate,
                witness=GapWitness("tie", "both", a, b),
            )
        if src_a == src_b:
            return InterlockReport(
                False, "alternation", m, n, degenerate,
                witness=GapWitness("gap", src_a, a, b),
            )
    return InterlockReport(
        True, "alternation", m, n, degenerate,
        trace=tuple(d for d, _ in merged),
    )


def tau_relation(m: int, n: int) -> TauRelation:
    """Compute the divisor-count relation for a pair with distinct smallest
    prime divisors.  Orientation is handled internally; equal smallest
    primes and m = n are rejected because the relation is undefined there.
    """
    if m < 2 or n < 2:
        raise ValueError(f"tau_relation: inputs must be >= 2, got ({m}, {n})")
    if m == n:
        raise ValueError("tau_relation: m = n is excluded")
    pm = smallest_prime_divisor(m)
    pn = smallest_prime_divisor(n)
    if pm == pn:
        raise ValueError(
            f"tau_relation: both members have smallest prime divisor {pm}"
        )
    if pm < pn:
        smaller_side = FIRST
        a, b = n, m
    else:
        smaller_side = SECOND
        a, b = m, n
    order = "less" if b < a else "greater"
    expected = 0 if b < a else -1
    observed = tau(a) - tau(b)
    return TauRelation(smaller_side, order, expected, observed, expected == observed)

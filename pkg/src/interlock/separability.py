"""Separability: bounded exhaustive search for interlocking partners.

An integer n is separable when some m interlocks with it.  The search space
is finite: in any interlocking pair the larger member L satisfies
L < s * d2(L) (its top divisor gap must be cut by a divisor of the smaller
member s), and d2(L) is itself below the third-smallest divisor of s, so
every partner of n with tau(n) >= 3 lies in [2, n * d3(n)].  For n prime or 1
the fallback window [2, n^2] is used; those n are separable anyway through
vacuous pairs (any two distinct primes interlock degenerately) and are
reported with degenerate = True.

Candidate pruning inside the window:
  * tau filter: an interlocking pair with distinct smallest prime divisors
    has |tau(m) - tau(n)| <= 1, so only tau(m) in {tau(n)-1, tau(n),
    tau(n)+1} is tested.
  * parity filter (n = 2^k, k >= 2): an even partner would need 3 | m to cut
    the gap (2, 4), leaving consecutive divisors 2, 3 of m with no power of
    two between them; so only odd m is tested.
Both prunings are cross-validated against a pruning-free oracle in the test
suite rather than assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .arith import divisor_count_range, divisors, tau, warm_sieve
from .pairs import check_interlock

# Window sizes above this use one multiples sieve for all tau values instead
# of per-candidate factorization.
_TAU_SIEVE_THRESHOLD = 2048


@dataclass(frozen=True)
class SearchConfig:
    bound_override: int | None = None
    use_tau_pruning: bool = True
    use_parity_pruning: bool = True
    report_all_partners: bool = False

    def __post_init__(self):
        if self.bound_override is not None and self.bound_override < 2:
            raise ValueError("bound_override must be >= 2")


@dataclass(frozen=True)
class SeparabilityResult:
    n: int
    separable: bool
    degenerate: bool
    partners: tuple[int, ...]
    search_bound: int
    candidates_tested: int


@dataclass(frozen=True)
class ChunkScan:
    """Result of scanning one candidate sub-range.

    hits pairs each partner with its 1-based rank among the candidates that
    reached the full interlock check inside this chunk, so drivers can
    reconstruct the deterministic ascending-order test count regardless of
    how the range was split.
    """

    lo: int
    hi: int
    hits: tuple[tuple[int, int], ...]
    passed: int


def partner_search_bound(n: int) -> tuple[int, int]:
    """Window [lo, hi] that provably contains every partner of n when
    tau(n) >= 3; [2, n^2] otherwise.  The containment claim is enforced by
    the bound-soundness property test, not assumed here.
    """
    if n < 2:
        raise ValueError(f"partner_search_bound: n must be >= 2, got {n}")
    divs = divisors(n)
    if len(divs) >= 3:
        return 2, n * divs[2]
    return 2, n * n


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _tau_filter(tau_n: int) -> frozenset[int]:
    return frozenset({tau_n - 1, tau_n, tau_n + 1})


def scan_range(n: int, lo: int, hi: int, cfg: SearchConfig) -> ChunkScan:
    """Scan every candidate in [lo, hi] against n.  Pure: no early exit,
    no shared state beyond the sieve cache; safe to run per-chunk in
    parallel workers and merge with merge_chunk_scans.
    """
    tau_n = tau(n)
    allowed = _tau_filter(tau_n) if cfg.use_tau_pruning else None
    odd_only = cfg.use_parity_pruning and _is_power_of_two(n) and n >= 4
    skip_self = tau_n >= 3

    hits: list[tuple[int, int]] = []
    passed = 0
    if lo > hi:
        return ChunkScan(lo, hi, (), 0)

    taus = None
    if allowed is not None and hi - lo >= _TAU_SIEVE_THRESHOLD:
        taus = divisor_count_range(lo, hi)
    start = lo if not odd_only else lo | 1
    step = 2 if odd_only else 1
    for m in range(start, hi + 1, step):
        if skip_self and m == n:
            continue
        if allowed is not None:
            tm = taus[m - lo] if taus is not None else tau(m)
            if tm not in allowed:
                continue
        passed += 1
        if check_interlock(m, n).verdict:
            hits.append((m, passed))
    return ChunkScan(lo, hi, tuple(hits), passed)


def merge_chunk_scans(
    chunks: list[ChunkScan], report_all: bool
) -> tuple[tuple[int, ...], int]:
    """Combine ascending disjoint chunk scans into (partners, tested).

    tested reproduces the serial ascending-order count: with report_all it
    is the total number of fully checked candidates, otherwise the count up
    to and including the first hit (or the whole range when there is none).
    """
    chunks = sorted(chunks, key=lambda c: c.lo)
    if report_all:
        partners = tuple(m for c in chunks for m, _ in c.hits)
        return partners, sum(c.passed for c in chunks)
    tested = 0
    for c in chunks:
        if c.hits:
            m, rank = c.hits[0]
            return (m,), tested + rank
        tested += c.passed
    return (), tested


def partner_window(n: int, cfg: SearchConfig) -> tuple[int, int, bool]:
    """(lo, hi, degenerate) for the partner scan of n.

    n = 1 gets the empty window [2, 1]: it is degenerate-separable by
    convention (it interlocks with every prime vacuously), so nothing needs
    scanning and the partner list stays empty.
    """
    if n < 1:
        raise ValueError(f"partner search: n must be >= 1, got {n}")
    if n == 1:
        lo, hi = 2, 1
        degenerate = True
    else:
        lo, hi = partner_search_bound(n)
        degenerate = tau(n) <= 2
    if cfg.bound_override is not None:
        hi = cfg.bound_override
    return lo, hi, degenerate


def assemble_partner_result(
    n: int,
    hi: int,
    degenerate: bool,
    partners: tuple[int, ...],
    tested: int,
) -> SeparabilityResult:
    return SeparabilityResult(
        n=n,
        separable=bool(partners) or degenerate,
        degenerate=degenerate,
        partners=partners,
        search_bound=hi,
        candidates_tested=tested,
    )


def find_partner(n: int, cfg: SearchConfig = SearchConfig()) -> SeparabilityResult:
    """Ascending search for interlocking partners of n inside the proven
    window.  Returns the first partner unless cfg.report_all_partners; an
    exhausted window yields separable = False with the bound recorded.
    """
    lo, hi, degenerate = partner_window(n, cfg)
    if cfg.report_all_partners:
        scan = scan_range(n, lo, hi, cfg)
        partners, tested = merge_chunk_scans([scan], report_all=True)
    else:
        partners, tested = _scan_first_hit(n, lo, hi, cfg)
    return assemble_partner_result(n, hi, degenerate, partners, tested)


def _scan_first_hit(
    n: int, lo: int, hi: int, cfg: SearchConfig
) -> tuple[tuple[int, ...], int]:
    """Serial ascending scan stopping at the first partner."""
    tau_n = tau(n)
    allowed = _tau_filter(tau_n) if cfg.use_tau_pruning else None
    odd_only = cfg.use_parity_pruning and _is_power_of_two(n) and n >= 4
    skip_self = tau_n >= 3
    passed = 0
    start = lo if not odd_only else lo | 1
    step = 2 if odd_only else 1
    for m in range(start, hi + 1, step):
        if skip_self and m == n:
            continue
        if allowed is not None and tau(m) not in allowed:
            continue
        passed += 1
        if check_interlock(m, n).verdict:
            return (m,), passed
    return (), passed


def census(x: int, cfg: SearchConfig = SearchConfig()) -> list[SeparabilityResult]:
    """Separability results for every n <= x, ascending."""
    if x < 1:
        raise ValueError(f"census: x must be >= 1, got {x}")
    warm_sieve(min(4 * x, 1 << 22))
    return [find_partner(n, cfg) for n in range(1, x + 1)]


def count_separable(results, include_degenerate: bool = True) -> int:
    """A(x) over a result set; optionally excluding the degenerate rows
    (n = 1 and primes, separable only through vacuous pairs)."""
    return sum(
        1
        for r in results
        if r.separable and (include_degenerate or not r.degenerate)
    )


# --- census cache (JSON lines, append-only) ---------------------------------

_CACHE_FIELDS = ("n", "separable", "degenerate", "partners", "bound", "tested")


def result_to_record(r: SeparabilityResult) -> dict:
    return {
        "n": r.n,
        "separable": r.separable,
        "degenerate": r.degenerate,
        "partners": list(r.partners),
        "bound": r.search_bound,
        "tested": r.candidates_tested,
    }


def record_to_result(rec: dict) -> SeparabilityResult:
    return SeparabilityResult(
        n=int(rec["n"]),
        separable=bool(rec["separable"]),
        degenerate=bool(rec["degenerate"]),
        partners=tuple(int(p) for p in rec["partners"]),
        search_bound=int(rec["bound"]),
        candidates_tested=int(rec["tested"]),
    )


def load_census_cache(path: str | Path) -> dict[int, SeparabilityResult]:
    """Read cached rows; missing file means an empty cache."""
    path = Path(path)
    cached: dict[int, SeparabilityResult] = {}
    if not path.exists():
        return cached
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            r = record_to_result(rec)
            cached[r.n] = r
    return cached


def append_census_cache(path: str | Path, results) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        for r in results:
            fh.write(json.dumps(result_to_record(r), sort_keys=True) + "\n")


# --- exhaustive non-separability verification for powers of two -------------

VERIFIED_RESIDUES = frozenset({1, 2, 9, 10})


@dataclass(frozen=True)
class Pow2Report:
    """Exhaustion certificate for the non-separability of 2^k.

    The window (2^(k-1), 2^(k+2)) provably contains every possible partner:
    a partner must place a divisor strictly inside the top gap
    (2^(k-1), 2^k) of 2^k, so it exceeds 2^(k-1); and the general search
    bound caps it below 2^k * d3(2^k) = 2^(k+2).  confirmed = True means no
    candidate in the window interlocks with 2^k.
    """

    k: int
    n: int
    lo: int
    hi: int
    window_size: int
    odd_candidates: int
    tau_filtered: int
    fully_checked: int
    partners: tuple[int, ...]
    confirmed: bool


def pow2_scan_chunk(k: int, lo: int, hi: int) -> tuple[tuple[int, ...], int, int]:
    """Scan odd candidates in [lo, hi] for partners of 2^k.

    Returns (partners, odd_count, tau_survivors).  The tau filter is
    position-aware: an odd m below 2^k needs tau(m) = k, above it k + 1.
    Pure; chunkable.
    """
    n = 1 << k
    partners: list[int] = []
    odd_count = 0
    survivors = 0
    if lo > hi:
        return (), 0, 0
    taus = divisor_count_range(lo, hi) if hi - lo >= _TAU_SIEVE_THRESHOLD else None
    for m in range(lo | 1, hi + 1, 2):
        odd_count += 1
        tm = taus[m - lo] if taus is not None else tau(m)
        if tm != (k if m < n else k + 1):
            continue
        survivors += 1
        if check_interlock(m, n).verdict:
            partners.append(m)
    return tuple(partners), odd_count, survivors


def verify_pow2_nonseparable(k: int) -> Pow2Report:
    """Exhaustively confirm that 2^k has no interlocking partner.

    Only k > 2 with k = 1, 2, 9, 10 (mod 12) is accepted: those are the
    residue classes where non-separability is established; for other
    residues a partner may exist (e.g. 63 for k = 6), so exhaustion would
    be the wrong tool and find_partner should be used instead.
    """
    if k <= 2 or k % 12 not in VERIFIED_RESIDUES:
        raise ValueError(
            f"verify_pow2_nonseparable: k = {k} is outside the verified classes; "
            "non-separability of 2^k is only established for k > 2 with "
            "k = 1, 2, 9, 10 (mod 12), and other residues may admit partners"
        )
    n = 1 << k
    lo, hi = (1 << (k - 1)) + 1, (1 << (k + 2)) - 1
    partners, odd_count, survivors = pow2_scan_chunk(k, lo, hi)
    return Pow2Report(
        k=k,
        n=n,
        lo=lo,
        hi=hi,
        window_size=hi - lo + 1,
        odd_candidates=odd_count,
        tau_filtered=survivors,
        fully_checked=survivors,
        partners=partners,
        confirmed=not partners,
    )


def assemble_pow2_report(
    k: int, chunks: list[tuple[tuple[int, ...], int, int]], lo: int, hi: int
) -> Pow2Report:
    """Merge pow2_scan_chunk outputs (any order) into one report."""
    partners = tuple(sorted(m for c in chunks for m in c[0]))
    odd_count = sum(c[1] for c in chunks)
    survivors = sum(c[2] for c in chunks)
    return Pow2Report(
        k=k,
        n=1 << k,
        lo=lo,
        hi=hi,
        window_size=hi - lo + 1,
        odd_candidates=odd_count,
        tau_filtered=survivors,
        fully_checked=survivors,
        partners=partners,
        confirmed=not partners,
    )

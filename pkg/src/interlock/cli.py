"""Command-line surface.

Every invocation emits one JSON record {command, inputs, result, timing_ms,
version}: pretty-printed by default, one compact line with --jsonl.  Integers
that do not fit in a signed 64-bit word are emitted as decimal strings so no
downstream JSON tooling silently truncates them.  Payloads are byte-identical
across --jobs settings (timing aside): parallel scans are range-partitioned
and merged back in ascending order, reproducing the serial accounting.

Exit codes: 0 success; 1 a valid negative answer (verdict false, no partner,
not a member); 2 usage or domain error; 3 a comparison that the configured
precision cannot decide (see INTERLOCK_PRECISION_BITS).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arith import warm_sieve
from .construction import (
    ConstructionPlan,
    JumpParams,
    SearchBudgetError,
    build_pow2_partner,
    count_bounded_jumps,
    gap_census,
    gap_ratio,
    has_bounded_jumps,
    plan_from_dict,
    plan_to_dict,
    verify_construction,
)
from .pairs import check_alternation, check_interlock
from .precision import PrecisionError
from .primorials import enumerate_primorial_pairs, placement_consensus
from .separability import (
    SearchConfig,
    append_census_cache,
    assemble_partner_result,
    assemble_pow2_report,
    count_separable,
    find_partner,
    load_census_cache,
    merge_chunk_scans,
    partner_window,
    pow2_scan_chunk,
    result_to_record,
    scan_range,
    verify_pow2_nonseparable,
    VERIFIED_RESIDUES,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

_INT64_MAX = (1 << 63) - 1

# Below this many candidates a parallel pool costs more than it saves.
_MIN_CHUNK = 512


def _jsonify(value):
    """JSON-safe payloads: big ints to decimal strings, dataclasses to dicts,
    Fractions to 'p/q' strings, tuples to lists."""
    if is_dataclass(value) and not isinstance(value, type):
        return _jsonify(asdict(value))
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value if -_INT64_MAX <= value <= _INT64_MAX else str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return str(value)


def _emit(record: dict, jsonl: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if jsonl:
        stream.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        stream.write(json.dumps(record, sort_keys=True, indent=2) + "\n")


def _chunks(lo: int, hi: int, jobs: int) -> list[tuple[int, int]]:
    """Deterministic split of [lo, hi] into at most 4*jobs pieces."""
    total = hi - lo + 1
    if total <= 0:
        return []
    pieces = max(1, min(4 * jobs, total // _MIN_CHUNK or 1))
    size = (total + pieces - 1) // pieces
    out = []
    start = lo
    while start <= hi:
        out.append((start, min(start + size - 1, hi)))
        start += size
    return out


def _partner_chunk_worker(args):
    n, lo, hi, cfg = args
    return scan_range(n, lo, hi, cfg)


def _pow2_chunk_worker(args):
    k, lo, hi = args
    return pow2_scan_chunk(k, lo, hi)


def _census_worker(args):
    n, cfg = args
    return find_partner(n, cfg)


def _run_partner(n: int, cfg: SearchConfig, jobs: int):
    lo, hi, degenerate = partner_window(n, cfg)
    windows = _chunks(lo, hi, jobs)
    if jobs <= 1 or len(windows) <= 1:
        return find_partner(n, cfg)
    warm_sieve(min(hi, 1 << 22))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        scans = list(pool.map(_partner_chunk_worker, [(n, a, b, cfg) for a, b in windows]))
    partners, tested = merge_chunk_scans(scans, cfg.report_all_partners)
    return assemble_partner_result(n, hi, degenerate, partners, tested)


# --- subcommand handlers: each returns (result_payload, exit_code) -----------


def _cmd_check(args):
    decide = check_alternation if args.alternation else check_interlock
    report = decide(args.m, args.n)
    return report, EXIT_OK if report.verdict else EXIT_NEGATIVE


def _cmd_partner(args):
    cfg = SearchConfig(
        bound_override=args.bound,
        use_tau_pruning=not args.no_prune,
        use_parity_pruning=not args.no_prune,
        report_all_partners=args.all,
    )
    result = _run_partner(args.n, cfg, args.jobs)
    return result, EXIT_OK if result.separable else EXIT_NEGATIVE


def _cmd_census(args):
    cfg = SearchConfig(
        use_tau_pruning=not args.no_prune,
        use_parity_pruning=not args.no_prune,
        report_all_partners=args.all,
    )
    cached = {}
    if args.cache and not args.recompute:
        cached = load_census_cache(args.cache)
    todo = [n for n in range(1, args.max + 1) if n not in cached]
    warm_sieve(min(4 * args.max, 1 << 22))
    if args.jobs > 1 and len(todo) > 8:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            fresh = list(pool.map(_census_worker, [(n, cfg) for n in todo], chunksize=16))
    else:
        fresh = [find_partner(n, cfg) for n in todo]
    if args.cache:
        if args.recompute and Path(args.cache).exists():
            Path(args.cache).unlink()
        append_census_cache(args.cache, fresh)
    rows = sorted(
        [r for r in cached.values() if r.n <= args.max] + fresh, key=lambda r: r.n
    )
    payload = {
        "max": args.max,
        "separable_count": count_separable(rows),
        "separable_count_nondegenerate": count_separable(rows, include_degenerate=False),
        "from_cache": len(cached),
        "computed": len(fresh),
        "rows": [result_to_record(r) for r in rows],
    }
    return payload, EXIT_OK


def _cmd_pow2(args):
    k = args.k
    if k > 2 and k % 12 in VERIFIED_RESIDUES:
        if args.jobs > 1:
            lo, hi = (1 << (k - 1)) + 1, (1 << (k + 2)) - 1
            windows = _chunks(lo, hi, args.jobs)
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                parts = list(pool.map(_pow2_chunk_worker, [(k, a, b) for a, b in windows]))
            report = assemble_pow2_report(k, parts, lo, hi)
        else:
            report = verify_pow2_nonseparable(k)
        payload = {"mode": "exhaustive-verification", "report": report}
        return payload, EXIT_OK if report.confirmed else EXIT_NEGATIVE
    cfg = SearchConfig()
    result = _run_partner(1 << k, cfg, args.jobs)
    payload = {"mode": "partner-search", "result": result}
    return payload, EXIT_OK if result.separable else EXIT_NEGATIVE


def _cmd_construct(args):
    if args.load:
        with open(args.load, "r", encoding="utf-8") as fh:
            plan = plan_from_dict(json.load(fh))
    else:
        if args.k is None or args.t is None:
            raise ValueError("construct: provide --k and --t, or --load PATH")
        plan = build_pow2_partner(args.k, args.t, prime_search_bits=args.budget_bits)
    report = verify_construction(
        plan, direct_interlock=True if args.verify_direct else None
    )
    if args.save:
        with open(args.save, "w", encoding="utf-8") as fh:
            json.dump(plan_to_dict(plan), fh, sort_keys=True, indent=2)
    payload = {"plan": plan_to_dict(plan), "verification": report}
    return payload, EXIT_OK if report.verified else EXIT_NEGATIVE


def _params_from_args(args) -> JumpParams:
    if (args.t is None) == (args.C is None):
        raise ValueError("provide exactly one of --t / --C")
    if args.t is not None:
        return JumpParams.from_t(args.t)
    return JumpParams.from_override(Fraction(args.C))


def _cmd_s_member(args):
    params = _params_from_args(args)
    check = has_bounded_jumps(args.n, params)
    payload = {
        "n": args.n,
        "threshold": params.describe(),
        "member": check.bounded,
        "witness": check.witness,
    }
    return payload, EXIT_OK if check.bounded else EXIT_NEGATIVE


def _cmd_s_count(args):
    params = _params_from_args(args)
    count = count_bounded_jumps(args.max, params)
    payload = {"max": args.max, "threshold": params.describe(), "count": count}
    return payload, EXIT_OK


def _cmd_gaps(args):
    count = gap_census(args.x, args.y, args.z)
    payload = {
        "x": args.x,
        "y": args.y,
        "z": args.z,
        "count": count,
        "scaled_ratio": gap_ratio(args.x, args.y, args.z, count),
    }
    return payload, EXIT_OK


def _format_primorial_table(splits, consensus_report) -> str:
    lines = []
    for s in splits:
        m_fac = "*".join(str(p) for p in s.m_primes) or "1"
        n_fac = "*".join(str(p) for p in s.n_primes) or "1"
        flag = "  [degenerate]" if s.degenerate else ""
        lines.append(f"m = {s.m} = {m_fac}   n = {s.n} = {n_fac}{flag}")
        if s.trace:
            lines.append("  merged: " + " < ".join(str(d) for d in s.trace))
    if not splits:
        lines.append("no interlocking splits")
    if consensus_report is not None:
        if consensus_report.consensus:
            lines.append(
                "consensus: "
                + "  ".join(f"{p}->{s}" for p, s in consensus_report.consensus.items())
            )
        if consensus_report.contradiction:
            c = consensus_report.contradiction
            lines.append(f"forced-chain contradiction: {c.reason}")
        if consensus_report.parity_certificate:
            pc = consensus_report.parity_certificate
            lines.append(
                f"parity certificate: every split has divisor-count gap >= "
                f"{pc.min_tau_gap} > {pc.required_max}"
            )
    return "\n".join(lines)


def _cmd_primorial(args):
    splits = enumerate_primorial_pairs(args.k)
    consensus_report = placement_consensus(args.k) if args.consensus else None
    if args.table:
        print(_format_primorial_table(splits, consensus_report))
    payload = {
        "k": args.k,
        "count": len(splits),
        "splits": splits,
    }
    if consensus_report is not None:
        payload["consensus"] = consensus_report
    return payload, EXIT_OK


def _add_common_flags(p: argparse.ArgumentParser, top: bool = False) -> None:
    # Accepted both before and after the subcommand; the later occurrence
    # wins, and an absent subcommand-level flag never clobbers the global.
    p.add_argument(
        "--jsonl",
        action="store_true",
        default=False if top else argparse.SUPPRESS,
        help="one compact JSON line",
    )
    p.add_argument(
        "--jobs",
        type=int,
        default=(os.cpu_count() or 1) if top else argparse.SUPPRESS,
        help="worker processes for range scans (default: all cores)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interlock",
        description="Interlocking divisor pairs: checks, searches, constructions.",
    )
    _add_common_flags(parser, top=True)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        _add_common_flags(p)
        return p

    p = add_parser("check", help="interlock verdict and merged trace")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument(
        "--alternation",
        action="store_true",
        help="use the merge-alternation decider (coprime inputs)",
    )
    p.set_defaults(fn=_cmd_check)

    p = add_parser("partner", help="search the proven window for partners")
    p.add_argument("n", type=int)
    p.add_argument("--all", action="store_true", help="report every partner")
    p.add_argument("--bound", type=int, default=None, help="override the window top")
    p.add_argument("--no-prune", action="store_true", help="disable all pruning")
    p.set_defaults(fn=_cmd_partner)

    p = add_parser("census", help="separability of every n <= max")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--cache", type=str, default=None, help="JSONL cache path")
    p.add_argument("--recompute", action="store_true", help="ignore cached rows")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--all", action="store_true", help="report every partner per n")
    p.set_defaults(fn=_cmd_census)

    p = add_parser(
        "pow2",
        help="2^k: exhaustive non-separability verification in the proven "
        "residue classes, partner search otherwise",
    )
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_pow2)

    p = add_parser("construct", help="build and verify a 2^k partner plan")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument(
        "--verify-direct",
        action="store_true",
        help="force the full interlock cross-check",
    )
    p.add_argument("--save", type=str, default=None, help="write plan JSON here")
    p.add_argument("--load", type=str, default=None, help="re-verify a saved plan")
    p.add_argument(
        "--budget-bits",
        type=int,
        default=1024,
        help="largest 2^bits allowed in the next-prime search",
    )
    p.set_defaults(fn=_cmd_construct)

    p = add_parser("s-member", help="bounded-divisor-jump membership")
    p.add_argument("n", type=int)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--C", type=str, default=None, help="direct threshold (rational)")
    p.set_defaults(fn=_cmd_s_member)

    p = add_parser("s-count", help="count members up to a bound")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--C", type=str, default=None)
    p.set_defaults(fn=_cmd_s_count)

    p = add_parser("gaps", help="count n <= x with no divisor in [y, z]")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.set_defaults(fn=_cmd_gaps)

    p = add_parser("primorial", help="interlocking splits of the first k primes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--consensus",
        action="store_true",
        help="per-prime placement consensus and forced chain",
    )
    p.add_argument("--table", action="store_true", help="human-readable table first")
    p.set_defaults(fn=_cmd_primorial)

    return parser


def _inputs_echo(args) -> dict:
    skip = {"fn", "command", "jsonl", "jobs"}
    return {k: _jsonify(v) for k, v in vars(args).items() if k not in skip}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        result, code = args.fn(args)
    except PrecisionError as exc:
        record = {
            "command": args.command,
            "inputs": _inputs_echo(args),
            "result": {"error": "precision-indeterminate", "message": str(exc)},
            "timing_ms": round((time.perf_counter() - started) * 1000, 3),
            "version": __version__,
        }
        _emit(record, args.jsonl, sys.stderr)
        return EXIT_PRECISION
    except SearchBudgetError as exc:
        record = {
            "command": args.command,
            "inputs": _inputs_echo(args),
            "result": {"error": "budget-exceeded", "message": str(exc)},
            "timing_ms": round((time.perf_counter() - started) * 1000, 3),
            "version": __version__,
        }
        _emit(record, args.jsonl, sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        record = {
            "command": args.command,
            "inputs": _inputs_echo(args),
            "result": {"error": "usage", "message": str(exc)},
            "timing_ms": round((time.perf_counter() - started) * 1000, 3),
            "version": __version__,
        }
        _emit(record, args.jsonl, sys.stderr)
        return EXIT_USAGE
    record = {
        "command": args.command,
        "inputs": _inputs_echo(args),
        "result": _jsonify(result),
        "timing_ms": round((time.perf_counter() - started) * 1000, 3),
        "version": __version__,
    }
    _emit(record, args.jsonl)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

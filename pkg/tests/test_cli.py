"""CLI surface: payload shapes, exit codes, determinism across --jobs, and
the census cache."""

import json

import mpmath
import pytest

from interlock.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    text = out.out or out.err
    return code, json.loads(text)


def strip_volatile(record):
    record = dict(record)
    record.pop("timing_ms", None)
    return record


def test_check_true_exit_zero(capsys):
    code, rec = invoke(capsys, "--jsonl", "check", "63", "64")
    assert code == 0
    assert rec["command"] == "check"
    assert rec["result"]["verdict"] is True
    assert rec["result"]["trace"] == [2, 3, 4, 7, 8, 9, 16, 21, 32, 63, 64]
    assert rec["version"]


def test_check_false_exit_one(capsys):
    code, rec = invoke(capsys, "--jsonl", "check", "6", "6")
    assert code == 1
    assert rec["result"]["verdict"] is False
    assert rec["result"]["witness"]["lower"] == 2


def test_check_zero_input_usage_error(capsys):
    code, rec = invoke(capsys, "--jsonl", "check", "0", "5")
    assert code == 2
    assert rec["result"]["error"] == "usage"


def test_partner_payloads(capsys):
    code, rec = invoke(capsys, "--jsonl", "partner", "64")
    assert code == 0
    assert rec["result"]["partners"] == [63]
    code, rec = invoke(capsys, "--jsonl", "partner", "512")
    assert code == 1
    assert rec["result"]["partners"] == []
    assert rec["result"]["search_bound"] == 2048


def test_partner_jobs_determinism(capsys):
    _, rec1 = invoke(capsys, "--jsonl", "partner", "64", "--all", "--jobs", "1")
    _, rec2 = invoke(capsys, "--jsonl", "partner", "64", "--all", "--jobs", "3")
    assert strip_volatile(rec1) == strip_volatile(rec2)
    _, rec1 = invoke(capsys, "--jsonl", "partner", "210", "--jobs", "1")
    _, rec2 = invoke(capsys, "--jsonl", "partner", "210", "--jobs", "4")
    assert strip_volatile(rec1) == strip_volatile(rec2)
    # a window wide enough to really fan out over the pool
    _, rec1 = invoke(capsys, "--jsonl", "partner", "2048", "--all", "--jobs", "1")
    _, rec2 = invoke(capsys, "--jsonl", "partner", "2048", "--all", "--jobs", "4")
    assert strip_volatile(rec1) == strip_volatile(rec2)


def test_pow2_verifier_and_search_modes(capsys):
    code, rec = invoke(capsys, "--jsonl", "pow2", "--k", "9", "--jobs", "1")
    assert code == 0
    assert rec["result"]["mode"] == "exhaustive-verification"
    assert rec["result"]["report"]["confirmed"] is True
    assert rec["result"]["report"]["partners"] == []
    code, rec = invoke(capsys, "--jsonl", "pow2", "--k", "6", "--jobs", "1")
    assert code == 0
    assert rec["result"]["mode"] == "partner-search"
    assert rec["result"]["result"]["partners"] == [63]


def test_pow2_jobs_determinism(capsys):
    _, rec1 = invoke(capsys, "--jsonl", "pow2", "--k", "10", "--jobs", "1")
    _, rec2 = invoke(capsys, "--jsonl", "pow2", "--k", "10", "--jobs", "4")
    assert strip_volatile(rec1) == strip_volatile(rec2)


def test_construct_and_reload(tmp_path, capsys):
    path = tmp_path / "plan.json"
    code, rec = invoke(
        capsys, "--jsonl", "construct", "--k", "32", "--t", "5",
        "--verify-direct", "--save", str(path),
    )
    assert code == 0
    result = rec["result"]
    assert result["plan"]["m"] == str(231 * 257 * 65537)
    assert result["verification"]["verified"] is True
    assert result["verification"]["interlock_report"]["verdict"] is True
    assert path.exists()
    code, rec = invoke(capsys, "--jsonl", "construct", "--load", str(path))
    assert code == 0
    assert rec["result"]["verification"]["verified"] is True


def test_construct_usage_errors(capsys):
    code, rec = invoke(capsys, "--jsonl", "construct", "--k", "48", "--t", "5")
    assert code == 2
    assert rec["result"]["error"] == "usage"
    code, rec = invoke(capsys, "--jsonl", "construct")
    assert code == 2
    code, rec = invoke(
        capsys, "--jsonl", "construct", "--k", "8192", "--t", "4",
        "--budget-bits", "128",
    )
    assert code == 2
    assert rec["result"]["error"] == "budget-exceeded"


def test_s_member_and_exit_codes(capsys):
    code, rec = invoke(capsys, "--jsonl", "s-member", "12", "--t", "5")
    assert code == 0 and rec["result"]["member"] is True
    code, rec = invoke(capsys, "--jsonl", "s-member", "514", "--t", "5")
    assert code == 1
    assert rec["result"]["witness"] == [2, 257]
    code, rec = invoke(capsys, "--jsonl", "s-member", "5", "--t", "5", "--C", "3")
    assert code == 2  # both threshold forms at once


def test_s_member_precision_exit_three(capsys, monkeypatch):
    monkeypatch.setenv("INTERLOCK_PRECISION_BITS", "32")
    with mpmath.workprec(1200):
        scaled = int(mpmath.floor(mpmath.log(3) * mpmath.mpf(10) ** 200))
    razor = f"{scaled}/{10**200}"
    code, rec = invoke(capsys, "--jsonl", "s-member", "3", "--C", razor)
    assert code == 3
    assert rec["result"]["error"] == "precision-indeterminate"


def test_s_count(capsys):
    code, rec = invoke(capsys, "--jsonl", "s-count", "--max", "1000", "--C", "5")
    assert code == 0
    assert rec["result"]["count"] > 500
    code, rec = invoke(capsys, "--jsonl", "s-count", "--max", "100000", "--t", "12")
    assert code == 0 and rec["result"]["count"] == 100000


def test_gaps(capsys):
    code, rec = invoke(capsys, "--jsonl", "gaps", "--x", "30", "--y", "3", "--z", "5")
    assert code == 0
    assert rec["result"]["count"] == 12
    assert 0 < rec["result"]["scaled_ratio"] < 1
    code, rec = invoke(capsys, "--jsonl", "gaps", "--x", "10", "--y", "1", "--z", "5")
    assert code == 2


def test_primorial_payloads(capsys):
    code, rec = invoke(capsys, "--jsonl", "primorial", "--k", "8")
    assert code == 0
    assert rec["result"]["count"] == 1
    split = rec["result"]["splits"][0]
    assert split["m"] == 2470 and split["n"] == 3927
    code, rec = invoke(capsys, "--jsonl", "primorial", "--k", "10")
    assert code == 0  # an empty enumeration is still a successful answer
    assert rec["result"]["count"] == 0


def test_primorial_consensus_payload(capsys):
    code, rec = invoke(capsys, "--jsonl", "primorial", "--k", "10", "--consensus")
    assert code == 0
    consensus = rec["result"]["consensus"]
    assert consensus["contradiction"]["lower"] == 23
    assert consensus["contradiction"]["upper"] == 26


def test_census_cache_and_determinism(tmp_path, capsys):
    cache = tmp_path / "census.jsonl"
    code, cold = invoke(
        capsys, "--jsonl", "census", "--max", "40", "--cache", str(cache), "--jobs", "1"
    )
    assert code == 0
    assert cold["result"]["computed"] == 40 and cold["result"]["from_cache"] == 0
    code, warm = invoke(
        capsys, "--jsonl", "census", "--max", "40", "--cache", str(cache), "--jobs", "1"
    )
    assert warm["result"]["from_cache"] == 40 and warm["result"]["computed"] == 0
    assert cold["result"]["rows"] == warm["result"]["rows"]
    code, par = invoke(capsys, "--jsonl", "census", "--max", "40", "--jobs", "3")
    assert par["result"]["rows"] == cold["result"]["rows"]
    assert cold["result"]["separable_count"] == par["result"]["separable_count"]


def test_big_integers_cross_as_strings(capsys):
    code, rec = invoke(capsys, "--jsonl", "construct", "--k", "256", "--t", "4")
    assert code == 0
    m = rec["result"]["plan"]["m"]
    assert isinstance(m, str) and int(m) > 2**255
    # every big value in levels is a decimal string round-trippable to int
    for level in rec["result"]["plan"]["levels"]:
        assert int(level["pow2"]) and int(level["prime"])


def test_inputs_echo(capsys):
    _, rec = invoke(capsys, "--jsonl", "gaps", "--x", "100", "--y", "2", "--z", "10")
    assert rec["inputs"] == {"x": 100, "y": 2, "z": 10}

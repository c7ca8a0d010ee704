import json
import subprocess
import sys
from pathlib import Path

import pytest

from fusionkit.cli import COMMANDS, UsageError, emit, execute, main, parse_request, render_text, request_to_argv

GOLDEN = Path(__file__).parent / "golden"
JSON = ["--format", "json", "--no-timing"]

CASES = {
    "durfee": ["durfee", "--shape", "9,9,9,7,7,3,3,3,3/5,5,3,3,3,3,2"],
    "contents": ["contents", "--shape", "5,3,3,3,3/3,3,2"],
    "irreducible": ["irreducible", "-N", "2", "--module", "1@0", "--module", "1@1"],
    "fusion": ["fusion", "--shape", "1,1"],
    "dim": ["dim", "--shape", "2,1", "-N", "3"],
    "rmatrix": ["rmatrix", "--shape", "1", "--shape", "1", "-N", "2"],
    "rmatrix_at": ["rmatrix", "--shape", "1", "--shape", "1", "-N", "2", "--at", "1/2"],
    "intertwiner": ["intertwiner", "--shape", "1", "--shape", "1", "-N", "2", "--z", "0"],
    "verify": ["verify", "--suite", "durfee", "--max-boxes", "3"],
    "enumerate": ["enumerate", "--max-boxes", "2"],
}


def run_cli(args):
    return subprocess.run([sys.executable, "-m", "fusionkit", *args], capture_output=True)


def in_process(args) -> bytes:
    req = parse_request(args)
    return emit(execute(req), req.fmt)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    out = in_process(CASES[name] + JSON)
    assert out == (GOLDEN / f"{name}.json").read_bytes()


@pytest.mark.parametrize("name", ["durfee", "contents", "irreducible"])
def test_byte_identical_subprocess(name):
    first = run_cli(CASES[name] + JSON)
    second = run_cli(CASES[name] + JSON)
    assert first.returncode == 0
    assert first.stdout == second.stdout == (GOLDEN / f"{name}.json").read_bytes()


def test_golden_content():
    d = json.loads((GOLDEN / "durfee.json").read_text())["result"]
    assert (d["rank"], d["convex"], d["concave"], d["ell"]) == (6, 9, 3, 8)
    c = json.loads((GOLDEN / "contents.json").read_text())["result"]
    assert c["contents"] == [-3, -4, -2, -3, 0, -1, -2, 3, 4]
    r = json.loads((GOLDEN / "irreducible.json").read_text())["result"]
    assert r["verdict"] == "reducible"
    assert r["failing_pairs"] == [{"i": 1, "j": 2, "a": 0, "invertible": False}]
    f = json.loads((GOLDEN / "fusion.json").read_text())["result"]
    assert f["text"] == "1·id − 1·(1 2)"


def test_timing_field():
    rep = json.loads(in_process(CASES["durfee"] + ["--format", "json"]))
    assert isinstance(rep["elapsed_ms"], int)


@pytest.mark.parametrize("name", sorted(CASES))
def test_roundtrip(name):
    req = parse_request(CASES[name] + ["--seed", "7"])
    assert parse_request(request_to_argv(req)) == req


@pytest.mark.parametrize("name", sorted(CASES))
def test_text_output(name, capsys):
    assert main(CASES[name]) == 0
    out = capsys.readouterr().out
    assert out.strip()
    assert render_text(execute(parse_request(CASES[name]))) in out


def test_exit_codes(capsys):
    assert main(["durfee", "--shape", "2,3"]) == 2  # not a partition
    assert main(["dim", "--shape", "1,1,1", "-N", "0"]) == 2
    assert main(["rmatrix", "--shape", "1", "-N", "2"]) == 2  # needs two shapes
    assert main(["rmatrix", "--shape", "1", "--shape", "1", "-N", "2", "--at", "0"]) == 2  # pole
    assert main(["fusion", "--shape", "4,4"]) == 3  # above the fusion_n guard
    capsys.readouterr()


def test_argparse_errors():
    assert run_cli(["frobnicate"]).returncode == 2
    assert run_cli(["durfee"]).returncode == 2


def test_usage_error_type():
    with pytest.raises(UsageError):
        parse_request(["intertwiner", "--shape", "1", "-N", "2", "--z", "0"])


def test_help_lists_commands():
    out = run_cli(["--help"]).stdout.decode()
    for cmd in COMMANDS:
        assert cmd in out


def test_verify_failure_exit_code(monkeypatch):
    from fusionkit import cli, suites

    def broken(*a, **k):
        res = suites.SuiteResult("durfee")
        res.check(False, "forced")
        return res

    monkeypatch.setattr(cli, "run_suite", broken)
    assert main(["verify", "--suite", "durfee"]) == 1

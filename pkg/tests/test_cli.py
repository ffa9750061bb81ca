from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from knotinv.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_poly_golden():
    code, out, _ = call("poly", "--knot", "3_1", "--which", "homfly")
    assert code == 0
    assert out.strip() == "-1*a^-4 + 2*a^-2 + 1*a^-2*z^2"


def test_criterion_inconclusive():
    code, out, _ = call("criterion", "--point", "a=1,z=0", "--orders", "1,2")
    assert code == 0
    assert "Inconclusive" in out


def test_kanenobu_on_figure_eight():
    _, q, _ = call("eval", "--inv", "q_deriv(1; -2)", "--knot", "4_1")
    _, j, _ = call("eval", "--inv", "jones_deriv(2; 1)", "--knot", "4_1")
    assert int(q) - int(j) == 0
    assert int(j) == 6


COMMANDS = [
    ["poly", "--knot", "4_1", "--which", "kauffman"],
    ["poly", "--knot", "3_1#4_1", "--which", "jones"],
    ["eval", "--inv", "a2 * jones_deriv(3; 1)", "--knot", "3_1"],
    ["growth", "--inv", "jones_deriv(1; 2)", "--base", "unknot", "--pattern", "3_1", "--imax", "6", "--degree", "2"],
    ["criterion", "--point", "a=2,z=0", "--orders", "1,2"],
    ["locus", "--knot", "3_1,4_1"],
    ["hat", "--inv", "a2", "--degree", "2", "--knot", "3_1", "--bar", "4_1"],
    ["hat", "--inv", "a2", "--degree", "2", "--knot", "4_1", "--star", "3_1"],
    ["hat", "--inv", "a2", "--degree", "2", "--knot", "unknot", "--patterns", "3_1"],
    ["rank", "--invs", "1;a2;jones_deriv(3; 1)", "--knots", "unknot,3_1,4_1,5_1"],
    ["singular", "--inv", "a2", "--knot", "3_1", "--points", "0"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_json_text_matches_human_output(argv):
    code, human, _ = call(*argv)
    assert code == 0
    code, out, _ = call("--json", *argv)
    assert code == 0
    payload = json.loads(out)
    assert payload["text"] == human.rstrip("\n")
    # deterministic
    assert call("--json", *argv)[1] == out


def test_subcommand_level_json_flag():
    _, a, _ = call("--json", "eval", "--inv", "a2", "--knot", "3_1")
    _, b, _ = call("eval", "--inv", "a2", "--knot", "3_1", "--json")
    assert a == b


@pytest.mark.parametrize(
    "argv, code_name",
    [
        (["eval", "--inv", "a2", "--knot", "9_99"], "UnknownKnot"),
        (["eval", "--inv", "jones_deriv(3 1)", "--knot", "3_1"], "SyntaxError"),
        (["criterion", "--point", "a=0,z=1", "--orders", "0,0"], "PoleAtZero"),
        (["criterion", "--point", "a=1", "--orders", "0,0"], "SyntaxError"),
        (["criterion", "--point", "a=1,z=??", "--orders", "0,0"], "SyntaxError"),
    ],
)
def test_domain_errors_exit_2(argv, code_name):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith(f"error: {code_name}:")
    code, out, err = call("--json", *argv)
    assert code == 2
    assert json.loads(out)["error"]["code"] == code_name


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["poly", "--knot", "3_1"],
        ["poly", "--knot", "3_1", "--which", "nope"],
        ["criterion", "--point", "a=1,z=0", "--orders", "x,y"],
        ["hat", "--inv", "a2", "--degree", "2", "--knot", "3_1", "--bar", "4_1", "--star", "3_1"],
    ],
)
def test_usage_errors_exit_1(argv):
    code, _, err = call(*argv)
    assert code == 1
    assert len(err.strip().splitlines()) == 1 and err.startswith("error: UsageError:")


def test_table_override(tmp_path, monkeypatch):
    path = tmp_path / "t.jsonl"
    path.write_text('{"name": "tref", "pd": [[1,5,2,4],[3,1,4,6],[5,3,6,2]]}\n')
    monkeypatch.setenv("KNOTTABLE", str(path))
    code, out, _ = call("eval", "--inv", "a2", "--knot", "tref")
    assert code == 0 and out.strip() == "1"
    code, _, err = call("eval", "--inv", "a2", "--knot", "3_1")
    assert code == 2 and "UnknownKnot" in err
    code, _, err = call("--table", str(tmp_path / "missing.jsonl"), "eval", "--inv", "a2", "--knot", "3_1")
    assert code == 2 and "FileNotFound" in err


def test_malformed_table_exit_2(tmp_path):
    path = tmp_path / "t.jsonl"
    path.write_text('{"name": "x"}\n')
    code, _, err = call("--table", str(path), "eval", "--inv", "a2", "--knot", "x")
    assert code == 2 and "MalformedEntry" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "knotinv", "eval", "--inv", "a2", "--knot", "4_1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "-1"

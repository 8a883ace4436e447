from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cma.cli import run

from conftest import jordan_sum


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def matrices(tmp_path, Q):
    return {
        "c1": _write(tmp_path, "c1.json", jordan_sum(Q, (3, 0), (1, 0), (1, 1)).to_json()),
        "d1": _write(tmp_path, "d1.json", jordan_sum(Q, (3, 1), (2, 1)).to_json()),
        "c2": _write(tmp_path, "c2.json", jordan_sum(Q, (5, 0), (4, 0), (1, 0)).to_json()),
        "d2": _write(tmp_path, "d2.json", jordan_sum(Q, (5, 0), (2, 0), (1, 0)).to_json()),
    }


def _run(capsys, argv):
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_eldiv(capsys, matrices):
    code, out = _run(capsys, ["eldiv", "--in", matrices["c1"]])
    assert code == 0
    assert out["elementary_divisors"] == [{"irr": "x-1", "exps": [1]}, {"irr": "x", "exps": [3, 1]}]
    assert out["R"] == [{"divisor": "x^3", "P": [1, 3], "J": [2, 3]}]


def test_sequiv_exit_codes(capsys, matrices):
    code, out = _run(capsys, ["sequiv", "--a", matrices["c1"], "--b", matrices["d1"]])
    assert code == 0 and out["equivalent"]
    assert out["certificate"] == [
        {"src": {"irr": "x", "exp": 3}, "dst": {"irr": "x-1", "exp": 3}, "mode": "JTransform"}
    ]
    code, out = _run(capsys, ["sequiv", "--a", matrices["c2"], "--b", matrices["d2"]])
    assert code == 1 and not out["equivalent"]
    code, out = _run(capsys, ["sequiv", "--a", matrices["c1"], "--b", matrices["d1"], "--strict"])
    assert code == 1


def test_sequiv_accepts_divisor_documents(capsys, tmp_path, matrices):
    doc = {"field": {"type": "Fp", "p": 3}, "elementary_divisors": [{"irr": "x+1", "exps": [3, 1]}]}
    a = _write(tmp_path, "a.json", doc)
    doc["elementary_divisors"] = [{"irr": "x", "exps": [3, 2]}]
    b = _write(tmp_path, "b.json", doc)
    code, out = _run(capsys, ["sequiv", "--a", a, "--b", b])
    assert code == 0 and out["certificate"][0]["mode"] == "JTransform"


def test_structured_errors(capsys, tmp_path):
    quintic = {"field": {"type": "Q"}, "elementary_divisors": []}
    m = {"field": {"type": "Q"}, "matrix": [[0, 0, 0, 0, 1], [1, 0, 0, 0, 1], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]]}
    a = _write(tmp_path, "m.json", m)  # companion matrix of x^5 - x - 1
    b = _write(tmp_path, "e.json", quintic)
    code, out = _run(capsys, ["sequiv", "--a", a, "--b", b])
    assert code == 2 and out["error"] == "UnsupportedRationalFactorization"
    code, out = _run(capsys, ["eldiv", "--in", str(tmp_path / "missing.json")])
    assert code == 2 and "error" in out
    bad = _write(tmp_path, "bad.json", {"field": {"type": "Fp", "p": 4}, "matrix": [[1]]})
    code, out = _run(capsys, ["eldiv", "--in", bad])
    assert code == 2 and out["error"] == "InvalidField"


def test_report(capsys, matrices):
    code, out = _run(capsys, ["report", "--in", matrices["c1"], "--oracle"])
    assert code == 0 and out["total_dim"] == out["oracle_dim"] == 7
    assert out["num_nonproj_simples"] == 2
    assert run(["report", "--in", matrices["c1"], "--format", "table"]) == 0
    assert "total dim 7" in capsys.readouterr().out


def test_perm_commands(capsys, tmp_path):
    code, out = _run(capsys, ["perm", "--cycle-type", "6,2", "--p", "3"])
    assert code == 0 and out["singular_part_type"] == [6, 1, 1] and out["closed_form_agrees"]
    assert sorted(out["E"]) == sorted(["(x+1)^3", "x+1", "(x-1)^3", "x-1"])
    code, out = _run(capsys, ["perm", "--pair", "--p", "3", "--a", "6,2", "--b", "6,1"])
    assert code == 1 and not out["verdict"]["equivalent"]
    code, out = _run(capsys, ["perm", "--pair", "--p", "3", "--a", "6,2", "--b", "6,1", "--singular"])
    assert code == 0 and out["verdict"]["equivalent"]
    doc = _write(tmp_path, "p.json", {"cycles": [[1, 2, 3, 4, 5, 6], [7, 8]], "n": 8})
    code, out = _run(capsys, ["perm", "--in", doc, "--p", "3"])
    assert out["cycle_type"] == [6, 2]
    doc = _write(tmp_path, "q.json", {"cycle_type": [6, 2], "n": 9})
    code, out = _run(capsys, ["perm", "--in", doc, "--p", "3"])
    assert out["cycle_type"] == [6, 2, 1]


def test_homdim(capsys, matrices):
    code, out = _run(capsys, ["homdim", "--block", "2,1,2,1,2"])
    (b,) = out["blocks"]
    assert code == 0 and b["dim_over_K"] == 5
    assert b["gl_dim"] == {"kind": "Finite", "value": 2} and b["dom_dim"] == {"kind": "Finite", "value": 2}
    code, out = _run(capsys, ["homdim", "--block", "3,1,3,{3}"])
    assert out["blocks"][0]["gl_dim"] == {"kind": "DetectedInfinite"}
    assert out["blocks"][0]["dom_dim"] == {"kind": "Infinite"}
    code, out = _run(capsys, ["homdim", "--in", matrices["d1"]])
    assert [b["block"] for b in out["blocks"]] == ["x-1"]
    code, out = _run(capsys, ["homdim", "--block", "3,1,2,1"])
    assert code == 2 and out["error"] == "MissingTopExponent"


def test_oracle_runner(capsys):
    code, out = _run(capsys, ["oracle", "--seed", "3", "--trials", "8", "--suite", "j_involution", "--suite", "arc_invariant"])
    assert code == 0 and out["failed"] == 0 and len(out["suites"]) == 2


def test_batch_preserves_order(capsys, tmp_path, matrices):
    pairs = [{"a": matrices["c2"], "b": matrices["d2"]}, {"a": matrices["c1"], "b": matrices["d1"]}] * 2
    lst = _write(tmp_path, "pairs.json", pairs)
    code, out = _run(capsys, ["sequiv", "--pairs", lst, "--jobs", "2"])
    assert code == 0
    assert [r["index"] for r in out["results"]] == [0, 1, 2, 3]
    assert [r["equivalent"] for r in out["results"]] == [False, True, False, True]


def test_outputs_are_byte_identical(matrices, tmp_path):
    cmd = [sys.executable, "-m", "cma.cli", "sequiv", "--a", matrices["c1"], "--b", matrices["d1"], "--seed", "4"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == 0 and first.stdout == second.stdout


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CMA_SEED", "11")
    code, out = _run(capsys, ["oracle", "--trials", "2", "--suite", "j_involution"])
    assert out["seed"] == 11

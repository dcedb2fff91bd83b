import csv
import io
import json
import os
import subprocess
import sys

import pytest

from corfun.cli import run


def call(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return {
        "a2": write("a2.json", {"elements": ["a", "b"], "relation": []}),
        "c2": write("c2.json", {"elements": ["a", "b"], "relation": [["a", "b"]]}),
        "bad": write("bad.json", {"elements": ["a", "b", "c"], "relation": [["a", "b"], ["b", "c"]]}),
        "vee": write("v.json", {"elements": ["c", "a", "b"], "relation": [["c", "a"], ["c", "b"]]}),
        "notlat": write("nl.json", {"elements": ["0", "a", "b"], "relation": [["0", "a"], ["0", "b"]],
                                    "validate": True}),
        "lat": write("lat.json", {"elements": ["0", "a", "b", "1"],
                                  "relation": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"], ["0", "1"]],
                                  "validate": True}),
        "corr": write("u.json", {"source": ["0", "1"], "target": ["0", "1"], "pairs": [["0", "1"], ["1", "0"]]}),
        "garbage": str(tmp_path / "g.json"),
    }


def test_functor_rank_csv(files, capsys):
    code, out, _ = call(["functor", "rank", "--poset", files["a2"], "--x", "0..5", "--bruteforce"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["x"] for r in rows] == [str(i) for i in range(6)]
    for r in rows:
        x = int(r["x"])
        assert int(r["formula"]) == int(r["bruteforce"]) == int(r["basis_count"]) == 4 ** x - 2 * 3 ** x + 2 ** x


def test_functor_rank_without_bruteforce(files, capsys):
    code, out, _ = call(["functor", "rank", "--poset", files["c2"], "--x", "3"], capsys)
    assert code == 0
    assert out.splitlines() == ["x,formula,bruteforce,basis_count", "3,12,,12"]


def test_lattice_info(capsys):
    code, out, _ = call(["lattice", "info", "--name", "lozenge"], capsys)
    d = json.loads(out)
    assert code == 0 and d["irr"] == 2 and d["distributive"] is True and d["G"] == 4


def test_verify_decompositions_command(capsys):
    code, out, _ = call(["verify", "examples19", "--x-max", "5"], capsys)
    assert code == 0
    assert "FAIL" not in out and out.count("\n") == 1 + 5 * 6


def test_verify_invariants(capsys):
    code, out, _ = call(["verify", "invariants"], capsys)
    assert code == 0 and "FAIL" not in out


def test_exit_codes(files, capsys):
    code, _, err = call(["poset", "ideals", "--poset", files["bad"]], capsys)
    assert code == 2 and json.loads(err)["error"] == "validation"
    code, _, err = call(["lattice", "build", "--lattice", files["notlat"]], capsys)
    assert code == 2
    code, _, err = call(["poset", "ideals", "--poset", files["garbage"]], capsys)
    assert code == 2
    code, _, err = call(["frobnicate"], capsys)
    assert code == 1 and json.loads(err)["code"] == 1
    code, _, err = call(["poset", "ideals", "--poset", files["a2"], "--bogus"], capsys)
    assert code == 1
    code, _, err = call(["functor", "rank", "--poset", files["a2"], "--x", "z"], capsys)
    assert code == 1
    code, _, err = call(["functor", "rank", "--named-poset", "antichain3", "--x", "0..6", "--bruteforce"], capsys)
    assert code == 3 and json.loads(err)["error"] == "budget"
    assert len(err.strip().splitlines()) == 1


def test_budget_env_override(files, capsys, monkeypatch):
    monkeypatch.setenv("CORFUN_BUDGET", "20")
    code, out, err = call(["functor", "smith", "--poset", files["a2"], "--x", "3"], capsys)
    assert code == 3 and out == ""
    monkeypatch.setenv("CORFUN_BUDGET", "100000")
    code, out, _ = call(["functor", "smith", "--poset", files["a2"], "--x", "3"], capsys)
    assert code == 0 and json.loads(out)["divisors"] == [1] * 18


def test_poset_commands(files, capsys):
    code, out, _ = call(["poset", "ideals", "--poset", files["vee"]], capsys)
    assert code == 0 and json.loads(out)["count"] == 5
    code, out, _ = call(["poset", "auts", "--poset", files["vee"]], capsys)
    assert json.loads(out)["order"] == 2
    code, out, _ = call(["poset", "mobius", "--poset", files["c2"]], capsys)
    assert out.splitlines() == ["a,b,mu", "a,a,1", "a,b,-1", "b,b,1"]


def test_lattice_commands(files, capsys):
    code, out, _ = call(["lattice", "build", "--lattice", files["lat"]], capsys)
    assert code == 0 and json.loads(out)["irr"] == 2
    code, out, _ = call(["lattice", "dot", "--name", "p32"], capsys)
    assert code == 0 and out.startswith("digraph")
    code, out, _ = call(["lattice", "quotients", "--name", "n5"], capsys)
    assert code == 0 and all(json.loads(out).values())
    code, out, _ = call(["lattice", "closure", "--poset", files["c2"], "--mode", "L"], capsys)
    d = json.loads(out)
    assert code == 0 and d["size"] == 2 and d["mode"] == "L"
    code, out, _ = call(["lattice", "closure", "--poset", files["c2"], "--mode", "K", "--format", "dot"], capsys)
    assert code == 0 and "// fibers" in out


def test_endo_forest_module(files, capsys):
    code, out, _ = call(["endo", "total", "--n", "3"], capsys)
    assert code == 0 and "basis count: 20" in out
    code, out, _ = call(["forest", "build", "--name", "p33"], capsys)
    assert code == 0 and out.count("lightgray") == 3
    code, out, _ = call(["forest", "idempotents", "--parents", "n,0,0,1"], capsys)
    assert code == 0 and "FAIL" not in out
    code, out, _ = call(["module", "check", "--poset", files["c2"]], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_functor_basis_action_span(files, capsys):
    code, out, _ = call(["functor", "basis", "--name", "lozenge", "--x", "2"], capsys)
    assert code == 0 and out.splitlines()[0] == "# 2 maps"
    code, out, _ = call(["functor", "action", "--lattice", "lozenge", "--corr", files["corr"]], capsys)
    # swapping the two points swaps the two basis bijections
    assert code == 0 and out.splitlines()[-2:] == ["0 1", "1 0"]
    code, out, _ = call(["functor", "gamma-span", "--poset", files["c2"], "--x", "0..3"], capsys)
    assert code == 0 and out.splitlines()[-1] == "3,12,12"


def test_outputs_are_deterministic(capsys):
    _, a, _ = call(["lattice", "dot", "--name", "c"], capsys)
    _, b, _ = call(["lattice", "dot", "--name", "c"], capsys)
    assert a == b


def test_console_script_runs():
    exe = [sys.executable, "-m", "corfun", "lattice", "info", "--name", "m3"]
    res = subprocess.run(exe, capture_output=True, text=True, timeout=60)
    assert res.returncode == 0 and json.loads(res.stdout)["irr"] == 3

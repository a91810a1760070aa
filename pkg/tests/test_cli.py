import json
import subprocess
import sys

import pytest

from gallai_ramsey.cli import run
from gallai_ramsey.construct import construct_lower_bound, verify_construction
from gallai_ramsey.core import EdgeColoredCompleteGraph, format_gcol, read_gcol, write_gcol


@pytest.fixture(autouse=True)
def _cache(tmp_path, monkeypatch):
    monkeypatch.setenv("GALLAI_CACHE", str(tmp_path / "qcache"))


def test_value(capsys):
    assert run(["value", "2", "0", "0"]) == 0
    assert capsys.readouterr().out == "gr=18 condition=c1\n"


def test_value_json(capsys):
    assert run(["value", "1", "1", "2", "--json"]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["ok"] and env["exit_code"] == 0 and env["command"] == "value"
    assert env["result"] == {"params": [1, 1, 2], "gr": 49, "f": 48, "condition": "c7"}


@pytest.mark.parametrize("argv", [
    ["value", "0", "0", "0"],
    ["value", "1", "2"],
    ["value", "-1", "0", "0"],
    ["value", "a", "0", "0"],
    ["frobnicate"],
    [],
    ["inequalities", "--max", "1"],
    ["witness", "K3", "C5", "5"],
    ["witness", "K3", "B3plus", "4"],
    ["construct", "0", "0", "0"],
    ["verify", "missing.gcol", "--params", "0", "0", "2"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_construct_then_verify(tmp_path, capsys):
    out = tmp_path / "w.gcol"
    assert run(["construct", "0", "0", "2", "--out", str(out)]) == 0
    assert "order=5" in capsys.readouterr().out
    assert run(["verify", str(out), "--params", "0", "0", "2"]) == 0
    assert capsys.readouterr().out.startswith("order_ok=true gallai_ok=true avoid_ok=true order=5 expected=5")


def test_round_trip_matches_in_memory_verification(tmp_path, capsys):
    out = tmp_path / "w.gcol"
    assert run(["construct", "1", "2", "1", "--out", str(out), "--json"]) == 0
    g = construct_lower_bound((1, 2, 1))
    assert read_gcol(out) == g
    assert out.read_text() == format_gcol(g)
    capsys.readouterr()
    assert run(["verify", str(out), "--params", "1", "2", "1", "--json", "--threads", "2"]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["result"] == verify_construction(g, (1, 2, 1)).as_dict()


def test_construct_to_stdout(capsys):
    assert run(["construct", "0", "0", "1"]) == 0
    assert capsys.readouterr().out == "2 1\n1\n"


def test_explicit_cache_flag(tmp_path, capsys):
    cache = tmp_path / "explicit"
    assert run(["construct", "0", "1", "1", "--cache", str(cache)]) == 0
    assert list(cache.glob("K3__S3plus.*.gcol"))


def test_verify_failures_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.gcol"
    write_gcol(EdgeColoredCompleteGraph.monochromatic(5, 1, k=2), bad)
    assert run(["verify", str(bad), "--params", "0", "0", "2"]) == 1
    out = capsys.readouterr().out
    assert "avoid_ok=false" in out and "violation color=1 pattern=K3" in out
    assert run(["verify", str(bad), "--params", "0", "0", "3"]) == 1
    assert "palette mismatch" in capsys.readouterr().out


def test_partition(tmp_path, capsys):
    path = tmp_path / "w.gcol"
    assert run(["construct", "0", "0", "2", "--out", str(path)]) == 0
    capsys.readouterr()
    assert run(["partition", str(path), "--minimize"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:5] == [f"part {i}: {i}" for i in range(5)]
    assert lines[5:] == ["cross_colors=1 2", "q=5"]


def test_partition_of_rainbow_coloring_fails(tmp_path, capsys):
    path = tmp_path / "r.gcol"
    write_gcol(EdgeColoredCompleteGraph(3, 3, [1, 2, 3]), path)
    assert run(["partition", str(path)]) == 1


def test_ramsey(capsys):
    assert run(["ramsey", "K3", "K3", "--nmax", "8", "--time", "60"]) == 0
    assert capsys.readouterr().out == "R(K3,K3)=6\n"


def test_ramsey_inconclusive_exit_3(capsys):
    assert run(["ramsey", "K3", "B3plus", "--nodes", "20"]) == 3
    assert run(["ramsey", "K3", "K3", "--nmax", "5"]) == 3


def test_witness(tmp_path, capsys):
    out = tmp_path / "w.gcol"
    assert run(["witness", "K3", "K3", "5", "--out", str(out), "--seed", "3"]) == 0
    g = read_gcol(out)
    assert g.n == 5
    assert run(["witness", "K3", "K3", "6"]) == 1
    assert "outcome=exhaustive-none" in capsys.readouterr().out
    assert run(["witness", "K3", "K3", "6", "--method", "local", "--time", "0.3"]) == 3


def test_witness_json(capsys):
    assert run(["witness", "S3+", "B3+", "9", "--method", "local", "--seed", "1", "--json"]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["result"]["outcome"] == "witness" and env["result"]["gcol"].startswith("9 2\n")


def test_inequalities(capsys):
    assert run(["inequalities", "--max", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.startswith("ineq=") and line.endswith("status=pass") for line in lines)
    assert "ineq=17 triple=(2,0,0) ratio=1/17 status=pass" in lines


def test_export(tmp_path, capsys):
    path = tmp_path / "g.gcol"
    write_gcol(EdgeColoredCompleteGraph(3, 2, [1, 2, 1]), path)
    assert run(["export", str(path), "--dot"]) == 0
    assert capsys.readouterr().out.startswith("graph G {")
    assert run(["export", str(path), "--to", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"n": 3, "k": 2, "colors": [1, 2, 1]}
    dot = tmp_path / "g.dot"
    assert run(["export", str(path), "--dot", "--out", str(dot)]) == 0
    assert dot.read_text().count("--") == 3


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "gallai_ramsey", "value", "0", "0", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == ""
    proc = subprocess.run([sys.executable, "-m", "gallai_ramsey", "value", "1", "1", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "gr=10 condition=c9\n"

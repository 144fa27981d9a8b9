import json
import subprocess
import sys

import pytest

from mdd.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound(capsys):
    code, out, _ = call(capsys, "bound", "--delta", "3", "--diameter", "5")
    assert code == 0
    assert "M^b(3,5) = 62" in out and "N^b = 56" in out
    code, out, _ = call(capsys, "bound", "--delta", "3", "--diameter", "5", "--json")
    d = json.loads(out)
    assert d["moore_bound"] == "62" and d["best_upper_bound"] == "56" and d["exact"]


def test_feasible_impossible(capsys):
    code, out, _ = call(capsys, "feasible", "--delta", "3", "--diameter", "9", "--defect", "4",
                        "--json")
    assert code == 1
    d = json.loads(out)
    assert d["status"] == "Impossible" and d["reasons"][0]["tag"] == "thm-odd-diameter"


def test_feasible_exists(capsys):
    code, out, _ = call(capsys, "feasible", "--delta", "3", "--diameter", "3", "--defect", "4")
    assert code == 0 and "catalogue:4 graphs" in out


def test_construct_then_check(capsys, tmp_path):
    g = tmp_path / "g.g6"
    assert call(capsys, "construct", "delorme-22", "-o", str(g))[0] == 0
    code, out, _ = call(capsys, "check", str(g), "--delta", "4", "--diameter", "3",
                        "--defect", "4")
    assert code == 0 and out.strip().endswith("ok")
    code, out, _ = call(capsys, "check", str(g), "--delta", "4", "--diameter", "3",
                        "--defect", "2", "--json")
    assert code == 1
    assert json.loads(out)["results"][0]["failures"] == ["order: 22 != 24"]


def test_check_multi_line(capsys, tmp_path):
    f = tmp_path / "m.g6"
    f.write_text("I?o{@CQOW\nBg\n!!bad\n")
    code, out, _ = call(capsys, "check", str(f), "--delta", "3", "--diameter", "3",
                        "--defect", "4", "--json")
    assert code == 1
    res = json.loads(out)["results"]
    assert [r["ok"] for r in res] == [True, False, False]
    assert res[2]["failures"][0].startswith("parse")


def test_search_writes_catalogue(capsys, tmp_path):
    cat = tmp_path / "cat"
    code, out, _ = call(capsys, "search", "--delta", "3", "--diameter", "3", "--defect", "4",
                        "-o", str(cat), "--jobs", "1")
    assert code == 0 and "4 graphs" in out
    assert len(cat.read_text().splitlines()) == 5
    code, out, _ = call(capsys, "verify-structure", str(cat), "--json")
    assert code == 0
    reps = json.loads(out)["reports"]
    assert sum(r["applicable"] for r in reps) == 2


def test_search_json_is_bit_identical(capsys):
    argv = ["search", "--delta", "3", "--diameter", "3", "--defect", "2", "--json"]
    a = call(capsys, *argv, "--jobs", "1")[1]
    b = call(capsys, *argv, "--jobs", "2")[1]
    assert a == b and json.loads(a)["count"] == 1


def test_search_budget_exit(capsys):
    code, out, _ = call(capsys, "search", "--delta", "3", "--diameter", "3", "--defect", "4",
                        "--budget", "3", "--json")
    assert code == 1 and json.loads(out)["complete"] is False


def test_table(capsys, tmp_path):
    code, out, _ = call(capsys, "table", "--residues", "--D-min", "188", "--D-max", "188")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "delta_or_residue,D,defect,status,reasons"
    assert sorted(l.split(",")[0] for l in lines[1:] if "Unknown" in l) == ["res:24/187",
                                                                           "res:58/187"]
    code, out, _ = call(capsys, "table", "--d-min", "3", "--d-max", "4", "--D-min", "5",
                        "--D-max", "6", "--json")
    assert len(json.loads(out)) == 4


def test_usage_errors(capsys):
    assert call(capsys, "bound", "--delta", "3")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "feasible", "--delta", "1", "--diameter", "3", "--defect", "0")[0] == 2
    assert call(capsys, "construct", "pg2:4")[0] == 2
    assert call(capsys, "search", "--delta", "5", "--diameter", "3", "--defect", "4")[0] == 2
    assert call(capsys, "check", "/nonexistent/file")[0] == 2


def test_jobs_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MDD_JOBS", "zero")
    assert call(capsys, "bound", "--delta", "3", "--diameter", "3")[0] == 2
    monkeypatch.setenv("MDD_JOBS", "2")
    assert call(capsys, "bound", "--delta", "3", "--diameter", "3")[0] == 0


@pytest.mark.parametrize("argv", [
    ["bound", "--delta", "4", "--diameter", "6"],
    ["feasible", "--delta", "4", "--diameter", "3", "--defect", "1"],
    ["construct", "heawood"],
    ["table", "--D-min", "5", "--D-max", "5"],
])
def test_json_mode_is_valid_and_stable(capsys, argv):
    a = call(capsys, *argv, "--json")[1]
    b = call(capsys, *argv, "--json")[1]
    assert a == b
    json.loads(a)


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "mdd.cli", "bound", "--delta", "3",
                          "--diameter", "3"], capture_output=True, text=True, check=False)
    assert out.returncode == 0 and "M^b(3,3) = 14" in out.stdout

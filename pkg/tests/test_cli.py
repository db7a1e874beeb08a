"""Command-line front end: exit codes, report shape, side files and determinism."""
import csv
import io
import json
import subprocess
import sys

import pytest

from toricstab.cli import run


def _run(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text else None), text


def test_dhym_p3_passes_with_margins_two():
    code, doc, _ = _run("dhym", "--fan", "builtin:P3", "--omega", "H", "--alpha", "H")
    assert code == 0
    items = doc["report"]["items"]
    assert {i["margin"] for i in items} == {"2"}
    assert doc["header"]["command"] == "dhym"


def test_check_bmsz_blowup_fails_at_exceptional_divisor():
    code, doc, _ = _run("check-bmsz", "--fan", "builtin:BlPtP3", "--omega", "2H-E")
    assert code == 1
    bad = [i for i in doc["report"]["items"] if i["status"] in ("fail", "neg")]
    assert len(bad) == 1 and "E1" in bad[0]["subject"] and bad[0]["margin"] == "-1"


def test_unstable_p3_payload():
    code, doc, _ = _run("unstable-p3", "--beta", "2", "--p", "3", "--r", "1/2", "--grid", "200")
    assert code == 0
    rep = doc["report"]
    assert rep["window"] is True and rep["cot_phi"] == "-61/370"
    sup = rep["supremum"]
    assert sup["critical_polynomial"] is not None and "xi" in sup
    assert rep["optimizer_dominates_grid"] is True


def test_walls_exit_code_two():
    code, doc, _ = _run("walls", "--fan", "builtin:BlPtP3", "--L", "3H+E",
                        "--omega0", "4/3H-E", "--omega1", "2H-E", "--steps", "10")
    assert code == 2 and doc["report"]["walls"][0]["subject"] == "V(E1)"


def test_fibration_and_blowup_commands():
    code, _, _ = _run("fibration", "--fan", "builtin:P2xP1", "--u", "0,0,1", "--omega", "h",
                      "--alpha", "2h", "--m-cap", "64")
    assert code == 0
    code, doc, _ = _run("blowup", "--fan", "builtin:P3", "--omega", "H", "--L=-H",
                        "--delta", "1/10", "--t", "1/2")
    assert code == 0 and doc["report"]["exceptional"]["verdict"] == "pass"


def test_schmidt_audit_exit_reflects_verdict():
    code, doc, _ = _run("schmidt-audit", "--fan", "builtin:P3", "--omega", "H", "--L=-H",
                        "--k", "10", "--delta", "1/2", "--twist", "H1:1")
    assert code == 1
    assert doc["report"]["corrected_relation_holds"] is True


@pytest.mark.parametrize("argv", [
    [],
    ["dhym", "--fan", "builtin:P3"],
    ["dhym", "--fan", "builtin:NOPE", "--omega", "H", "--alpha", "H"],
    ["dhym", "--fan", "builtin:P3", "--omega", "Q", "--alpha", "H"],
    ["dhym", "--fan", "builtin:P3", "--omega", "-H", "--alpha", "H"],
    ["unstable-p3", "--beta", "x", "--p", "3", "--r", "1"],
    ["unstable-p3", "--beta", "1", "--p", "3", "--r", "1/2"],
    ["walls", "--fan", "/nonexistent.json", "--omega0", "H", "--omega1", "H", "--alpha", "H"],
])
def test_usage_and_input_errors_exit_three(argv, capsys):
    assert run(argv, stdout=io.StringIO()) == 3
    assert capsys.readouterr().err


def test_side_files(tmp_path):
    out, tab, ser = tmp_path / "r.json", tmp_path / "t.csv", tmp_path / "s.csv"
    code = run(["walls", "--fan", "builtin:BlPtP3", "--L", "3H+E", "--omega0", "4/3H-E",
                "--omega1", "2H-E", "--steps", "8", "--out", str(out), "--csv", str(tab),
                "--series", str(ser)], stdout=io.StringIO())
    assert code == 2
    assert json.loads(out.read_text())["report"]["walls"]
    rows = list(csv.reader(tab.open()))
    assert rows[0] == ["subject", "lo", "hi"] and rows[1][0] == "V(E1)"
    series = list(csv.reader(ser.open()))
    assert series[0] == ["t", "subject", "W"] and len(series) > 8

    tab2 = tmp_path / "m.csv"
    run(["dhym", "--fan", "builtin:P3", "--omega", "H", "--alpha", "H", "--csv", str(tab2)],
        stdout=io.StringIO())
    rows = list(csv.reader(tab2.open()))
    assert rows[0] == ["subject", "margin", "status"] and len(rows) > 1


def test_digits_adds_decimal_renderings():
    _, doc, _ = _run("unstable-p3", "--beta", "2", "--p", "3", "--r", "1/2", "--digits", "6")
    assert doc["report"]["cot_phi"] == "-61/370"
    assert doc["report"]["cot_phi_decimal"] == "-0.164865"


def test_builtins_lists_all_fans():
    code, doc, _ = _run("builtins")
    assert code == 0
    assert set(doc["report"]) == {"P3", "BlPtP3", "P1xP2", "P2xP1", "P1xP1xP1", "BlLineP3"}


def test_fan_file_round_trip(tmp_path):
    fan = {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]],
           "labels": ["A", "B", "C"]}
    p = tmp_path / "p2.json"
    p.write_text(json.dumps(fan))
    code, doc, _ = _run("dhym", "--fan", str(p), "--omega", "C", "--alpha", "2C")
    assert code == 0


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "toricstab", "builtins"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["header"]["command"] == "builtins"


@pytest.mark.parametrize("argv", [
    ["dhym", "--fan", "builtin:P1xP1xP1", "--omega", "H1+2H2+H3", "--alpha", "3H1-H2+2H3"],
    ["unstable-p3", "--beta", "2", "--p", "3", "--r", "1/2"],
])
def test_reports_identical_across_runs_and_jobs(argv):
    a = _run(*argv)[2]
    b = _run(*argv)[2]
    c = _run(*argv, "--jobs", "4")[2]
    strip = lambda t: json.dumps(json.loads(t)["report"], indent=2)
    assert a == b and strip(a) == strip(c)

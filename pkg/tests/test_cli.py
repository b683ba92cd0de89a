import json
import os
import subprocess
import sys

import pytest

from curvegroup.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_group(capsys):
    code, doc = run_json(capsys, "group", "-q", "3", "-k", "1")
    assert code == EXIT_OK
    assert doc["order"] == 12 and doc["group"] == "H(3;1)"
    assert {"group", "order", "cosets_defined", "strategy"} <= set(doc)
    code, doc = run_json(capsys, "group", "-q", "5", "-k", "2", "--abelianize", "--strategy", "hlt")
    assert code == EXIT_OK and doc["order"] == 80
    assert doc["abelianization"] == {"invariants": [16], "free_rank": 0}


def test_group_human_summary(capsys):
    code, out, _ = run(capsys, "group", "-q", "3", "-k", "1", "--abelianize")
    assert code == EXIT_OK
    assert "order 12" in out and out.strip().endswith("pass")


@pytest.mark.parametrize(
    "argv",
    [
        ["group", "-q", "4", "-k", "1"],
        ["group", "-q", "3", "-k", "0"],
        ["report", "--bogus"],
        ["rep", "-q", "3"],
        ["frobnicate"],
        ["group"],
    ],
)
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == EXIT_USAGE


def test_cap_exceeded(capsys):
    code, _, err = run(capsys, "group", "-q", "3", "-k", "1", "--max-cosets", "5")
    assert code == EXIT_CAP and "cap" in err


def test_general_presentation(capsys):
    code, doc = run_json(capsys, "group", "--general", "2", "3", "2", "1", "1")
    assert code == EXIT_OK and doc["order"] == 12


def test_rep(capsys, tmp_path):
    code, doc = run_json(capsys, "rep", "-q", "3", "-k", "1")
    assert code == EXIT_OK
    assert doc["closure_order"] == 12
    assert doc["extension"]["scalar_subgroup_order"] == 2
    assert doc["extension"]["pgl_image_order"] == 6
    code, doc = run_json(capsys, "rep", "-q", "7", "-k", "1")
    assert doc["closure_order"] == 84
    out = tmp_path / "matrices.json"
    code, _, _ = run(capsys, "rep", "-q", "3", "-k", "1", "--emit", str(out))
    emitted = json.loads(out.read_text(encoding="utf-8"))
    assert code == EXIT_OK and len(emitted["elements"]) == 12


def test_curve(capsys, tmp_path):
    code, doc = run_json(capsys, "curve", "-q", "3", "-k", "1", "--seed", "7", "--audit", "--out", str(tmp_path))
    assert code == EXIT_OK
    assert (doc["N"], doc["T"]) == (3, 6)
    audit = json.loads((tmp_path / "audit.json").read_text())
    curve = json.loads((tmp_path / "curve.json").read_text())
    assert audit["pass"] and audit["expected_N"] == 3
    assert curve["degree"] == 4 and curve["seed"] == 7


def test_curve_fixture(capsys):
    code, doc = run_json(capsys, "curve", "--fixture", "zariski", "--audit")
    assert code == EXIT_OK
    assert (doc["audit"]["N"], doc["audit"]["T"]) == (3, 6)


def test_curve_without_audit(capsys):
    code, doc = run_json(capsys, "curve", "-q", "5", "-k", "1", "--seed", "7")
    assert code == EXIT_OK
    assert doc["curve"]["degree"] == 8 and "audit" not in doc


def test_report(capsys):
    code, doc = run_json(capsys, "report", "-q", "3", "-k", "1", "--audit")
    assert code == EXIT_OK and doc["pass"]
    assert doc["group"]["order"] == doc["rep"]["closure_order"] == 12
    assert doc["curve"]["genus_formula"] == doc["curve"]["genus_oracle"] == 0
    assert "timing" not in doc
    code, doc = run_json(capsys, "report", "-q", "5", "-k", "1")
    assert code == EXIT_OK and doc["pass"] and "N" not in doc["curve"]


def test_report_failure_exit_code(capsys, monkeypatch):
    import curvegroup.cli as cli

    monkeypatch.setattr(cli, "genus_theorem", lambda q, k: -1)
    code, doc = run_json(capsys, "report", "-q", "3", "-k", "1")
    assert code == EXIT_FAIL and not doc["pass"]


def test_report_byte_identical(capsys):
    _, first, _ = run(capsys, "report", "-q", "3", "-k", "1", "--audit", "--json")
    _, second, _ = run(capsys, "report", "-q", "3", "-k", "1", "--audit", "--json")
    assert first == second
    code, doc = run_json(capsys, "report", "-q", "3", "-k", "1", "--timings")
    assert set(doc["timing"]) >= {"todd_coxeter", "closure"}


def test_grid_pool_matches_serial(capsys, monkeypatch):
    monkeypatch.setenv("CURVEGROUP_THREADS", "1")
    _, serial, _ = run(capsys, "report", "--grid", "--json")
    monkeypatch.setenv("CURVEGROUP_THREADS", "2")
    _, pooled, _ = run(capsys, "report", "--grid", "--json")
    assert serial == pooled
    doc = json.loads(serial)
    assert doc["pass"]
    keys = [(r["params"]["q"], r["params"]["k"]) for r in doc["grid"]]
    assert keys == sorted(keys) and len(keys) == 12
    audited = {(r["params"]["q"], r["params"]["k"]) for r in doc["grid"] if "N" in r["curve"]}
    assert audited == {(3, 1), (5, 1)}


def test_module_entry_point():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "curvegroup", "group", "-q", "3", "-k", "1"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert proc.returncode == 0 and "order 12" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "curvegroup", "group", "-q", "4", "-k", "1"], capture_output=True, text=True)
    assert proc.returncode == 2

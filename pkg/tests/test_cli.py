import json
import shutil

import pytest

from mfdx.cli import main
from mfdx.fixtures import fixture_path

LEAF = str(fixture_path("leaf_blower"))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_fixture_ok(capsys):
    code, out, _ = run(capsys, "validate", LEAF)
    assert code == 0
    assert "ok:" in out


def test_validate_broken_project(tmp_path, capsys):
    doc = json.loads(fixture_path("leaf_blower").read_text())
    doc["modules"][0]["members"] = ["TS99"]
    bad = tmp_path / "bad.mfdx.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert "members" in out


def test_missing_file_is_failure(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/x.mfdx.json")
    assert code == 1
    assert err


def test_usage_error_exit_code(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()
    assert main([]) == 2


def test_report_markdown(capsys):
    code, out, _ = run(capsys, "report", LEAF)
    assert code == 0
    assert "## Bottleneck ranking" in out


def test_report_csv_matrix(capsys):
    code, out, _ = run(capsys, "report", LEAF, "--format", "csv", "--matrix", "msasm")
    assert code == 0
    assert out.splitlines()[0].startswith("set,")


def test_msasm_contains_critical(capsys):
    code, out, _ = run(capsys, "msasm", LEAF)
    assert code == 0
    assert "critical" in out
    assert "M01-M02" in out


def test_cluster_deterministic(capsys):
    code, first, _ = run(capsys, "cluster", LEAF, "--seed", "42")
    assert code == 0
    code, second, _ = run(capsys, "cluster", LEAF, "--seed", "42")
    assert code == 0
    assert first == second
    assert "objective:" in first


def test_adcd_issues(capsys):
    code, out, _ = run(capsys, "adcd", LEAF)
    assert code == 0
    assert "destructive_connector" in out
    assert "insertion order" in out


def test_adcd_dot(capsys):
    code, out, _ = run(capsys, "adcd", LEAF, "--dot")
    assert code == 0
    assert out.startswith("digraph")


def test_concepts_default_pugh(capsys):
    code, out, _ = run(capsys, "concepts", LEAF)
    assert code == 0
    assert out.splitlines()[0].startswith("1. C3")


def test_concepts_numeric(capsys):
    code, out, _ = run(capsys, "concepts", LEAF, "--mode", "numeric")
    assert code == 0
    assert "C3" in out.splitlines()[0]

import json

import pytest

from mfdx.errors import MalformedSyntax, UnknownMatrix, UnsupportedVersion, ValidationFailed
from mfdx.fixtures import fixture_path
from mfdx.model import Criterion, CriterionKind, CustomerRequirement, Module, ModuleSet, TechnicalSolution
from mfdx.msasm import DEFAULT_CRITERIA, DEFAULT_CRITERIA_IDS, MsasmRecord
from mfdx.project import Matrices, Project, ProjectConfig
from mfdx.project_io import export_csv, load_project, render_report, save_project

LEAF = fixture_path("leaf_blower")
MINIMAL = fixture_path("minimal")


def roundtrip(project):
    return load_project(save_project(project))


def test_minimal_fixture_loads():
    project = load_project(MINIMAL.read_bytes())
    assert project.name == "Minimal project"


def test_roundtrip_fixpoint_on_fixtures():
    for path in (LEAF, MINIMAL):
        raw = path.read_bytes()
        first = save_project(load_project(raw))
        assert first == raw
        assert save_project(load_project(first)) == first


def test_roundtrip_validates_with_same_report():
    from mfdx.project import validate_project

    for path in (LEAF, MINIMAL):
        project = load_project(path.read_bytes())
        assert validate_project(roundtrip(project)) == validate_project(project)


def test_truncated_file_is_malformed():
    raw = LEAF.read_bytes()[:-40]
    with pytest.raises(MalformedSyntax):
        load_project(raw)


def test_unsupported_version():
    doc = json.loads(MINIMAL.read_text())
    doc["schema_version"] = 99
    with pytest.raises(UnsupportedVersion):
        load_project(json.dumps(doc))


def test_non_integer_version_is_malformed():
    doc = json.loads(MINIMAL.read_text())
    doc["schema_version"] = "one"
    with pytest.raises(MalformedSyntax):
        load_project(json.dumps(doc))


def test_unknown_top_level_key_rejected():
    doc = json.loads(MINIMAL.read_text())
    doc["extras"] = {}
    with pytest.raises(MalformedSyntax):
        load_project(json.dumps(doc))


def test_unknown_nested_key_rejected():
    doc = json.loads(MINIMAL.read_text())
    doc["requirements"] = [{"id": "R1", "statement": "s", "raw_weight": 1, "color": "red"}]
    with pytest.raises(MalformedSyntax):
        load_project(json.dumps(doc))


def test_duplicate_matrix_cell_rejected():
    doc = json.loads(LEAF.read_text())
    doc["matrices"]["qfd"].append(dict(doc["matrices"]["qfd"][0]))
    with pytest.raises(MalformedSyntax):
        load_project(json.dumps(doc))


def test_validation_failure_carries_report():
    doc = json.loads(MINIMAL.read_text())
    doc["modules"] = [{"id": "M01", "name": "m", "members": ["TS9"]}]
    with pytest.raises(ValidationFailed) as exc:
        load_project(json.dumps(doc))
    assert any(i.path == "modules/M01/members" for i in exc.value.report.errors)


def test_scrambled_key_order_canonicalizes():
    doc = json.loads(LEAF.read_text())
    scrambled = json.dumps(doc, sort_keys=False, indent=None)
    assert save_project(load_project(scrambled)) == LEAF.read_bytes()


def test_decimal_weights_survive_roundtrip():
    project = Project(
        name="weights",
        requirements=(
            CustomerRequirement("R1", "a", 0.5),
            CustomerRequirement("R2", "b", 0.3),
            CustomerRequirement("R3", "c", 0.2),
        ),
    )
    again = roundtrip(project)
    assert [r.raw_weight for r in again.requirements] == [0.5, 0.3, 0.2]
    assert save_project(again) == save_project(project)


def _scored_project():
    modules = (Module("M01", "housing", ("TS1",)), Module("M02", "motor", ("TS2",)))
    records = tuple(MsasmRecord(ModuleSet("M01", "M02"), c, 5) for c in DEFAULT_CRITERIA_IDS)
    return Project(
        name="scored",
        solutions=(TechnicalSolution("TS1", "a"), TechnicalSolution("TS2", "b")),
        modules=modules,
        module_sets=(ModuleSet("M01", "M02"),),
        criteria=DEFAULT_CRITERIA,
        msasm=records,
        config=ProjectConfig(msasm_criteria=DEFAULT_CRITERIA_IDS),
    )


def test_msasm_csv_shape():
    data = export_csv("msasm", _scored_project()).decode("utf-8")
    lines = [l for l in data.split("\r\n") if l]
    assert len(lines) == 2  # header + one scored set
    header = lines[0].split(",")
    # one set column, six criteria columns, then total/mean/band
    assert len(header) == 1 + 6 + 3
    assert header[0] == "set" and header[-3:] == ["total", "mean", "band"]
    assert lines[1].split(",")[0] == "M01-M02"
    assert lines[1].split(",")[-3:] == ["30", "5.00", "critical"]


def test_empty_mim_csv_is_header_only():
    data = export_csv("mim", Project(name="empty")).decode("utf-8")
    lines = [l for l in data.split("\r\n") if l]
    assert len(lines) == 1
    assert lines[0].startswith("solution,carryover,")


def test_csv_quotes_commas():
    project = Project(
        name="quoting",
        requirements=(CustomerRequirement("R1, the first", "s", 2),),
    )
    data = export_csv("cvr", project).decode("utf-8")
    assert '"R1, the first"' in data


def test_unknown_matrix():
    with pytest.raises(UnknownMatrix):
        export_csv("nope", Project(name="x"))


def test_csv_matrix_family():
    project = load_project(LEAF.read_bytes())
    for matrix_id in ("cvr", "qfd", "dpm", "mim", "interactions", "msasm"):
        data = export_csv(matrix_id, project).decode("utf-8")
        assert data.count("\r\n") >= 1


def test_report_sections_and_determinism():
    project = load_project(LEAF.read_bytes())
    report = render_report(project)
    for section in (
        "## Customer value rating",
        "## Requirement-property mapping (QFD)",
        "## Property-solution mapping (DPM)",
        "## Module indication (MIM)",
        "## Concept evaluation",
        "## Assembly directions and connections",
        "## Module set assembly strategy (MSASM)",
        "## Bottleneck ranking",
    ):
        assert section in report
    assert "critical" in report  # the all-5 module set
    assert "red" in report
    assert render_report(project) == report


def test_report_without_concepts_says_none_evaluated():
    report = render_report(Project(name="bare"))
    assert "none evaluated" in report

"""Versioned project persistence, CSV export, and Markdown reporting.

The project file is UTF-8 JSON with a strict schema: unknown keys are
rejected, object keys serialize lexicographically, and entity lists serialize
in canonical id order, so saving a loaded project is a byte-level fixpoint and
version-control diffs stay meaningful.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from mfdx.adcd import Access, AdcdGraph, Connection, Direction, Fastener, FastenerType
from mfdx.analysis import ProjectAnalysis, analyze
from mfdx.clustering import InteractionMatrix
from mfdx.errors import MalformedSyntax, UnknownMatrix, UnsupportedVersion, ValidationFailed
from mfdx.matrices import MimMatrix, compute_cvr
from mfdx.model import (
    DRIVER_ORDER,
    Concept,
    Criterion,
    CriterionKind,
    CustomerRequirement,
    Module,
    ModuleDriver,
    ModuleSet,
    ProductProperty,
    Scale,
    TechnicalSolution,
)
from mfdx.msasm import MsasmRecord, Provenance, band_colour
from mfdx.project import SCHEMA_VERSION, Matrices, Project, ProjectConfig, validate_project

FILE_EXTENSION = ".mfdx.json"

_TOP_KEYS = {
    "schema_version",
    "name",
    "requirements",
    "properties",
    "solutions",
    "modules",
    "module_sets",
    "criteria",
    "concepts",
    "matrices",
    "adcd",
    "msasm",
    "config",
}


def _fail(path: str, message: str) -> None:
    raise MalformedSyntax(f"{path}: {message}")


def _obj(value: Any, path: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    unknown = set(value) - required - optional
    if unknown:
        _fail(path, f"unknown keys {sorted(unknown)}")
    missing = required - set(value)
    if missing:
        _fail(path, f"missing keys {sorted(missing)}")
    return value


def _str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        _fail(path, f"expected a string, got {type(value).__name__}")
    return value


def _opt_str(value: Any, path: str) -> Optional[str]:
    if value is None:
        return None
    return _str(value, path)


def _bool(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        _fail(path, f"expected a boolean, got {type(value).__name__}")
    return value


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    return value


def _num(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        _fail(path, f"expected a list, got {type(value).__name__}")
    return value


def _str_list(value: Any, path: str) -> tuple[str, ...]:
    return tuple(_str(v, f"{path}[{i}]") for i, v in enumerate(_list(value, path)))


def _enum(value: Any, enum_cls, path: str):
    token = _str(value, path)
    try:
        return enum_cls(token)
    except ValueError:
        _fail(path, f"expected one of {[e.value for e in enum_cls]}, got {token!r}")


def _cell_map(value: Any, path: str, left_key: str, right_key: str, value_key: str, parse_value) -> dict:
    cells: dict[tuple[str, str], Any] = {}
    for i, raw in enumerate(_list(value, path)):
        cell = _obj(raw, f"{path}[{i}]", {left_key, right_key, value_key})
        key = (_str(cell[left_key], f"{path}[{i}]/{left_key}"), _str(cell[right_key], f"{path}[{i}]/{right_key}"))
        if key in cells:
            _fail(f"{path}[{i}]", f"duplicate cell for {key}")
        cells[key] = parse_value(cell[value_key], f"{path}[{i}]/{value_key}")
    return cells


def parse_document(doc: Any) -> Project:
    """Build a Project from parsed JSON; structural problems raise
    MalformedSyntax / UnsupportedVersion, value-domain problems are left for
    validation."""
    top = _obj(doc, "$", {"schema_version", "name"}, _TOP_KEYS)
    version = top["schema_version"]
    if isinstance(version, bool) or not isinstance(version, int):
        _fail("schema_version", f"expected an integer, got {version!r}")
    if version != SCHEMA_VERSION:
        raise UnsupportedVersion(f"schema_version {version} is not supported (expected {SCHEMA_VERSION})")

    requirements = tuple(
        CustomerRequirement(
            id=_str(r["id"], f"requirements[{i}]/id"),
            statement=_str(r["statement"], f"requirements[{i}]/statement"),
            raw_weight=_num(r["raw_weight"], f"requirements[{i}]/raw_weight"),
        )
        for i, r in enumerate(_list(top.get("requirements", []), "requirements"))
        if _obj(r, f"requirements[{i}]", {"id", "statement", "raw_weight"})
    )
    properties = tuple(
        ProductProperty(
            id=_str(p["id"], f"properties[{i}]/id"),
            name=_str(p["name"], f"properties[{i}]/name"),
            target=_opt_str(p.get("target"), f"properties[{i}]/target"),
        )
        for i, p in enumerate(_list(top.get("properties", []), "properties"))
        if _obj(p, f"properties[{i}]", {"id", "name"}, {"target"})
    )
    solutions = tuple(
        TechnicalSolution(
            id=_str(s["id"], f"solutions[{i}]/id"),
            name=_str(s["name"], f"solutions[{i}]/name"),
            realizes=_str_list(s.get("realizes", []), f"solutions[{i}]/realizes"),
        )
        for i, s in enumerate(_list(top.get("solutions", []), "solutions"))
        if _obj(s, f"solutions[{i}]", {"id", "name"}, {"realizes"})
    )
    modules = tuple(
        Module(
            id=_str(m["id"], f"modules[{i}]/id"),
            name=_str(m["name"], f"modules[{i}]/name"),
            members=_str_list(m.get("members", []), f"modules[{i}]/members"),
        )
        for i, m in enumerate(_list(top.get("modules", []), "modules"))
        if _obj(m, f"modules[{i}]", {"id", "name"}, {"members"})
    )
    module_sets = tuple(
        ModuleSet(_str(ms["a"], f"module_sets[{i}]/a"), _str(ms["b"], f"module_sets[{i}]/b"))
        for i, ms in enumerate(_list(top.get("module_sets", []), "module_sets"))
        if _obj(ms, f"module_sets[{i}]", {"a", "b"})
    )

    criteria = []
    for i, c in enumerate(_list(top.get("criteria", []), "criteria")):
        _obj(c, f"criteria[{i}]", {"id", "name", "kind"}, {"scale", "weight", "anchors"})
        anchors = None
        if c.get("anchors") is not None:
            raw_anchors = c["anchors"]
            if not isinstance(raw_anchors, dict):
                _fail(f"criteria[{i}]/anchors", "expected an object")
            anchors = {}
            for key, text in raw_anchors.items():
                try:
                    score = int(key)
                except ValueError:
                    _fail(f"criteria[{i}]/anchors", f"anchor key {key!r} is not an integer")
                anchors[score] = _str(text, f"criteria[{i}]/anchors/{key}")
        criteria.append(
            Criterion(
                id=_str(c["id"], f"criteria[{i}]/id"),
                name=_str(c["name"], f"criteria[{i}]/name"),
                kind=_enum(c["kind"], CriterionKind, f"criteria[{i}]/kind"),
                scale=_enum(c.get("scale", Scale.ORDINAL_1_5.value), Scale, f"criteria[{i}]/scale"),
                weight=_num(c.get("weight", 1), f"criteria[{i}]/weight"),
                anchors=anchors,
            )
        )

    concepts = tuple(
        Concept(
            id=_str(c["id"], f"concepts[{i}]/id"),
            name=_str(c["name"], f"concepts[{i}]/name"),
            description=_str(c.get("description", ""), f"concepts[{i}]/description"),
            is_datum=_bool(c.get("is_datum", False), f"concepts[{i}]/is_datum"),
        )
        for i, c in enumerate(_list(top.get("concepts", []), "concepts"))
        if _obj(c, f"concepts[{i}]", {"id", "name"}, {"description", "is_datum"})
    )

    raw_matrices = _obj(
        top.get("matrices", {}), "matrices", set(), {"qfd", "dpm", "mim", "interactions", "pugh", "numeric"}
    )
    mim_cells: dict[tuple[ModuleDriver, str], int] = {}
    for i, cell in enumerate(_list(raw_matrices.get("mim", []), "matrices/mim")):
        _obj(cell, f"matrices/mim[{i}]", {"driver", "solution", "strength"})
        driver = _enum(cell["driver"], ModuleDriver, f"matrices/mim[{i}]/driver")
        key = (driver, _str(cell["solution"], f"matrices/mim[{i}]/solution"))
        if key in mim_cells:
            _fail(f"matrices/mim[{i}]", f"duplicate cell for {key[0].value}/{key[1]}")
        mim_cells[key] = _int(cell["strength"], f"matrices/mim[{i}]/strength")
    interaction_cells = _cell_map(raw_matrices.get("interactions", []), "matrices/interactions", "a", "b", "strength", _num)
    try:
        interactions = InteractionMatrix(interaction_cells)
    except ValueError as exc:
        raise MalformedSyntax(f"matrices/interactions: {exc}") from exc
    matrices = Matrices(
        qfd=_cell_map(raw_matrices.get("qfd", []), "matrices/qfd", "requirement", "property", "strength", _int),
        dpm=_cell_map(raw_matrices.get("dpm", []), "matrices/dpm", "property", "solution", "strength", _int),
        mim=MimMatrix(mim_cells),
        interactions=interactions,
        pugh=_cell_map(raw_matrices.get("pugh", []), "matrices/pugh", "concept", "criterion", "value", _int),
        numeric=_cell_map(raw_matrices.get("numeric", []), "matrices/numeric", "concept", "criterion", "value", _int),
    )

    raw_adcd = _obj(top.get("adcd", {}), "adcd", set(), {"nodes", "edges", "precedence"})
    edges = []
    for i, e in enumerate(_list(raw_adcd.get("edges", []), "adcd/edges")):
        _obj(e, f"adcd/edges[{i}]", {"a", "b", "direction", "fastener"}, {"access", "annotation"})
        raw_f = _obj(
            e["fastener"], f"adcd/edges[{i}]/fastener", {"kind"}, {"label", "requires_tool", "destructive_removal"}
        )
        fastener = Fastener(
            type=_enum(raw_f["kind"], FastenerType, f"adcd/edges[{i}]/fastener/kind"),
            label=_opt_str(raw_f.get("label"), f"adcd/edges[{i}]/fastener/label"),
            requires_tool=None if raw_f.get("requires_tool") is None else _bool(raw_f["requires_tool"], f"adcd/edges[{i}]/fastener/requires_tool"),
            destructive_removal=None if raw_f.get("destructive_removal") is None else _bool(raw_f["destructive_removal"], f"adcd/edges[{i}]/fastener/destructive_removal"),
        )
        edges.append(
            Connection(
                set=ModuleSet(_str(e["a"], f"adcd/edges[{i}]/a"), _str(e["b"], f"adcd/edges[{i}]/b")),
                direction=_enum(e["direction"], Direction, f"adcd/edges[{i}]/direction"),
                fastener=fastener,
                access=_enum(e.get("access", Access.CLEAR.value), Access, f"adcd/edges[{i}]/access"),
                annotation=_str(e.get("annotation", ""), f"adcd/edges[{i}]/annotation"),
            )
        )
    precedence = []
    for i, p in enumerate(_list(raw_adcd.get("precedence", []), "adcd/precedence")):
        _obj(p, f"adcd/precedence[{i}]", {"before", "after"})
        precedence.append((_str(p["before"], f"adcd/precedence[{i}]/before"), _str(p["after"], f"adcd/precedence[{i}]/after")))
    graph = AdcdGraph(
        nodes=_str_list(raw_adcd.get("nodes", []), "adcd/nodes"),
        edges=tuple(edges),
        precedence=tuple(precedence),
    )

    records = []
    for i, r in enumerate(_list(top.get("msasm", []), "msasm")):
        _obj(r, f"msasm[{i}]", {"a", "b", "criterion", "score"}, {"provenance", "note"})
        records.append(
            MsasmRecord(
                set=ModuleSet(_str(r["a"], f"msasm[{i}]/a"), _str(r["b"], f"msasm[{i}]/b")),
                criterion=_str(r["criterion"], f"msasm[{i}]/criterion"),
                score=_int(r["score"], f"msasm[{i}]/score"),
                provenance=_enum(r.get("provenance", Provenance.CONSENSUS.value), Provenance, f"msasm[{i}]/provenance"),
                note=_opt_str(r.get("note"), f"msasm[{i}]/note"),
            )
        )

    raw_config = _obj(
        top.get("config", {}),
        "config",
        set(),
        {
            "mim_candidate_threshold",
            "clustering_lambda",
            "clustering_max_blocks",
            "fastener_diversity_threshold",
            "msasm_criteria",
            "band_revise_at",
            "band_critical_at",
            "reusable_modules",
        },
    )
    msasm_criteria = raw_config.get("msasm_criteria")
    config = ProjectConfig(
        mim_candidate_threshold=_num(raw_config.get("mim_candidate_threshold", 9), "config/mim_candidate_threshold"),
        clustering_lambda=_num(raw_config.get("clustering_lambda", 0.5), "config/clustering_lambda"),
        clustering_max_blocks=None
        if raw_config.get("clustering_max_blocks") is None
        else _int(raw_config["clustering_max_blocks"], "config/clustering_max_blocks"),
        fastener_diversity_threshold=_int(raw_config.get("fastener_diversity_threshold", 3), "config/fastener_diversity_threshold"),
        msasm_criteria=None if msasm_criteria is None else _str_list(msasm_criteria, "config/msasm_criteria"),
        band_revise_at=_num(raw_config.get("band_revise_at", 2.0), "config/band_revise_at"),
        band_critical_at=_num(raw_config.get("band_critical_at", 3.5), "config/band_critical_at"),
        reusable_modules=_str_list(raw_config.get("reusable_modules", []), "config/reusable_modules"),
    )

    return Project(
        name=_str(top["name"], "name"),
        schema_version=version,
        requirements=requirements,
        properties=properties,
        solutions=solutions,
        modules=modules,
        module_sets=module_sets,
        criteria=tuple(criteria),
        concepts=concepts,
        matrices=matrices,
        adcd=graph,
        msasm=tuple(records),
        config=config,
    )


def load_project(data: Union[bytes, str]) -> Project:
    """Parse and validate a project document; validation errors reject the
    load with the report attached."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedSyntax(f"not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedSyntax(f"invalid JSON: {exc}") from exc
    project = parse_document(doc)
    report = validate_project(project)
    if not report.ok:
        raise ValidationFailed(f"project has {len(report.errors)} validation error(s)", report)
    return project


def to_document(project: Project) -> dict:
    """Canonical JSON-ready dict: every schema key present, entity lists in id
    order."""
    return {
        "schema_version": project.schema_version,
        "name": project.name,
        "requirements": [
            {"id": r.id, "statement": r.statement, "raw_weight": r.raw_weight}
            for r in sorted(project.requirements, key=lambda r: r.id)
        ],
        "properties": [
            {"id": p.id, "name": p.name, "target": p.target}
            for p in sorted(project.properties, key=lambda p: p.id)
        ],
        "solutions": [
            {"id": s.id, "name": s.name, "realizes": sorted(s.realizes)}
            for s in sorted(project.solutions, key=lambda s: s.id)
        ],
        "modules": [
            {"id": m.id, "name": m.name, "members": sorted(m.members)}
            for m in sorted(project.modules, key=lambda m: m.id)
        ],
        "module_sets": [
            {"a": ms.a, "b": ms.b} for ms in sorted(project.module_sets, key=lambda s: s.key)
        ],
        "criteria": [
            {
                "id": c.id,
                "name": c.name,
                "kind": c.kind.value,
                "scale": c.scale.value,
                "weight": c.weight,
                "anchors": None if c.anchors is None else {str(k): v for k, v in sorted(c.anchors.items())},
            }
            for c in sorted(project.criteria, key=lambda c: c.id)
        ],
        "concepts": [
            {"id": c.id, "name": c.name, "description": c.description, "is_datum": c.is_datum}
            for c in sorted(project.concepts, key=lambda c: c.id)
        ],
        "matrices": {
            "qfd": [
                {"requirement": a, "property": b, "strength": v}
                for (a, b), v in sorted(project.matrices.qfd.items())
            ],
            "dpm": [
                {"property": a, "solution": b, "strength": v}
                for (a, b), v in sorted(project.matrices.dpm.items())
            ],
            "mim": [
                {"driver": d.value, "solution": s, "strength": v}
                for (d, s), v in sorted(
                    project.matrices.mim.cells.items(), key=lambda kv: (kv[0][1], DRIVER_ORDER.index(kv[0][0]))
                )
            ],
            "interactions": [
                {"a": a, "b": b, "strength": v}
                for (a, b), v in sorted(project.matrices.interactions.cells.items())
            ],
            "pugh": [
                {"concept": a, "criterion": b, "value": v}
                for (a, b), v in sorted(project.matrices.pugh.items())
            ],
            "numeric": [
                {"concept": a, "criterion": b, "value": v}
                for (a, b), v in sorted(project.matrices.numeric.items())
            ],
        },
        "adcd": {
            "nodes": sorted(project.adcd.nodes),
            "edges": [
                {
                    "a": e.set.a,
                    "b": e.set.b,
                    "direction": e.direction.value,
                    "fastener": {
                        "kind": e.fastener.type.value,
                        "label": e.fastener.label,
                        "requires_tool": e.fastener.requires_tool,
                        "destructive_removal": e.fastener.destructive_removal,
                    },
                    "access": e.access.value,
                    "annotation": e.annotation,
                }
                for e in sorted(
                    project.adcd.edges,
                    key=lambda e: (
                        e.set.a,
                        e.set.b,
                        e.direction.value,
                        e.fastener.type.value,
                        e.fastener.label or "",
                        e.access.value,
                        e.annotation,
                    ),
                )
            ],
            "precedence": [
                {"before": before, "after": after} for before, after in sorted(project.adcd.precedence)
            ],
        },
        "msasm": [
            {
                "a": r.set.a,
                "b": r.set.b,
                "criterion": r.criterion,
                "score": r.score,
                "provenance": r.provenance.value,
                "note": r.note,
            }
            for r in sorted(project.msasm, key=lambda r: (r.set.key, r.criterion))
        ],
        "config": {
            "mim_candidate_threshold": project.config.mim_candidate_threshold,
            "clustering_lambda": project.config.clustering_lambda,
            "clustering_max_blocks": project.config.clustering_max_blocks,
            "fastener_diversity_threshold": project.config.fastener_diversity_threshold,
            "msasm_criteria": None if project.config.msasm_criteria is None else list(project.config.msasm_criteria),
            "band_revise_at": project.config.band_revise_at,
            "band_critical_at": project.config.band_critical_at,
            "reusable_modules": sorted(project.config.reusable_modules),
        },
    }


def save_project(project: Project) -> bytes:
    """Serialize to canonical bytes; load(save(p)) then save is byte-identical."""
    text = json.dumps(to_document(project), ensure_ascii=False, allow_nan=False, indent=2, sort_keys=True)
    return (text + "\n").encode("utf-8")


def write_project_file(project: Project, path: Union[str, Path]) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    path = Path(path)
    data = save_project(project)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


MATRIX_IDS = ("cvr", "qfd", "dpm", "mim", "msasm", "interactions")


def export_csv(matrix_id: str, project: Project) -> bytes:
    """Export one matrix as RFC-4180-style CSV (header row, id-ordered rows)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    if matrix_id == "cvr":
        writer.writerow(["requirement", "raw_weight", "weight"])
        if project.requirements:
            cvr = compute_cvr(project.requirements)
            for r in sorted(project.requirements, key=lambda r: r.id):
                writer.writerow([r.id, r.raw_weight, cvr.get(r.id)])
    elif matrix_id == "qfd":
        prop_ids = sorted(project.property_ids())
        writer.writerow(["requirement"] + prop_ids)
        for r in sorted(project.requirements, key=lambda r: r.id):
            writer.writerow([r.id] + [project.matrices.qfd.get((r.id, p), 0) for p in prop_ids])
    elif matrix_id == "dpm":
        sol_ids = sorted(project.solution_ids())
        writer.writerow(["property"] + sol_ids)
        for p in sorted(project.properties, key=lambda p: p.id):
            writer.writerow([p.id] + [project.matrices.dpm.get((p.id, s), 0) for s in sol_ids])
    elif matrix_id == "mim":
        writer.writerow(["solution"] + [d.value for d in DRIVER_ORDER] + ["total", "candidate"])
        mim = project.matrices.mim
        for s in mim.solutions():
            profile = mim.profile(s)
            total = sum(profile)
            candidate = total >= project.config.mim_candidate_threshold
            writer.writerow([s] + list(profile) + [total, str(candidate).lower()])
    elif matrix_id == "interactions":
        writer.writerow(["a", "b", "strength"])
        for (a, b), v in sorted(project.matrices.interactions.cells.items()):
            writer.writerow([a, b, v])
    elif matrix_id == "msasm":
        analysis = analyze(project)
        criteria = list(analysis.msasm_criteria)
        writer.writerow(["set"] + criteria + ["total", "mean", "band"])
        scores_by_set = {}
        for record in project.msasm:
            scores_by_set.setdefault(record.set, {})[record.criterion] = record.score
        for aggregate in analysis.msasm_aggregates:
            scores = scores_by_set.get(aggregate.set, {})
            writer.writerow(
                [aggregate.set.key]
                + [scores.get(c, "") for c in criteria]
                + [aggregate.total, f"{aggregate.mean:.2f}", aggregate.band.value]
            )
    else:
        raise UnknownMatrix(f"no matrix named {matrix_id!r} (choose from {', '.join(MATRIX_IDS)})")
    return buffer.getvalue().encode("utf-8")


def _md_escape(text: str) -> str:
    return text.replace("|", "\\|")


def _md_table(headers: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(_md_escape(h) for h in headers) + " |"]
    lines.append("|" + "|".join(" --- " for _ in headers) + "|")
    for row in rows:
        lines.append("| " + " | ".join(_md_escape(str(v)) for v in row) + " |")
    return lines


def render_report(project: Project, analysis: Optional[ProjectAnalysis] = None) -> str:
    """Deterministic Markdown report over the whole project."""
    if analysis is None:
        analysis = analyze(project)
    lines: list[str] = [f"# {project.name}", ""]
    lines.append(
        f"{len(project.requirements)} requirements, {len(project.properties)} properties, "
        f"{len(project.solutions)} technical solutions, {len(project.modules)} modules, "
        f"{len(project.module_sets)} module sets, {len(project.concepts)} concepts."
    )
    lines.append("")

    lines.append("## Customer value rating")
    lines.append("")
    if analysis.cvr is None:
        lines.append("No requirements captured.")
    else:
        rows = [
            [r.id, r.statement, str(r.raw_weight), f"{analysis.cvr.get(r.id):.4f}"]
            for r in sorted(project.requirements, key=lambda r: r.id)
        ]
        lines.extend(_md_table(["requirement", "statement", "raw weight", "weight"], rows))
    lines.append("")

    lines.append("## Requirement-property mapping (QFD)")
    lines.append("")
    prop_ids = sorted(project.property_ids())
    if analysis.property_importance is None or not prop_ids:
        lines.append("No mapping available.")
    else:
        rows = [
            [r.id] + [str(project.matrices.qfd.get((r.id, p), 0)) for p in prop_ids]
            for r in sorted(project.requirements, key=lambda r: r.id)
        ]
        rows.append(["importance"] + [f"{analysis.property_importance.get(p):.3f}" for p in prop_ids])
        lines.extend(_md_table(["requirement"] + prop_ids, rows))
    lines.append("")

    lines.append("## Property-solution mapping (DPM)")
    lines.append("")
    sol_ids = sorted(project.solution_ids())
    if analysis.solution_importance is None or not sol_ids:
        lines.append("No mapping available.")
    else:
        rows = [
            [p] + [str(project.matrices.dpm.get((p, s), 0)) for s in sol_ids] for p in prop_ids
        ]
        rows.append(["importance"] + [f"{analysis.solution_importance.get(s):.3f}" for s in sol_ids])
        lines.extend(_md_table(["property"] + sol_ids, rows))
    lines.append("")

    lines.append("## Module indication (MIM)")
    lines.append("")
    if not analysis.mim.per_solution_total:
        lines.append("No driver scores recorded.")
    else:
        rows = [
            [s, str(analysis.mim.per_solution_total[s]), "yes" if analysis.mim.candidate_flags[s] else "no"]
            for s in sorted(analysis.mim.per_solution_total)
        ]
        lines.extend(_md_table(["solution", "driver total", "module candidate"], rows))
    lines.append("")

    lines.append("## Concept evaluation")
    lines.append("")
    if analysis.concept_ranking is None:
        lines.append("none evaluated")
    elif analysis.concept_mode == "pugh":
        rows = [
            [str(i + 1), r.concept, f"{r.net:+g}"] for i, r in enumerate(analysis.concept_ranking)
        ]
        lines.extend(_md_table(["rank", "concept", "net vs datum"], rows))
    else:
        rows = [
            [str(i + 1), r.concept, f"{r.total:g}"] for i, r in enumerate(analysis.concept_ranking)
        ]
        lines.extend(_md_table(["rank", "concept", "total (lower is better)"], rows))
    lines.append("")

    lines.append("## Assembly directions and connections")
    lines.append("")
    adcd_issues = list(analysis.adcd_report.issues)
    engine_issues = list(analysis.assembly_issues) + list(analysis.dfd_issues)
    if not project.adcd.nodes:
        lines.append("No connection graph drafted.")
    else:
        for issue in adcd_issues:
            lines.append(f"- [{issue.severity.value}] {issue.path}: {issue.message}")
        for issue in engine_issues:
            where = issue.location.key if issue.location else "graph"
            lines.append(f"- [{issue.severity.value}] {issue.kind.value} at {where}: {issue.message}")
        if not adcd_issues and not engine_issues:
            lines.append("No issues detected.")
        if analysis.sequence is not None and analysis.sequence.sequence:
            steps = " -> ".join(f"{m} ({d.value})" for m, d in analysis.sequence.sequence)
            lines.append("")
            lines.append(f"Suggested insertion order: {steps} ({analysis.sequence.reorientations} reorientations)")
    lines.append("")

    lines.append("## Module set assembly strategy (MSASM)")
    lines.append("")
    if not analysis.msasm_aggregates:
        lines.append("No module sets scored.")
    else:
        criteria = list(analysis.msasm_criteria)
        scores_by_set: dict = {}
        for record in project.msasm:
            scores_by_set.setdefault(record.set, {})[record.criterion] = record.score
        rows = []
        for aggregate in analysis.msasm_aggregates:
            scores = scores_by_set.get(aggregate.set, {})
            rows.append(
                [aggregate.set.key]
                + [str(scores.get(c, "")) for c in criteria]
                + [str(aggregate.total), f"{aggregate.mean:.2f}", aggregate.band.value, band_colour(aggregate.band)]
            )
        lines.extend(_md_table(["set"] + criteria + ["total", "mean", "band", "colour"], rows))
    if analysis.unscored_sets:
        lines.append("")
        lines.append("Unscored module sets: " + ", ".join(ms.key for ms in analysis.unscored_sets))
    lines.append("")

    lines.append("## Bottleneck ranking")
    lines.append("")
    if not analysis.bottlenecks:
        lines.append("No module sets scored.")
    else:
        for i, aggregate in enumerate(analysis.bottlenecks):
            lines.append(
                f"{i + 1}. {aggregate.set.key} - {aggregate.band.value} ({band_colour(aggregate.band)}), "
                f"mean {aggregate.mean:.2f}, total {aggregate.total}"
            )
    lines.append("")
    return "\n".join(lines)

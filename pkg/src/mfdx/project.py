"""Project container and whole-project consistency validation.

A project is the single versioned document tying requirements, properties,
solutions, modules, criteria, matrices, the connection graph, and interface
scores together.  ``validate_project`` is pure and idempotent; it never
mutates and reports every violated invariant with a stable path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from mfdx.adcd import AdcdGraph, validate_adcd
from mfdx.clustering import InteractionMatrix
from mfdx.matrices import RELATION_STRENGTHS, MimMatrix
from mfdx.model import (
    Concept,
    Criterion,
    CustomerRequirement,
    Module,
    ModuleSet,
    ProductProperty,
    Scale,
    Severity,
    TechnicalSolution,
    ValidationIssue,
    ValidationReport,
)
from mfdx.msasm import DEFAULT_CRITERIA_IDS, MsasmRecord

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Matrices:
    qfd: dict[tuple[str, str], int] = field(default_factory=dict)  # (requirement, property)
    dpm: dict[tuple[str, str], int] = field(default_factory=dict)  # (property, solution)
    mim: MimMatrix = field(default_factory=MimMatrix)
    interactions: InteractionMatrix = field(default_factory=InteractionMatrix)
    pugh: dict[tuple[str, str], int] = field(default_factory=dict)  # (concept, criterion)
    numeric: dict[tuple[str, str], int] = field(default_factory=dict)  # (concept, criterion)


@dataclass(frozen=True)
class ProjectConfig:
    mim_candidate_threshold: float = 9
    clustering_lambda: float = 0.5
    clustering_max_blocks: Optional[int] = None
    fastener_diversity_threshold: int = 3
    msasm_criteria: Optional[tuple[str, ...]] = None  # None = built-in default set
    band_revise_at: float = 2.0
    band_critical_at: float = 3.5
    reusable_modules: tuple[str, ...] = ()


@dataclass(frozen=True)
class Project:
    name: str
    schema_version: int = SCHEMA_VERSION
    requirements: tuple[CustomerRequirement, ...] = ()
    properties: tuple[ProductProperty, ...] = ()
    solutions: tuple[TechnicalSolution, ...] = ()
    modules: tuple[Module, ...] = ()
    module_sets: tuple[ModuleSet, ...] = ()
    criteria: tuple[Criterion, ...] = ()
    concepts: tuple[Concept, ...] = ()
    matrices: Matrices = field(default_factory=Matrices)
    adcd: AdcdGraph = field(default_factory=AdcdGraph)
    msasm: tuple[MsasmRecord, ...] = ()
    config: ProjectConfig = field(default_factory=ProjectConfig)

    def requirement_ids(self) -> set[str]:
        return {r.id for r in self.requirements}

    def property_ids(self) -> set[str]:
        return {p.id for p in self.properties}

    def solution_ids(self) -> set[str]:
        return {s.id for s in self.solutions}

    def module_ids(self) -> set[str]:
        return {m.id for m in self.modules}

    def criterion_ids(self) -> set[str]:
        return {c.id for c in self.criteria}

    def criterion_by_id(self, cid: str) -> Optional[Criterion]:
        for c in self.criteria:
            if c.id == cid:
                return c
        return None

    def effective_msasm_criteria(self) -> tuple[str, ...]:
        if self.config.msasm_criteria is not None:
            return self.config.msasm_criteria
        return DEFAULT_CRITERIA_IDS


def _check_unique(items, what: str, issues: list[ValidationIssue]) -> None:
    seen = set()
    for item in items:
        if item.id in seen:
            issues.append(ValidationIssue(Severity.ERROR, what, f"duplicate id {item.id!r}"))
        seen.add(item.id)


def validate_project(project: Project) -> ValidationReport:  # noqa: C901
    """Check every cross-reference and type invariant; errors are data."""
    issues: list[ValidationIssue] = []
    err = lambda path, msg: issues.append(ValidationIssue(Severity.ERROR, path, msg))
    warn = lambda path, msg: issues.append(ValidationIssue(Severity.WARNING, path, msg))

    _check_unique(project.requirements, "requirements", issues)
    for r in project.requirements:
        if not isinstance(r.raw_weight, (int, float)) or isinstance(r.raw_weight, bool) or not r.raw_weight > 0:
            err(f"requirements/{r.id}/raw_weight", f"raw weight must be positive, got {r.raw_weight!r}")

    _check_unique(project.properties, "properties", issues)
    prop_ids = project.property_ids()

    _check_unique(project.solutions, "solutions", issues)
    for s in project.solutions:
        for pid in s.realizes:
            if pid not in prop_ids:
                err(f"solutions/{s.id}/realizes", f"unknown property {pid!r}")
    sol_ids = project.solution_ids()

    _check_unique(project.modules, "modules", issues)
    claimed: dict[str, str] = {}
    for m in project.modules:
        if not m.members:
            err(f"modules/{m.id}/members", "module has no members")
        for sid in m.members:
            if sid not in sol_ids:
                err(f"modules/{m.id}/members", f"unknown solution {sid!r}")
            elif sid in claimed:
                err(f"modules/{m.id}/members", f"solution {sid!r} already belongs to module {claimed[sid]!r}")
            else:
                claimed[sid] = m.id
    mod_ids = project.module_ids()

    seen_sets = set()
    for ms in project.module_sets:
        if ms.a == ms.b:
            err(f"module_sets/{ms.key}", "module set must pair two distinct modules")
        for end in (ms.a, ms.b):
            if end not in mod_ids:
                err(f"module_sets/{ms.key}", f"unknown module {end!r}")
        if ms in seen_sets:
            err("module_sets", f"duplicate module set {ms.key}")
        seen_sets.add(ms)

    _check_unique(project.criteria, "criteria", issues)
    for c in project.criteria:
        if not isinstance(c.weight, (int, float)) or isinstance(c.weight, bool) or not c.weight > 0:
            err(f"criteria/{c.id}/weight", f"weight must be positive, got {c.weight!r}")
        if c.anchors:
            if c.scale is not Scale.ORDINAL_1_5:
                err(f"criteria/{c.id}/anchors", "anchors are only allowed on ordinal 1-5 criteria")
            bad = sorted(k for k in c.anchors if k not in (1, 3, 5))
            if bad:
                err(f"criteria/{c.id}/anchors", f"anchor keys must be 1, 3 or 5, got {bad}")
    crit_ids = project.criterion_ids()

    _check_unique(project.concepts, "concepts", issues)
    datums = [c.id for c in project.concepts if c.is_datum]
    if len(datums) > 1:
        err("concepts", f"more than one datum concept: {sorted(datums)}")
    if project.matrices.pugh and len(datums) == 0:
        err("concepts", "a Pugh matrix is present but no concept is marked as datum")

    req_ids = project.requirement_ids()
    concept_ids = {c.id for c in project.concepts}

    def check_cells(cells, path, left, left_ids, right, right_ids, allowed, range_text):
        for (a, b), value in sorted(cells.items()):
            if a not in left_ids:
                err(f"matrices/{path}/{a}/{b}", f"unknown {left} {a!r}")
            if b not in right_ids:
                err(f"matrices/{path}/{a}/{b}", f"unknown {right} {b!r}")
            if allowed is not None and value not in allowed:
                err(f"matrices/{path}/{a}/{b}", f"value must be {range_text}, got {value!r}")

    check_cells(project.matrices.qfd, "qfd", "requirement", req_ids, "property", prop_ids,
                RELATION_STRENGTHS, "one of 0/1/3/9")
    check_cells(project.matrices.dpm, "dpm", "property", prop_ids, "solution", sol_ids,
                RELATION_STRENGTHS, "one of 0/1/3/9")
    for (driver, sid), value in sorted(project.matrices.mim.cells.items(), key=lambda kv: (kv[0][1], kv[0][0].value)):
        if sid not in sol_ids:
            err(f"matrices/mim/{driver.value}/{sid}", f"unknown solution {sid!r}")
        if value not in RELATION_STRENGTHS:
            err(f"matrices/mim/{driver.value}/{sid}", f"value must be one of 0/1/3/9, got {value!r}")
    for (a, b), value in sorted(project.matrices.interactions.cells.items()):
        for end in (a, b):
            if end not in sol_ids:
                err(f"matrices/interactions/{a}/{b}", f"unknown solution {end!r}")
        if not isinstance(value, (int, float)) or isinstance(value, bool) or value < 0:
            err(f"matrices/interactions/{a}/{b}", f"interaction strength must be non-negative, got {value!r}")
    check_cells(project.matrices.pugh, "pugh", "concept", concept_ids, "criterion", crit_ids,
                (-1, 0, 1), "one of -1/0/+1")
    check_cells(project.matrices.numeric, "numeric", "concept", concept_ids, "criterion", crit_ids,
                (1, 2, 3, 4, 5), "an integer in 1..5")

    for node in project.adcd.nodes:
        if node not in mod_ids:
            err(f"adcd/nodes/{node}", f"unknown module {node!r}")
    issues.extend(validate_adcd(project.adcd).issues)

    effective = project.effective_msasm_criteria()
    scored_sets = set()
    seen_scores = set()
    for record in project.msasm:
        path = f"msasm/{record.set.key}/{record.criterion}"
        for end in (record.set.a, record.set.b):
            if end not in mod_ids:
                err(path, f"unknown module {end!r}")
        if record.criterion not in crit_ids:
            err(path, f"unknown criterion {record.criterion!r}")
        elif record.criterion not in effective:
            warn(path, f"criterion {record.criterion!r} is outside the configured scoring set")
        if not isinstance(record.score, int) or isinstance(record.score, bool) or not 1 <= record.score <= 5:
            err(path, f"score must be an integer in 1..5, got {record.score!r}")
        key = (record.set, record.criterion)
        if key in seen_scores:
            err(path, "duplicate score for this module set and criterion")
        seen_scores.add(key)
        if record.set not in seen_sets:
            warn(path, f"module set {record.set.key} is not declared in module_sets")
        scored_sets.add(record.set)
    for ms in project.module_sets:
        if ms not in scored_sets and ms.a != ms.b and ms.a in mod_ids and ms.b in mod_ids:
            warn(f"module_sets/{ms.key}", "module set has no scores yet")

    cfg = project.config
    if cfg.msasm_criteria is not None:
        for cid in cfg.msasm_criteria:
            if cid not in crit_ids:
                err("config/msasm_criteria", f"unknown criterion {cid!r}")
    for mid in cfg.reusable_modules:
        if mid not in mod_ids:
            err("config/reusable_modules", f"unknown module {mid!r}")
    if not 1.0 <= cfg.band_revise_at < cfg.band_critical_at <= 5.0:
        err("config/band_revise_at", "band thresholds must satisfy 1 <= revise < critical <= 5")
    if cfg.clustering_lambda < 0:
        err("config/clustering_lambda", "lambda must be non-negative")
    if cfg.clustering_max_blocks is not None and cfg.clustering_max_blocks < 1:
        err("config/clustering_max_blocks", "max blocks must be at least 1")

    return ValidationReport(tuple(issues))

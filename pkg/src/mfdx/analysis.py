"""One-stop computation of every derived result for a project.

The CLI, the Markdown report, and the HTTP service all consume this module,
so batch and live use see identical numbers by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from mfdx import adcd as adcd_mod
from mfdx.adcd import Issue, SequenceResult, validate_adcd
from mfdx.concepts import NumericResult, PughResult, numeric_evaluate, pugh_evaluate
from mfdx.errors import MissingDirection
from mfdx.matrices import ImportanceVector, MimSummary, compute_cvr, compute_dpm, compute_mim, compute_qfd
from mfdx.model import ModuleSet, ValidationReport
from mfdx.msasm import MsasmAggregate, aggregate_msasm, rank_bottlenecks
from mfdx.project import Project


@dataclass(frozen=True)
class ProjectAnalysis:
    cvr: Optional[ImportanceVector]
    property_importance: Optional[ImportanceVector]
    solution_importance: Optional[ImportanceVector]
    mim: MimSummary
    concept_mode: Optional[str]
    concept_ranking: Optional[Sequence[Union[PughResult, NumericResult]]]
    adcd_report: ValidationReport
    assembly_issues: tuple[Issue, ...]
    dfd_issues: tuple[Issue, ...]
    sequence: Optional[SequenceResult]
    msasm_criteria: tuple[str, ...]
    msasm_aggregates: tuple[MsasmAggregate, ...]
    bottlenecks: tuple[MsasmAggregate, ...]
    unscored_sets: tuple[ModuleSet, ...]


def evaluate_concepts(project: Project, mode: str, cells=None):
    """Evaluate the project's concept matrix in the given mode ("pugh" or
    "numeric"); ``cells`` may override the stored matrix."""
    if mode not in ("pugh", "numeric"):
        raise ValueError(f"unknown evaluation mode {mode!r}")
    if cells is None:
        cells = project.matrices.pugh if mode == "pugh" else project.matrices.numeric
    criterion_ids = sorted({crit for (_c, crit) in cells})
    criteria = [c for c in project.criteria if c.id in criterion_ids]
    if mode == "pugh":
        return pugh_evaluate(project.concepts, criteria, cells)
    return numeric_evaluate(project.concepts, criteria, cells)


def analyze(project: Project) -> ProjectAnalysis:
    """Compute all derived views of the project."""
    cvr = compute_cvr(project.requirements) if project.requirements else None
    prop_importance = None
    solution_importance = None
    if cvr is not None:
        prop_importance = compute_qfd(cvr, project.matrices.qfd, sorted(project.property_ids()))
        solution_importance = compute_dpm(
            prop_importance, project.matrices.dpm, sorted(project.solution_ids())
        )
    mim = compute_mim(
        project.matrices.mim,
        sorted(project.solution_ids()),
        project.config.mim_candidate_threshold,
    )

    concept_mode: Optional[str] = None
    concept_ranking = None
    if project.concepts:
        if project.matrices.pugh:
            concept_mode = "pugh"
        elif project.matrices.numeric:
            concept_mode = "numeric"
        if concept_mode:
            concept_ranking = evaluate_concepts(project, concept_mode)

    adcd_report = validate_adcd(project.adcd)
    assembly_issues: tuple[Issue, ...] = ()
    dfd_issues: tuple[Issue, ...] = ()
    sequence = None
    if adcd_report.ok and project.adcd.nodes:
        assembly_issues = tuple(adcd_mod.detect_assembly_issues(project.adcd))
        dfd_issues = tuple(
            adcd_mod.detect_dfd_issues(
                project.adcd,
                project.config.reusable_modules,
                project.config.fastener_diversity_threshold,
            )
        )
        try:
            sequence = adcd_mod.optimal_sequence(project.adcd)
        except MissingDirection:
            sequence = None  # isolated modules already surface as warnings

    criteria_config = project.effective_msasm_criteria()
    aggregates = tuple(
        aggregate_msasm(
            project.msasm,
            criteria_config,
            project.config.band_revise_at,
            project.config.band_critical_at,
        )
    )
    bottlenecks = tuple(rank_bottlenecks(aggregates))
    scored = {a.set for a in aggregates}
    unscored = tuple(sorted((ms for ms in project.module_sets if ms not in scored), key=lambda s: s.key))

    return ProjectAnalysis(
        cvr=cvr,
        property_importance=prop_importance,
        solution_importance=solution_importance,
        mim=mim,
        concept_mode=concept_mode,
        concept_ranking=concept_ranking,
        adcd_report=adcd_report,
        assembly_issues=assembly_issues,
        dfd_issues=dfd_issues,
        sequence=sequence,
        msasm_criteria=tuple(criteria_config),
        msasm_aggregates=aggregates,
        bottlenecks=bottlenecks,
        unscored_sets=unscored,
    )

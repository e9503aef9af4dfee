"""Workbench for assembly- and disassembly-aware modular product architecture.

Pipeline: customer requirements weight product properties (CVR/QFD), which
weight technical solutions (DPM); module drivers nominate module candidates
(MIM); clustering proposes modules; concepts are compared on DFA/DFD criteria;
the connection graph surfaces assembly/disassembly issues; and module-pair
interfaces are scored into colour-banded bottleneck rankings (MSASM).
"""

from mfdx.adcd import (
    Access,
    AdcdGraph,
    Connection,
    Direction,
    Fastener,
    FastenerType,
    Issue,
    IssueKind,
    IssueSeverity,
    SequenceResult,
    detect_assembly_issues,
    detect_dfd_issues,
    optimal_sequence,
    reorientation_count,
    to_dot,
    validate_adcd,
)
from mfdx.analysis import ProjectAnalysis, analyze, evaluate_concepts
from mfdx.clustering import (
    ClusteringProposal,
    InteractionMatrix,
    Partition,
    brute_force_partition,
    clustering_objective,
    propose_modules,
)
from mfdx.concepts import (
    CRITERIA_CATALOG,
    NumericResult,
    PughResult,
    criteria_catalog,
    numeric_evaluate,
    pugh_evaluate,
)
from mfdx.matrices import (
    ImportanceVector,
    MimMatrix,
    MimSummary,
    compute_cvr,
    compute_dpm,
    compute_mim,
    compute_qfd,
)
from mfdx.model import (
    Concept,
    Criterion,
    CriterionKind,
    CustomerRequirement,
    Module,
    ModuleDriver,
    ModuleSet,
    ProductProperty,
    Scale,
    Severity,
    TechnicalSolution,
    ValidationIssue,
    ValidationReport,
)
from mfdx.msasm import (
    DEFAULT_CRITERIA,
    Band,
    MsasmAggregate,
    MsasmRecord,
    Provenance,
    aggregate_msasm,
    band_colour,
    rank_bottlenecks,
    record_score,
)
from mfdx.project import Matrices, Project, ProjectConfig, validate_project
from mfdx.project_io import (
    export_csv,
    load_project,
    render_report,
    save_project,
    write_project_file,
)

__version__ = "0.1.0"

"""Module Set Assembly Strategy Matrix.

Module pairs are scored 1-5 per criterion (1 = optimal, 5 = poor).  Split
opinions resolve conservatively to the worst proposal.  Aggregates band each
pair by mean score and rank interface bottlenecks worst-first.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional, Sequence

from mfdx.concepts import CRITERIA_CATALOG
from mfdx.errors import EmptyProposals, OutOfRange, UnknownCriterion
from mfdx.model import Criterion, CriterionKind, ModuleSet


class Provenance(str, Enum):
    CONSENSUS = "consensus"
    CONSERVATIVE_DEFAULT = "conservative_default"
    IMPORTED = "imported"


class Band(str, Enum):
    OPTIMAL = "optimal"
    REVISE = "revise"
    CRITICAL = "critical"


_BAND_RANK = {Band.OPTIMAL: 0, Band.REVISE: 1, Band.CRITICAL: 2}

#: Mean-score thresholds: below ``DEFAULT_REVISE_AT`` is optimal, from there to
#: ``DEFAULT_CRITICAL_AT`` (exclusive) needs revision, at or above is critical.
DEFAULT_REVISE_AT = 2.0
DEFAULT_CRITICAL_AT = 3.5


@dataclass(frozen=True)
class MsasmRecord:
    set: ModuleSet
    criterion: str
    score: int
    provenance: Provenance = Provenance.CONSENSUS
    note: Optional[str] = None


@dataclass(frozen=True)
class MsasmAggregate:
    set: ModuleSet
    total: int
    mean: float
    band: Band
    missing_criteria: tuple[str, ...] = ()


def _anchored(criterion: Criterion, one: str, three: str, five: str) -> Criterion:
    return replace(criterion, anchors={1: one, 3: three, 5: five})


_CATALOG = {c.id: c for c in CRITERIA_CATALOG}

#: Default scoring rubric: three interface-handling criteria with anchor texts
#: plus tooling, force, and connector-destruction dimensions.
DEFAULT_CRITERIA: tuple[Criterion, ...] = (
    _anchored(
        Criterion("attachment_interface_connections", "Attachment interface connections", CriterionKind.DFA),
        "Few, simple connections; snap-fits like",
        "Multiple connections but manageable",
        "Numerous or tangled connections; requires tools or cable routing",
    ),
    _anchored(
        Criterion("assembly_direction", "Assembly direction", CriterionKind.DFA),
        "Vertical insertion with gravity assistance",
        "Mixed directions; module needs reorienting",
        "Many directions; requires turning or complex manipulation",
    ),
    _anchored(
        _CATALOG["accessibility"],
        "All parts visible and reachable from standard workstation",
        "Partial obstruction; reaching inside housing",
        "Inaccessible without disassembly or special tools",
    ),
    _CATALOG["tool_requirements"],
    _CATALOG["force_intensity"],
    _CATALOG["connector_destruction"],
)

DEFAULT_CRITERIA_IDS: tuple[str, ...] = tuple(c.id for c in DEFAULT_CRITERIA)


def record_score(module_set: ModuleSet, criterion: str, proposals: Sequence[int]) -> MsasmRecord:
    """Resolve one or more proposed scores into a record.

    Unanimous proposals become a consensus score; a split resolves to the
    worst (highest) proposal with the spread noted.
    """
    if not proposals:
        raise EmptyProposals(f"no proposals for {module_set.key} / {criterion}")
    for p in proposals:
        if not isinstance(p, int) or isinstance(p, bool) or not 1 <= p <= 5:
            raise OutOfRange(f"proposal {p!r} is outside the 1-5 scale")
    distinct = sorted(set(proposals))
    if len(distinct) == 1:
        return MsasmRecord(module_set, criterion, distinct[0], Provenance.CONSENSUS)
    return MsasmRecord(
        module_set,
        criterion,
        distinct[-1],
        Provenance.CONSERVATIVE_DEFAULT,
        note=f"split opinion {distinct}; worst case kept",
    )


def band_for(mean: float, revise_at: float = DEFAULT_REVISE_AT, critical_at: float = DEFAULT_CRITICAL_AT) -> Band:
    if mean < revise_at:
        return Band.OPTIMAL
    if mean < critical_at:
        return Band.REVISE
    return Band.CRITICAL


def aggregate_msasm(
    records: Iterable[MsasmRecord],
    criteria_config: Sequence[str],
    revise_at: float = DEFAULT_REVISE_AT,
    critical_at: float = DEFAULT_CRITICAL_AT,
) -> list[MsasmAggregate]:
    """Aggregate records per module set over the configured criteria.

    Missing scores are reported, never defaulted; totals and means cover the
    scores actually present.
    """
    configured = list(criteria_config)
    by_set: dict[ModuleSet, dict[str, int]] = {}
    for record in records:
        if record.criterion not in configured:
            raise UnknownCriterion(
                f"record for {record.set.key} references criterion {record.criterion!r} "
                "outside the configured set"
            )
        scores = by_set.setdefault(record.set, {})
        if record.criterion in scores:
            raise ValueError(f"duplicate score for {record.set.key} / {record.criterion}")
        scores[record.criterion] = record.score
    aggregates = []
    for module_set in sorted(by_set, key=lambda s: s.key):
        scores = by_set[module_set]
        total = sum(scores.values())
        mean = total / len(scores)
        missing = tuple(c for c in configured if c not in scores)
        aggregates.append(MsasmAggregate(module_set, total, mean, band_for(mean, revise_at, critical_at), missing))
    return aggregates


def rank_bottlenecks(aggregates: Iterable[MsasmAggregate]) -> list[MsasmAggregate]:
    """Worst interfaces first: critical before revise before optimal, then by
    descending mean, descending total, canonical set id."""
    return sorted(
        aggregates,
        key=lambda a: (-_BAND_RANK[a.band], -a.mean, -a.total, a.set.key),
    )


def band_colour(band: Band) -> str:
    return {Band.OPTIMAL: "green", Band.REVISE: "yellow", Band.CRITICAL: "red"}[band]

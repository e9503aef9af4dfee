"""Concept evaluation against production-oriented DFA/DFD criteria.

Supports Pugh comparison against a datum concept and weighted numeric scoring
on the 1-5 ordinal convention (1 = best).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from mfdx.errors import MissingCell, MultipleDatum, NoDatum
from mfdx.model import Concept, Criterion, CriterionKind, Scale

PUGH_VALUES = (-1, 0, 1)
NUMERIC_VALUES = (1, 2, 3, 4, 5)


def _c(cid: str, name: str, kind: CriterionKind) -> Criterion:
    return Criterion(id=cid, name=name, kind=kind, scale=Scale.ORDINAL_1_5, weight=1.0)


#: Built-in evaluation criteria: six core assembly/disassembly dimensions plus
#: the shorthand DFA and DFD checklists used in facilitated sessions.
CRITERIA_CATALOG: tuple[Criterion, ...] = (
    _c("assembly_time", "Assembly time", CriterionKind.DFA),
    _c("ease_of_insertion", "Ease of insertion", CriterionKind.DFA),
    _c("tool_requirements", "Tool requirements", CriterionKind.BOTH),
    _c("access", "Access", CriterionKind.BOTH),
    _c("connector_destruction", "Connector destruction", CriterionKind.DFD),
    _c("force_intensity", "Force intensity", CriterionKind.DFD),
    _c("reduced_part_count", "Reduced part count", CriterionKind.DFA),
    _c("insertion_ease", "Insertion ease", CriterionKind.DFA),
    _c("minimal_reorientation", "Minimal reorientation", CriterionKind.DFA),
    _c("tooling", "Tooling", CriterionKind.DFA),
    _c("easy_removability", "Easy removability", CriterionKind.DFD),
    _c("connector_standardisation", "Connector standardisation", CriterionKind.DFD),
    _c("accessibility", "Accessibility", CriterionKind.DFD),
    _c("damage_avoidance", "Damage avoidance", CriterionKind.DFD),
)


def criteria_catalog(kind: str = "ALL") -> tuple[Criterion, ...]:
    """Built-in criteria filtered by family.

    ``DFA`` and ``DFD`` filters both include criteria tagged ``BOTH``; the
    ``BOTH`` filter returns exactly the dual-tagged criteria.
    """
    kind = kind.upper()
    if kind == "ALL":
        return CRITERIA_CATALOG
    if kind == "BOTH":
        return tuple(c for c in CRITERIA_CATALOG if c.kind is CriterionKind.BOTH)
    if kind in ("DFA", "DFD"):
        wanted = CriterionKind(kind)
        return tuple(c for c in CRITERIA_CATALOG if c.kind in (wanted, CriterionKind.BOTH))
    raise ValueError(f"unknown criteria filter {kind!r}")


@dataclass(frozen=True)
class PughResult:
    concept: str
    net: float


@dataclass(frozen=True)
class NumericResult:
    concept: str
    total: float


def _find_datum(concepts: Sequence[Concept]) -> Concept:
    datums = [c for c in concepts if c.is_datum]
    if not datums:
        raise NoDatum("a Pugh comparison needs exactly one datum concept")
    if len(datums) > 1:
        raise MultipleDatum(f"multiple datum concepts: {sorted(c.id for c in datums)}")
    return datums[0]


def pugh_evaluate(
    concepts: Sequence[Concept],
    criteria: Sequence[Criterion],
    cells: Mapping[tuple[str, str], int],
) -> list[PughResult]:
    """Rank concepts by weighted better/same/worse judgments against the datum.

    The datum scores 0 by definition and is included in the ranking; ties
    break by concept id.
    """
    datum = _find_datum(concepts)
    results = []
    for concept in concepts:
        if concept.id == datum.id:
            results.append(PughResult(concept.id, 0.0))
            continue
        net = 0.0
        for criterion in criteria:
            key = (concept.id, criterion.id)
            if key not in cells:
                raise MissingCell(f"no judgment for concept {concept.id!r} on criterion {criterion.id!r}")
            value = cells[key]
            if value not in PUGH_VALUES:
                raise ValueError(f"Pugh cell {key} must be one of {PUGH_VALUES}, got {value!r}")
            net += criterion.weight * value
        results.append(PughResult(concept.id, net))
    return sorted(results, key=lambda r: (-r.net, r.concept))


def numeric_evaluate(
    concepts: Sequence[Concept],
    criteria: Sequence[Criterion],
    cells: Mapping[tuple[str, str], int],
) -> list[NumericResult]:
    """Rank concepts by weighted ordinal totals (ascending; 1 = best)."""
    results = []
    for concept in concepts:
        total = 0.0
        for criterion in criteria:
            key = (concept.id, criterion.id)
            if key not in cells:
                raise MissingCell(f"no score for concept {concept.id!r} on criterion {criterion.id!r}")
            value = cells[key]
            if value not in NUMERIC_VALUES:
                raise ValueError(f"numeric cell {key} must be in 1..5, got {value!r}")
            total += criterion.weight * value
        results.append(NumericResult(concept.id, total))
    return sorted(results, key=lambda r: (r.total, r.concept))

"""PMM matrix pipeline: CVR weighting, QFD and DPM mappings, MIM driver scoring.

All operations are pure functions over immutable inputs.  Sums of floats use
``math.fsum`` so results are exactly rounded and independent of accumulation
order, which keeps reports bit-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from mfdx.errors import DanglingReference, EmptyInput, NonPositiveWeight
from mfdx.model import DRIVER_ORDER, CustomerRequirement, ModuleDriver

#: Allowed relation strengths (standard QFD convention); absent cell means 0.
RELATION_STRENGTHS: tuple[int, ...] = (0, 1, 3, 9)

#: Total driver strength at which a solution is nominated as a module candidate.
DEFAULT_CANDIDATE_THRESHOLD = 9


@dataclass(frozen=True)
class ImportanceVector:
    """Named importance entries over one basis (requirement/property/solution)."""

    basis: str
    entries: Mapping[str, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(sorted(self.entries.items())))

    def get(self, key: str) -> float:
        return self.entries.get(key, 0.0)


@dataclass(frozen=True)
class MimMatrix:
    """Module Indication Matrix: (driver, solution) -> relation strength."""

    cells: Mapping[tuple[ModuleDriver, str], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        canonical = {
            (ModuleDriver(d), s): v
            for (d, s), v in sorted(
                self.cells.items(),
                key=lambda kv: (kv[0][1], DRIVER_ORDER.index(ModuleDriver(kv[0][0]))),
            )
        }
        object.__setattr__(self, "cells", canonical)

    def strength(self, driver: ModuleDriver, solution: str) -> int:
        return self.cells.get((driver, solution), 0)

    def solutions(self) -> tuple[str, ...]:
        return tuple(sorted({s for (_, s) in self.cells}))

    def profile(self, solution: str) -> tuple[int, ...]:
        """Driver-strength vector for one solution, in catalog driver order."""
        return tuple(self.strength(d, solution) for d in DRIVER_ORDER)


@dataclass(frozen=True)
class MimSummary:
    per_solution_total: Mapping[str, int]
    profiles: Mapping[str, tuple[int, ...]]
    candidate_flags: Mapping[str, bool]


def _check_strengths(relations: Mapping, what: str) -> None:
    for key, value in relations.items():
        if value not in RELATION_STRENGTHS:
            raise ValueError(f"{what} strength for {key} must be one of {RELATION_STRENGTHS}, got {value!r}")


def compute_cvr(requirements: Sequence[CustomerRequirement]) -> ImportanceVector:
    """Normalize raw requirement weights to a customer value rating summing to 1."""
    if not requirements:
        raise EmptyInput("customer value rating needs at least one requirement")
    for r in requirements:
        if not r.raw_weight > 0:
            raise NonPositiveWeight(f"requirement {r.id} has non-positive weight {r.raw_weight!r}")
    ordered = sorted(requirements, key=lambda r: r.id)
    total = math.fsum(r.raw_weight for r in ordered)
    return ImportanceVector("requirement", {r.id: r.raw_weight / total for r in ordered})


def _propagate(
    source: ImportanceVector,
    relations: Mapping[tuple[str, str], int],
    targets: Optional[Iterable[str]],
    source_basis: str,
    target_basis: str,
) -> ImportanceVector:
    if source.basis != source_basis:
        raise ValueError(f"expected a {source_basis}-basis vector, got basis {source.basis!r}")
    _check_strengths(relations, f"{source_basis}-{target_basis}")
    known = set(source.entries)
    for src, _tgt in relations:
        if src not in known:
            raise DanglingReference(f"relation references unknown {source_basis} {src!r}")
    target_ids = set(tgt for (_src, tgt) in relations)
    if targets is not None:
        declared = set(targets)
        undeclared = target_ids - declared
        if undeclared:
            raise DanglingReference(
                f"relation references unknown {target_basis} {sorted(undeclared)!r}"
            )
        target_ids = declared
    entries = {}
    for tgt in sorted(target_ids):
        entries[tgt] = math.fsum(
            source.entries[src] * strength
            for (src, rel_tgt), strength in sorted(relations.items())
            if rel_tgt == tgt
        )
    return ImportanceVector(target_basis, entries)


def compute_qfd(
    cvr: ImportanceVector,
    relations: Mapping[tuple[str, str], int],
    properties: Optional[Iterable[str]] = None,
) -> ImportanceVector:
    """Map requirement weights onto product properties.

    ``properties``, when given, fixes the output id set; properties with no
    relations get importance 0.
    """
    return _propagate(cvr, relations, properties, "requirement", "property")


def compute_dpm(
    prop_importance: ImportanceVector,
    relations: Mapping[tuple[str, str], int],
    solutions: Optional[Iterable[str]] = None,
) -> ImportanceVector:
    """Map property importance onto technical solutions."""
    return _propagate(prop_importance, relations, solutions, "property", "solution")


def compute_mim(
    mim: MimMatrix,
    solutions: Optional[Iterable[str]] = None,
    candidate_threshold: float = DEFAULT_CANDIDATE_THRESHOLD,
) -> MimSummary:
    """Total driver strength per solution plus module-candidate nomination.

    A solution is a candidate when its total reaches ``candidate_threshold``
    (default: one strong driver suffices).
    """
    _check_strengths(mim.cells, "driver")
    if solutions is None:
        ids = mim.solutions()
    else:
        ids = tuple(sorted(set(solutions)))
        unknown = set(mim.solutions()) - set(ids)
        if unknown:
            raise DanglingReference(f"matrix references unknown solutions {sorted(unknown)!r}")
    totals = {}
    profiles = {}
    flags = {}
    for s in ids:
        profile = mim.profile(s)
        totals[s] = sum(profile)
        profiles[s] = profile
        flags[s] = totals[s] >= candidate_threshold
    return MimSummary(totals, profiles, flags)

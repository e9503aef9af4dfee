"""Core domain types of the Product Management Map.

All types are immutable value objects; consistency rules that span the whole
project live in :mod:`mfdx.project`.  Constructors only canonicalize structure
(e.g. module-pair ordering) and never reject bad values, so that a structurally
parsed project can always be built and then reported on by validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ValidationIssue:
    severity: Severity
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()

    @property
    def errors(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity is Severity.ERROR)

    @property
    def warnings(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity is Severity.WARNING)

    @property
    def ok(self) -> bool:
        return not self.errors

    def prefixed(self, prefix: str) -> "ValidationReport":
        """Return a copy with every issue path nested under ``prefix``."""
        return ValidationReport(
            tuple(
                ValidationIssue(i.severity, f"{prefix}/{i.path}" if i.path else prefix, i.message)
                for i in self.issues
            )
        )


class ModuleDriver(str, Enum):
    """Strategic reasons for a technical solution to form or join a module.

    The twelve-driver catalog is the standard MFD set; definition order is the
    serialization and profile-vector order.
    """

    CARRYOVER = "carryover"
    TECHNOLOGY_EVOLUTION = "technology_evolution"
    PLANNED_DESIGN_CHANGES = "planned_design_changes"
    DIFFERENT_SPECIFICATION = "different_specification"
    STYLING = "styling"
    COMMON_UNIT = "common_unit"
    PROCESS_ORGANISATION = "process_organisation"
    SEPARATE_TESTING = "separate_testing"
    SUPPLIER_AVAILABILITY = "supplier_availability"
    SERVICE_MAINTENANCE = "service_maintenance"
    UPGRADING = "upgrading"
    RECYCLING = "recycling"


DRIVER_ORDER: tuple[ModuleDriver, ...] = tuple(ModuleDriver)


class CriterionKind(str, Enum):
    DFA = "DFA"
    DFD = "DFD"
    BOTH = "BOTH"


class Scale(str, Enum):
    ORDINAL_1_5 = "ordinal_1_5"
    PUGH = "pugh"


@dataclass(frozen=True)
class CustomerRequirement:
    id: str
    statement: str
    raw_weight: float  # relative importance, must be > 0 to validate


@dataclass(frozen=True)
class ProductProperty:
    id: str
    name: str
    target: Optional[str] = None


@dataclass(frozen=True)
class TechnicalSolution:
    id: str
    name: str
    realizes: tuple[str, ...] = ()  # ProductProperty ids


@dataclass(frozen=True)
class Module:
    id: str
    name: str
    members: tuple[str, ...] = ()  # TechnicalSolution ids


@dataclass(frozen=True)
class ModuleSet:
    """Unordered pair of module ids, stored in lexicographic order."""

    a: str
    b: str

    def __post_init__(self) -> None:
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def key(self) -> str:
        return f"{self.a}-{self.b}"

    def touches(self, module_id: str) -> bool:
        return module_id == self.a or module_id == self.b


@dataclass(frozen=True)
class Criterion:
    id: str
    name: str
    kind: CriterionKind
    scale: Scale = Scale.ORDINAL_1_5
    weight: float = 1.0
    anchors: Optional[Mapping[int, str]] = None  # rubric text for scores 1/3/5


@dataclass(frozen=True)
class Concept:
    id: str
    name: str
    description: str = ""
    is_datum: bool = False

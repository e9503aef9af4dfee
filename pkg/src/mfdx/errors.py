"""Exception types raised by the engine.

Every operation-level failure has its own class so callers (CLI, HTTP
service, UI) can map failures to stable machine-readable codes.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from mfdx.model import ValidationReport


class MfdxError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        """Stable machine token derived from the class name (e.g. ``out_of_range``)."""
        return re.sub(r"(?<!^)(?=[A-Z])", "_", type(self).__name__).lower()


class EmptyInput(MfdxError):
    pass


class NonPositiveWeight(MfdxError):
    pass


class DanglingReference(MfdxError):
    pass


class CoverageMismatch(MfdxError):
    pass


class TooLarge(MfdxError):
    pass


class NoDatum(MfdxError):
    pass


class MultipleDatum(MfdxError):
    pass


class MissingCell(MfdxError):
    pass


class OutOfRange(MfdxError):
    pass


class EmptyProposals(MfdxError):
    pass


class UnknownCriterion(MfdxError):
    pass


class EmptySequence(MfdxError):
    pass


class CyclicPrecedence(MfdxError):
    pass


class MissingDirection(MfdxError):
    pass


class MalformedSyntax(MfdxError):
    pass


class UnsupportedVersion(MfdxError):
    pass


class UnknownMatrix(MfdxError):
    pass


class StaleRevision(MfdxError):
    pass


class ValidationFailed(MfdxError):
    """Raised when a project fails consistency validation; carries the report."""

    def __init__(self, message: str, report: "ValidationReport"):
        super().__init__(message)
        self.report = report

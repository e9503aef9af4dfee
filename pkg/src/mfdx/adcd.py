"""Assembly Directions and Connections Draft: a typed, analyzable graph.

Modules are nodes; connections are edges annotated with insertion direction,
fastener kind, and access.  On top of the graph sit a reorientation-minimal
sequencer and rule-based detectors for assembly and disassembly issues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from mfdx.errors import (
    CyclicPrecedence,
    DanglingReference,
    EmptySequence,
    MissingDirection,
)
from mfdx.model import ModuleSet, Severity, ValidationIssue, ValidationReport


class Direction(str, Enum):
    """Abstract insertion axes; -Z is vertical insertion with gravity assistance."""

    X_POS = "+X"
    X_NEG = "-X"
    Y_POS = "+Y"
    Y_NEG = "-Y"
    Z_POS = "+Z"
    Z_NEG = "-Z"


DIRECTIONS: tuple[Direction, ...] = tuple(Direction)


class FastenerType(str, Enum):
    SNAP_FIT = "snap_fit"
    SCREW = "screw"
    ADHESIVE = "adhesive"
    CLIP = "clip"
    OTHER = "other"


#: (requires_tool, destructive_removal) defaults per fastener type; overridable
#: per connection.  Adhesive removal is destructive, snap-fits are tool-free.
FASTENER_DEFAULTS: dict[FastenerType, tuple[bool, bool]] = {
    FastenerType.SNAP_FIT: (False, False),
    FastenerType.SCREW: (True, False),
    FastenerType.ADHESIVE: (False, True),
    FastenerType.CLIP: (False, False),
    FastenerType.OTHER: (False, False),
}


@dataclass(frozen=True)
class Fastener:
    type: FastenerType
    label: Optional[str] = None  # free text, used with type "other"
    requires_tool: Optional[bool] = None
    destructive_removal: Optional[bool] = None

    def __post_init__(self) -> None:
        tool_default, destructive_default = FASTENER_DEFAULTS[self.type]
        if self.requires_tool is None:
            object.__setattr__(self, "requires_tool", tool_default)
        if self.destructive_removal is None:
            object.__setattr__(self, "destructive_removal", destructive_default)

    @property
    def display(self) -> str:
        return self.label if (self.type is FastenerType.OTHER and self.label) else self.type.value


class Access(str, Enum):
    CLEAR = "clear"
    PARTIALLY_OBSTRUCTED = "partially_obstructed"
    OBSTRUCTED = "obstructed"


@dataclass(frozen=True)
class Connection:
    set: ModuleSet
    direction: Direction
    fastener: Fastener
    access: Access = Access.CLEAR
    annotation: str = ""


@dataclass(frozen=True)
class AdcdGraph:
    nodes: tuple[str, ...] = ()
    edges: tuple[Connection, ...] = ()
    precedence: tuple[tuple[str, str], ...] = ()  # (before, after) module pairs

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(sorted(set(self.nodes))))

    def edges_of(self, module_id: str) -> tuple[Connection, ...]:
        return tuple(e for e in self.edges if e.set.touches(module_id))


class IssueKind(str, Enum):
    TOOL_ACCESS_CONFLICT = "tool_access_conflict"
    SIMULTANEOUS_INSERTION = "simultaneous_insertion"
    DESTRUCTIVE_CONNECTOR = "destructive_connector"
    OBSTRUCTED_DETACHMENT = "obstructed_detachment"
    FASTENER_DIVERSITY = "fastener_diversity"


class IssueSeverity(str, Enum):
    INFO = "info"
    WARN = "warn"
    CRITICAL = "critical"


@dataclass(frozen=True)
class Issue:
    kind: IssueKind
    location: Optional[ModuleSet]  # None means the whole graph
    severity: IssueSeverity
    message: str


@dataclass(frozen=True)
class SequenceResult:
    sequence: tuple[tuple[str, Direction], ...]
    reorientations: int


def _cycle_exists(nodes: Sequence[str], pairs: Iterable[tuple[str, str]]) -> bool:
    succs: dict[str, list[str]] = {n: [] for n in nodes}
    indeg = {n: 0 for n in nodes}
    for before, after in pairs:
        if before in succs and after in indeg:
            succs[before].append(after)
            indeg[after] += 1
    queue = [n for n in nodes if indeg[n] == 0]
    seen = 0
    while queue:
        n = queue.pop()
        seen += 1
        for m in succs[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                queue.append(m)
    return seen != len(nodes)


def validate_adcd(graph: AdcdGraph) -> ValidationReport:
    """Report dangling endpoints and cyclic precedence as errors, isolated
    modules as warnings."""
    issues = []
    nodes = set(graph.nodes)
    for i, edge in enumerate(graph.edges):
        for end in (edge.set.a, edge.set.b):
            if end not in nodes:
                issues.append(
                    ValidationIssue(Severity.ERROR, f"adcd/edges/{i}", f"connection endpoint {end!r} is not a node")
                )
        if edge.set.a == edge.set.b:
            issues.append(ValidationIssue(Severity.ERROR, f"adcd/edges/{i}", "connection joins a module to itself"))
    for before, after in graph.precedence:
        for end in (before, after):
            if end not in nodes:
                issues.append(
                    ValidationIssue(
                        Severity.ERROR, "adcd/precedence", f"precedence endpoint {end!r} is not a node"
                    )
                )
    if not any(i.severity is Severity.ERROR for i in issues) and _cycle_exists(graph.nodes, graph.precedence):
        issues.append(ValidationIssue(Severity.ERROR, "adcd/precedence", "precedence relation contains a cycle"))
    connected = {end for e in graph.edges for end in (e.set.a, e.set.b)}
    for node in graph.nodes:
        if node not in connected:
            issues.append(ValidationIssue(Severity.WARNING, f"adcd/nodes/{node}", "module has no connections"))
    return ValidationReport(tuple(issues))


def reorientation_count(sequence: Sequence[tuple[str, Direction]]) -> int:
    """Number of adjacent steps whose insertion directions differ."""
    if not sequence:
        raise EmptySequence("cannot count reorientations of an empty sequence")
    return sum(1 for prev, cur in zip(sequence, sequence[1:]) if prev[1] != cur[1])


#: Largest module count solved exactly; larger graphs fall back to a greedy order.
EXACT_SEQUENCE_LIMIT = 10


def _direction_candidates(graph: AdcdGraph) -> dict[str, tuple[Direction, ...]]:
    """Per module, the directions of its connections in listed order.

    A module with several differently-directed connections may be inserted
    along any of them; the sequencer picks per step.
    """
    candidates: dict[str, list[Direction]] = {n: [] for n in graph.nodes}
    for edge in graph.edges:
        for end in (edge.set.a, edge.set.b):
            if end in candidates and edge.direction not in candidates[end]:
                candidates[end].append(edge.direction)
    return {n: tuple(ds) for n, ds in candidates.items()}


def optimal_sequence(graph: AdcdGraph) -> SequenceResult:
    """Topological order of modules minimizing reorientations.

    Exact (dynamic program over placed-module subsets) up to
    ``EXACT_SEQUENCE_LIMIT`` modules, greedy beyond; ties break toward the
    smallest module id.
    """
    mods = list(graph.nodes)
    n = len(mods)
    if n == 0:
        return SequenceResult((), 0)
    nodes = set(mods)
    for before, after in graph.precedence:
        if before not in nodes or after not in nodes:
            raise DanglingReference(f"precedence references unknown module {before!r} or {after!r}")
    if _cycle_exists(mods, graph.precedence):
        raise CyclicPrecedence("precedence relation contains a cycle")
    candidates = _direction_candidates(graph)
    for m in mods:
        if not candidates[m]:
            raise MissingDirection(f"module {m!r} has no connection to derive an insertion direction from")

    index = {m: i for i, m in enumerate(mods)}
    preds = [0] * n
    for before, after in graph.precedence:
        preds[index[after]] |= 1 << index[before]
    cand_idx = [tuple(DIRECTIONS.index(d) for d in candidates[m]) for m in mods]
    full = (1 << n) - 1

    if n <= EXACT_SEQUENCE_LIMIT:
        memo: dict[tuple[int, int], int] = {}

        def remaining(mask: int, last: int) -> int:
            if mask == full:
                return 0
            key = (mask, last)
            if key in memo:
                return memo[key]
            best = n + 1
            for i in range(n):
                bit = 1 << i
                if mask & bit or (preds[i] & mask) != preds[i]:
                    continue
                for d in cand_idx[i]:
                    cost = 0 if last in (-1, d) else 1
                    value = cost + remaining(mask | bit, d)
                    if value < best:
                        best = value
            memo[key] = best
            return best

        sequence = []
        mask, last = 0, -1
        while mask != full:
            target = remaining(mask, last)
            placed = False
            for i in range(n):
                bit = 1 << i
                if mask & bit or (preds[i] & mask) != preds[i]:
                    continue
                for d in cand_idx[i]:
                    cost = 0 if last in (-1, d) else 1
                    if cost + remaining(mask | bit, d) == target:
                        sequence.append((mods[i], DIRECTIONS[d]))
                        mask |= bit
                        last = d
                        placed = True
                        break
                if placed:
                    break
        return SequenceResult(tuple(sequence), reorientation_count(sequence))

    # Greedy: keep the current direction as long as some eligible module
    # supports it, otherwise switch to the first candidate of the smallest id.
    sequence = []
    mask, last = 0, -1
    while mask != full:
        eligible = [i for i in range(n) if not (mask & (1 << i)) and (preds[i] & mask) == preds[i]]
        choice = None
        if last != -1:
            for i in eligible:
                if last in cand_idx[i]:
                    choice = (i, last)
                    break
        if choice is None:
            i = eligible[0]
            choice = (i, cand_idx[i][0])
        sequence.append((mods[choice[0]], DIRECTIONS[choice[1]]))
        mask |= 1 << choice[0]
        last = choice[1]
    return SequenceResult(tuple(sequence), reorientation_count(sequence))


def detect_assembly_issues(graph: AdcdGraph) -> list[Issue]:
    """Tool-access conflicts and simultaneous-insertion demands."""
    issues = []
    for edge in graph.edges:
        if edge.fastener.requires_tool and edge.access is not Access.CLEAR:
            issues.append(
                Issue(
                    IssueKind.TOOL_ACCESS_CONFLICT,
                    edge.set,
                    IssueSeverity.WARN,
                    f"{edge.fastener.display} joint needs tool access but the point is {edge.access.value}",
                )
            )
    by_set: dict[ModuleSet, list[Direction]] = {}
    for edge in graph.edges:
        dirs = by_set.setdefault(edge.set, [])
        if edge.direction not in dirs:
            dirs.append(edge.direction)
    for module_set in sorted(by_set, key=lambda s: s.key):
        dirs = by_set[module_set]
        if len(dirs) > 1:
            listed = ", ".join(sorted(d.value for d in dirs))
            issues.append(
                Issue(
                    IssueKind.SIMULTANEOUS_INSERTION,
                    module_set,
                    IssueSeverity.WARN,
                    f"mating requires more than one direction at once ({listed})",
                )
            )
    return issues


#: Distinct fastener kinds above which connector standardisation is flagged.
DEFAULT_DIVERSITY_THRESHOLD = 3


def detect_dfd_issues(
    graph: AdcdGraph,
    reusable_modules: Iterable[str] = (),
    diversity_threshold: int = DEFAULT_DIVERSITY_THRESHOLD,
) -> list[Issue]:
    """Destructive connectors, obstructed detachment points, and fastener
    diversity (a connector-standardisation proxy)."""
    reusable = set(reusable_modules)
    issues = []
    for edge in graph.edges:
        if edge.fastener.destructive_removal:
            touches_reusable = edge.set.a in reusable or edge.set.b in reusable
            issues.append(
                Issue(
                    IssueKind.DESTRUCTIVE_CONNECTOR,
                    edge.set,
                    IssueSeverity.CRITICAL if touches_reusable else IssueSeverity.WARN,
                    f"{edge.fastener.display} joint must be destroyed to detach"
                    + (" a reusable module" if touches_reusable else ""),
                )
            )
        if edge.access is Access.OBSTRUCTED:
            issues.append(
                Issue(
                    IssueKind.OBSTRUCTED_DETACHMENT,
                    edge.set,
                    IssueSeverity.WARN,
                    "detachment point is obstructed",
                )
            )
    if graph.edges:
        kinds = {(e.fastener.type, e.fastener.label if e.fastener.type is FastenerType.OTHER else None) for e in graph.edges}
        count = len(kinds)
        issues.append(
            Issue(
                IssueKind.FASTENER_DIVERSITY,
                None,
                IssueSeverity.WARN if count > diversity_threshold else IssueSeverity.INFO,
                f"{count} distinct fastener kind(s) in use",
            )
        )
    return issues


def to_dot(graph: AdcdGraph) -> str:
    """Render the graph as a dot-compatible description for external tools."""
    lines = ["digraph adcd {", "  rankdir=LR;"]
    for node in graph.nodes:
        lines.append(f'  "{node}";')
    for edge in graph.edges:
        label = f"{edge.direction.value} {edge.fastener.display} ({edge.access.value})"
        lines.append(f'  "{edge.set.a}" -> "{edge.set.b}" [dir=none, label="{label}"];')
    for before, after in sorted(graph.precedence):
        lines.append(f'  "{before}" -> "{after}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Module proposal by driver-coherence clustering.

Partitions technical solutions into candidate modules, trading module-driver
similarity within a block against interaction cost cut across blocks:

    J = sum over within-block pairs [sim(a,b) + w(a,b)]
        - lambda * sum over cross-block pairs w(a,b)

where ``sim(a,b)`` is the dot product of the two driver profiles divided by
81, so one shared strong driver (9 x 9) contributes exactly 1.0.

Two solvers share the objective: an exhaustive enumerator usable as an oracle
at small scale, and a seeded greedy-merge / annealing search whose budget
exhausts desk-scale instances.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from mfdx.errors import CoverageMismatch, EmptyInput, TooLarge
from mfdx.matrices import MimMatrix

#: Largest instance the exhaustive enumerator accepts (Bell-number guard).
BRUTE_FORCE_LIMIT = 10

DEFAULT_LAMBDA = 0.5


@dataclass(frozen=True)
class InteractionMatrix:
    """Symmetric DSM-style interaction strengths keyed by unordered pair."""

    cells: Mapping[tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        canonical: dict[tuple[str, str], float] = {}
        for (a, b), value in self.cells.items():
            if a == b:
                raise ValueError(f"interaction matrix has a self-pair for {a!r}")
            key = (a, b) if a < b else (b, a)
            if key in canonical and canonical[key] != value:
                raise ValueError(f"conflicting strengths for pair {key}")
            canonical[key] = value
        object.__setattr__(self, "cells", dict(sorted(canonical.items())))

    def strength(self, a: str, b: str) -> float:
        key = (a, b) if a < b else (b, a)
        return self.cells.get(key, 0.0)

    def ids(self) -> set[str]:
        return {x for pair in self.cells for x in pair}


@dataclass(frozen=True)
class Partition:
    """Disjoint cover of solution ids; blocks sorted by smallest member."""

    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        canonical = []
        for block in self.blocks:
            members = tuple(sorted(set(block)))
            if not members:
                raise ValueError("partition blocks must be non-empty")
            overlap = seen.intersection(members)
            if overlap:
                raise ValueError(f"partition blocks overlap on {sorted(overlap)}")
            seen.update(members)
            canonical.append(members)
        object.__setattr__(self, "blocks", tuple(sorted(canonical)))

    def solutions(self) -> tuple[str, ...]:
        return tuple(sorted(s for block in self.blocks for s in block))

    def block_of(self) -> dict[str, int]:
        return {s: i for i, block in enumerate(self.blocks) for s in block}


@dataclass(frozen=True)
class ClusteringProposal:
    partition: Partition
    objective: float
    trace: tuple[dict, ...]


def profile_similarity(profile_a: Sequence[int], profile_b: Sequence[int]) -> float:
    """Driver-profile dot product scaled so one shared strong driver equals 1.0."""
    return sum(x * y for x, y in zip(profile_a, profile_b)) / 81.0


def _check_coverage(partition_ids: set[str], mim: MimMatrix, interactions: InteractionMatrix) -> None:
    referenced = set(mim.solutions()) | interactions.ids()
    missing = referenced - partition_ids
    if missing:
        raise CoverageMismatch(f"partition does not cover solutions {sorted(missing)}")


def clustering_objective(
    partition: Partition,
    mim: MimMatrix,
    interactions: InteractionMatrix,
    lam: float = DEFAULT_LAMBDA,
) -> float:
    """Evaluate J for a partition; exactly rounded, order-independent."""
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    ids = partition.solutions()
    _check_coverage(set(ids), mim, interactions)
    block_of = partition.block_of()
    profiles = {s: mim.profile(s) for s in ids}
    terms = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            w = interactions.strength(a, b)
            if block_of[a] == block_of[b]:
                terms.append(profile_similarity(profiles[a], profiles[b]) + w)
            else:
                terms.append(-lam * w)
    return math.fsum(terms)


def _set_partitions(items: tuple[str, ...]):
    """Yield every set partition of ``items`` as a list of lists."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [smaller[i] + [first]] + smaller[i + 1 :]
        yield smaller + [[first]]


def brute_force_partition(
    solutions: Iterable[str],
    mim: MimMatrix,
    interactions: InteractionMatrix,
    lam: float = DEFAULT_LAMBDA,
    max_blocks: Optional[int] = None,
) -> Partition:
    """Exhaustively maximize J; ties resolve to the lexicographically smallest
    canonical form.  Guarded to small instances."""
    ids = tuple(sorted(set(solutions)))
    if len(ids) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{len(ids)} solutions exceed the exhaustive limit of {BRUTE_FORCE_LIMIT}")
    if max_blocks is not None and max_blocks < 1:
        raise ValueError("max_blocks must be at least 1")
    best: Optional[Partition] = None
    best_j = -math.inf
    for raw in _set_partitions(ids):
        if max_blocks is not None and len(raw) > max_blocks:
            continue
        candidate = Partition(tuple(tuple(block) for block in raw))
        j = clustering_objective(candidate, mim, interactions, lam)
        if j > best_j or (j == best_j and best is not None and candidate.blocks < best.blocks):
            best, best_j = candidate, j
    if best is None:
        return Partition(())
    return best


class _SearchState:
    """Mutable working state for the merge/anneal search.

    Works on the shifted objective S = sum over within-block pairs of
    k(a,b) = sim(a,b) + (1 + lambda) * w(a,b), which differs from J by the
    constant lambda * sum(w); deltas are therefore identical.
    """

    def __init__(self, ids: tuple[str, ...], mim: MimMatrix, interactions: InteractionMatrix, lam: float):
        self.ids = ids
        n = len(ids)
        self.k = [[0.0] * n for _ in range(n)]
        profiles = [mim.profile(s) for s in ids]
        for i in range(n):
            for j in range(i + 1, n):
                value = profile_similarity(profiles[i], profiles[j]) + (1.0 + lam) * interactions.strength(
                    ids[i], ids[j]
                )
                self.k[i][j] = value
                self.k[j][i] = value
        self.blocks: list[list[int]] = [[i] for i in range(n)]
        self.score = 0.0

    def _normalize(self) -> None:
        self.blocks = sorted((sorted(b) for b in self.blocks if b), key=lambda b: b[0])

    def merge_delta(self, i: int, j: int) -> float:
        return math.fsum(self.k[a][b] for a in self.blocks[i] for b in self.blocks[j])

    def transfer_delta(self, sol: int, dest: Optional[int]) -> float:
        """Delta for moving ``sol`` into block ``dest`` (None = new singleton)."""
        src = next(idx for idx, b in enumerate(self.blocks) if sol in b)
        leave = math.fsum(self.k[sol][other] for other in self.blocks[src] if other != sol)
        join = 0.0 if dest is None else math.fsum(self.k[sol][other] for other in self.blocks[dest])
        return join - leave

    def apply_merge(self, i: int, j: int) -> None:
        self.score += self.merge_delta(i, j)
        merged = self.blocks[i] + self.blocks[j]
        self.blocks = [b for idx, b in enumerate(self.blocks) if idx not in (i, j)] + [merged]
        self._normalize()

    def apply_transfer(self, sol: int, dest: Optional[int]) -> None:
        self.score += self.transfer_delta(sol, dest)
        dest_block = None if dest is None else self.blocks[dest]
        for b in self.blocks:
            if sol in b:
                b.remove(sol)
                break
        if dest_block is None:
            self.blocks.append([sol])
        else:
            dest_block.append(sol)
        self._normalize()

    def partition(self) -> Partition:
        return Partition(tuple(tuple(self.ids[i] for i in block) for block in self.blocks))


_EPS = 1e-12


def propose_modules(
    solutions: Iterable[str],
    mim: MimMatrix,
    interactions: InteractionMatrix,
    lam: float = DEFAULT_LAMBDA,
    max_blocks: Optional[int] = None,
    seed: int = 0,
) -> ClusteringProposal:
    """Search for a high-J partition: greedy agglomerative merges, then seeded
    simulated annealing on single-element moves with geometric cooling, then a
    deterministic hill climb to local optimality.

    Deterministic for a fixed seed; the budget exhausts desk-scale instances.
    """
    ids = tuple(sorted(set(solutions)))
    if not ids:
        raise EmptyInput("cannot propose modules for zero solutions")
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    if max_blocks is not None and max_blocks < 1:
        raise ValueError("max_blocks must be at least 1")
    _check_coverage(set(ids), mim, interactions)

    n = len(ids)
    state = _SearchState(ids, mim, interactions, lam)
    trace: list[dict] = []
    rng = random.Random(seed)

    def block_ids(block: list[int]) -> list[str]:
        return [ids[i] for i in block]

    def best_merge() -> tuple[float, Optional[tuple[int, int]]]:
        choice = None
        best = -math.inf
        for i in range(len(state.blocks)):
            for j in range(i + 1, len(state.blocks)):
                delta = state.merge_delta(i, j)
                if delta > best + _EPS:
                    best, choice = delta, (i, j)
        return best, choice

    # Forced merges when the block budget is tighter than the solution count.
    while max_blocks is not None and len(state.blocks) > max_blocks:
        delta, choice = best_merge()
        assert choice is not None
        trace.append({"kind": "merge", "blocks": [block_ids(state.blocks[choice[0]]), block_ids(state.blocks[choice[1]])]})
        state.apply_merge(*choice)

    # Greedy agglomerative phase: merge the best pair while J improves.
    while len(state.blocks) > 1:
        delta, choice = best_merge()
        if choice is None or delta <= _EPS:
            break
        trace.append({"kind": "merge", "blocks": [block_ids(state.blocks[choice[0]]), block_ids(state.blocks[choice[1]])]})
        state.apply_merge(*choice)

    def hill_climb() -> None:
        while True:
            best_delta = _EPS
            move: Optional[tuple] = None
            for sol in range(n):
                src = next(idx for idx, b in enumerate(state.blocks) if sol in b)
                for dest in range(len(state.blocks)):
                    if dest == src:
                        continue
                    delta = state.transfer_delta(sol, dest)
                    if delta > best_delta:
                        best_delta, move = delta, ("transfer", sol, dest)
                if len(state.blocks[src]) > 1 and (max_blocks is None or len(state.blocks) < max_blocks):
                    delta = state.transfer_delta(sol, None)
                    if delta > best_delta:
                        best_delta, move = delta, ("transfer", sol, None)
            for i in range(len(state.blocks)):
                for j in range(i + 1, len(state.blocks)):
                    delta = state.merge_delta(i, j)
                    if delta > best_delta:
                        best_delta, move = delta, ("merge", i, j)
            if move is None:
                return
            if move[0] == "transfer":
                _, sol, dest = move
                trace.append(
                    {
                        "kind": "transfer",
                        "solution": ids[sol],
                        "to": block_ids(state.blocks[dest]) if dest is not None else [],
                    }
                )
                state.apply_transfer(sol, dest)
            else:
                _, i, j = move
                trace.append({"kind": "merge", "blocks": [block_ids(state.blocks[i]), block_ids(state.blocks[j])]})
                state.apply_merge(i, j)

    hill_climb()
    best_blocks = [list(b) for b in state.blocks]
    best_score = state.score

    # Annealing restarts escape local optima the greedy phase settles into.
    mean_k = math.fsum(abs(state.k[i][j]) for i in range(n) for j in range(i + 1, n))
    pairs = n * (n - 1) // 2
    t0 = 1.0 + (mean_k / pairs if pairs else 0.0)
    restarts = 3
    iters = 200 + 120 * n * n
    for _ in range(restarts):
        temperature = t0
        for _ in range(iters):
            sol = rng.randrange(n)
            src = next(idx for idx, b in enumerate(state.blocks) if sol in b)
            dests: list[Optional[int]] = [d for d in range(len(state.blocks)) if d != src]
            if len(state.blocks[src]) > 1 and (max_blocks is None or len(state.blocks) < max_blocks):
                dests.append(None)
            if not dests:
                continue
            dest = dests[rng.randrange(len(dests))]
            delta = state.transfer_delta(sol, dest)
            if delta >= 0 or rng.random() < math.exp(delta / temperature):
                dest_members = [] if dest is None else block_ids(state.blocks[dest])
                state.apply_transfer(sol, dest)
                if state.score > best_score + _EPS:
                    best_score = state.score
                    best_blocks = [list(b) for b in state.blocks]
                    trace.append({"kind": "transfer", "solution": ids[sol], "to": dest_members})
            temperature = max(temperature * 0.997, 1e-6)
        # Polish the annealed state, then restart from the best known point.
        hill_climb()
        if state.score > best_score + _EPS:
            best_score = state.score
            best_blocks = [list(b) for b in state.blocks]
        state.blocks = [list(b) for b in best_blocks]
        state.score = best_score
        state._normalize()

    partition = Partition(tuple(tuple(ids[i] for i in block) for block in best_blocks))
    objective = clustering_objective(partition, mim, interactions, lam)
    return ClusteringProposal(partition, objective, tuple(trace))

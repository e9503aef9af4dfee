import math
import random

import pytest

from mfdx.clustering import (
    InteractionMatrix,
    Partition,
    brute_force_partition,
    clustering_objective,
    propose_modules,
)
from mfdx.errors import CoverageMismatch, EmptyInput, TooLarge
from mfdx.matrices import MimMatrix
from mfdx.model import ModuleDriver

D = ModuleDriver
DRIVERS = list(ModuleDriver)


def random_instance(rng, n):
    ids = [f"S{i:02d}" for i in range(n)]
    mim_cells = {}
    for s in ids:
        for d in rng.sample(DRIVERS, rng.randint(0, 3)):
            mim_cells[(d, s)] = rng.choice([1, 3, 9])
    inter = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                inter[(ids[i], ids[j])] = round(rng.uniform(0.1, 3.0), 6)
    return ids, MimMatrix(mim_cells), InteractionMatrix(inter)


def test_partition_canonical_form():
    p = Partition((("B", "C"), ("A",)))
    assert p.blocks == (("A",), ("B", "C"))
    assert p.solutions() == ("A", "B", "C")


def test_partition_rejects_overlap_and_empty():
    with pytest.raises(ValueError):
        Partition((("A", "B"), ("B",)))
    with pytest.raises(ValueError):
        Partition((("A",), ()))


def test_objective_singletons_pay_for_all_interactions():
    inter = InteractionMatrix({("A", "B"): 2.0, ("B", "C"): 1.5})
    p = Partition((("A",), ("B",), ("C",)))
    j = clustering_objective(p, MimMatrix(), inter, lam=2.0)
    assert j == -2.0 * 3.5


def test_objective_shared_strong_driver_is_one():
    mim = MimMatrix({(D.CARRYOVER, "A"): 9, (D.CARRYOVER, "B"): 9})
    j = clustering_objective(Partition((("A", "B"),)), mim, InteractionMatrix(), lam=0.0)
    assert j == 1.0


def test_objective_four_solution_hand_value():
    # within: (A,B) 1.0 + 2.0, (C,D) 0 + 0.5; cross: only (B,C)=1.0 -> J = 3.5 - 0.5 = 3.0
    mim = MimMatrix({(D.CARRYOVER, "A"): 9, (D.CARRYOVER, "B"): 9, (D.RECYCLING, "C"): 3})
    inter = InteractionMatrix({("A", "B"): 2.0, ("B", "C"): 1.0, ("C", "D"): 0.5})
    p = Partition((("A", "B"), ("C", "D")))
    assert clustering_objective(p, mim, inter, lam=0.5) == 3.0


def test_objective_coverage_mismatch():
    inter = InteractionMatrix({("A", "B"): 1.0})
    with pytest.raises(CoverageMismatch):
        clustering_objective(Partition((("A",),)), MimMatrix(), inter, 0.5)


def test_objective_rejects_negative_lambda():
    with pytest.raises(ValueError):
        clustering_objective(Partition((("A",),)), MimMatrix(), InteractionMatrix(), -0.1)


def test_objective_invariant_under_relabeling():
    rng = random.Random(11)
    ids, mim, inter = random_instance(rng, 6)
    mapping = {s: f"Z{9 - i}" for i, s in enumerate(ids)}
    mim2 = MimMatrix({(d, mapping[s]): v for (d, s), v in mim.cells.items()})
    inter2 = InteractionMatrix({(mapping[a], mapping[b]): v for (a, b), v in inter.cells.items()})
    p = Partition((tuple(ids[:3]), tuple(ids[3:])))
    p2 = Partition((tuple(mapping[s] for s in ids[:3]), tuple(mapping[s] for s in ids[3:])))
    assert clustering_objective(p, mim, inter, 0.7) == clustering_objective(p2, mim2, inter2, 0.7)


def test_brute_force_single_solution():
    assert brute_force_partition(["A"], MimMatrix(), InteractionMatrix()).blocks == (("A",),)


def test_brute_force_merges_similar_pair():
    mim = MimMatrix({(D.CARRYOVER, "A"): 9, (D.CARRYOVER, "B"): 9})
    best = brute_force_partition(["A", "B"], mim, InteractionMatrix(), lam=0.0)
    assert best.blocks == (("A", "B"),)


def test_brute_force_guard():
    ids = [f"S{i}" for i in range(11)]
    with pytest.raises(TooLarge):
        brute_force_partition(ids, MimMatrix(), InteractionMatrix())


def test_brute_force_respects_max_blocks():
    rng = random.Random(5)
    ids, mim, inter = random_instance(rng, 5)
    best = brute_force_partition(ids, mim, inter, lam=1.0, max_blocks=2)
    assert len(best.blocks) <= 2


def test_brute_force_seed_fixed_fixture():
    # frozen output of the exhaustive enumerator on a deterministic instance
    rng = random.Random(613)
    ids = [f"S{i}" for i in range(6)]
    mim_cells = {}
    for s in ids:
        for d in rng.sample(DRIVERS, rng.randint(1, 3)):
            mim_cells[(d, s)] = rng.choice([1, 3, 9])
    inter = {}
    for i in range(6):
        for j in range(i + 1, 6):
            if rng.random() < 0.5:
                inter[(ids[i], ids[j])] = round(rng.uniform(0.1, 2.0), 6)
    best = brute_force_partition(ids, MimMatrix(mim_cells), InteractionMatrix(inter), lam=1.5, max_blocks=3)
    assert best.blocks == (("S0", "S1", "S2", "S3", "S4", "S5"),)
    j = clustering_objective(best, MimMatrix(mim_cells), InteractionMatrix(inter), 1.5)
    assert j == 8.115274444444445


def test_propose_requires_solutions():
    with pytest.raises(EmptyInput):
        propose_modules([], MimMatrix(), InteractionMatrix())


def test_propose_all_zero_returns_singletons():
    ids = ["A", "B", "C"]
    proposal = propose_modules(ids, MimMatrix(), InteractionMatrix(), lam=0.5, seed=3)
    assert proposal.partition.blocks == (("A",), ("B",), ("C",))
    assert proposal.objective == 0.0


def test_propose_objective_matches_own_partition():
    rng = random.Random(23)
    ids, mim, inter = random_instance(rng, 7)
    proposal = propose_modules(ids, mim, inter, lam=0.8, seed=9)
    assert proposal.objective == clustering_objective(proposal.partition, mim, inter, 0.8)


def test_propose_deterministic_for_seed():
    rng = random.Random(31)
    ids, mim, inter = random_instance(rng, 7)
    a = propose_modules(ids, mim, inter, lam=0.6, seed=1234)
    b = propose_modules(ids, mim, inter, lam=0.6, seed=1234)
    assert a.partition == b.partition
    assert a.objective == b.objective
    assert a.trace == b.trace


def test_propose_matches_oracle_small():
    rng = random.Random(77)
    for trial in range(25):
        n = rng.randint(2, 7)
        ids, mim, inter = random_instance(rng, n)
        lam = round(rng.uniform(0.0, 2.0), 3)
        max_blocks = rng.choice([None, 2, 3])
        oracle = brute_force_partition(ids, mim, inter, lam, max_blocks)
        expected = clustering_objective(oracle, mim, inter, lam)
        proposal = propose_modules(ids, mim, inter, lam, max_blocks, seed=trial)
        assert proposal.objective == expected
        if max_blocks is not None:
            assert len(proposal.partition.blocks) <= max_blocks


def test_cross_interaction_weight_monotone_in_lambda():
    # raising lambda never increases the interaction weight cut by the optimum
    rng = random.Random(99)
    for trial in range(20):
        n = rng.randint(3, 6)
        ids, mim, inter = random_instance(rng, n)
        max_blocks = rng.choice([2, 3])
        cuts = []
        for lam in (0.2, 1.0, 2.5):
            best = brute_force_partition(ids, mim, inter, lam, max_blocks)
            block_of = best.block_of()
            cut = math.fsum(v for (a, b), v in inter.cells.items() if block_of[a] != block_of[b])
            cuts.append(cut)
        assert cuts[0] >= cuts[1] >= cuts[2]

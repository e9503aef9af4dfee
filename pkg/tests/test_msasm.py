import random

import pytest

from mfdx.errors import EmptyProposals, OutOfRange, UnknownCriterion
from mfdx.model import ModuleSet
from mfdx.msasm import (
    DEFAULT_CRITERIA_IDS,
    Band,
    MsasmRecord,
    Provenance,
    aggregate_msasm,
    band_colour,
    band_for,
    rank_bottlenecks,
    record_score,
)

MS = ModuleSet("M01", "M02")
SIX = DEFAULT_CRITERIA_IDS


def test_record_consensus():
    r = record_score(MS, "accessibility", [3, 3])
    assert (r.score, r.provenance, r.note) == (3, Provenance.CONSENSUS, None)


def test_record_split_keeps_worst():
    r = record_score(MS, "accessibility", [2, 4])
    assert r.score == 4
    assert r.provenance is Provenance.CONSERVATIVE_DEFAULT
    assert "2" in r.note and "4" in r.note


def test_record_singleton():
    r = record_score(MS, "accessibility", [5])
    assert (r.score, r.provenance) == (5, Provenance.CONSENSUS)


def test_record_rejects_bad_proposals():
    with pytest.raises(EmptyProposals):
        record_score(MS, "accessibility", [])
    with pytest.raises(OutOfRange):
        record_score(MS, "accessibility", [0])
    with pytest.raises(OutOfRange):
        record_score(MS, "accessibility", [3, 6])
    with pytest.raises(OutOfRange):
        record_score(MS, "accessibility", [True])


def test_record_is_order_invariant():
    rng = random.Random(1)
    for _ in range(50):
        proposals = [rng.randint(1, 5) for _ in range(rng.randint(1, 6))]
        shuffled = proposals[:]
        rng.shuffle(shuffled)
        a = record_score(MS, "x", proposals)
        b = record_score(MS, "x", shuffled)
        assert (a.score, a.provenance, a.note) == (b.score, b.provenance, b.note)
        assert a.score == max(proposals)


def test_aggregate_partial_scores():
    records = [
        MsasmRecord(MS, "accessibility", 3),
        MsasmRecord(MS, "assembly_direction", 2),
        MsasmRecord(MS, "attachment_interface_connections", 3),
    ]
    [agg] = aggregate_msasm(records, SIX)
    assert agg.total == 8
    assert abs(agg.mean - 8 / 3) < 1e-12
    assert agg.band is Band.REVISE
    assert set(agg.missing_criteria) == {"tool_requirements", "force_intensity", "connector_destruction"}


def test_aggregate_all_five_is_critical():
    records = [MsasmRecord(MS, c, 5) for c in SIX]
    [agg] = aggregate_msasm(records, SIX)
    assert (agg.total, agg.band) == (30, Band.CRITICAL)
    assert agg.missing_criteria == ()


def test_aggregate_total_eleven_is_optimal():
    scores = dict(zip(SIX, (2, 2, 2, 2, 2, 1)))
    records = [MsasmRecord(MS, c, s) for c, s in scores.items()]
    [agg] = aggregate_msasm(records, SIX)
    assert agg.total == 11
    assert abs(agg.mean - 11 / 6) < 1e-12
    assert agg.band is Band.OPTIMAL


def test_aggregate_unknown_criterion():
    with pytest.raises(UnknownCriterion):
        aggregate_msasm([MsasmRecord(MS, "bogus", 3)], SIX)


def test_aggregate_duplicate_record():
    with pytest.raises(ValueError):
        aggregate_msasm([MsasmRecord(MS, "accessibility", 3), MsasmRecord(MS, "accessibility", 4)], SIX)


def test_band_boundaries():
    assert band_for(1.0) is Band.OPTIMAL
    assert band_for(1.99) is Band.OPTIMAL
    assert band_for(2.0) is Band.REVISE
    assert band_for(3.49) is Band.REVISE
    assert band_for(3.5) is Band.CRITICAL
    assert band_for(5.0) is Band.CRITICAL


def test_all_threes_is_always_revise():
    for k in range(1, 7):
        records = [MsasmRecord(MS, c, 3) for c in SIX[:k]]
        [agg] = aggregate_msasm(records, SIX[:k])
        assert agg.band is Band.REVISE


def test_band_monotone_in_any_single_score():
    rng = random.Random(6)
    order = [Band.OPTIMAL, Band.REVISE, Band.CRITICAL]
    for _ in range(50):
        k = rng.randint(1, 6)
        scores = [rng.randint(1, 5) for _ in range(k)]
        records = [MsasmRecord(MS, SIX[i], s) for i, s in enumerate(scores)]
        [agg] = aggregate_msasm(records, SIX[:k])
        i = rng.randrange(k)
        if scores[i] == 5:
            continue
        bumped = scores[:]
        bumped[i] += 1
        records2 = [MsasmRecord(MS, SIX[j], s) for j, s in enumerate(bumped)]
        [agg2] = aggregate_msasm(records2, SIX[:k])
        assert order.index(agg2.band) >= order.index(agg.band)


def test_totals_bounded():
    rng = random.Random(8)
    for _ in range(50):
        scores = [rng.randint(1, 5) for _ in SIX]
        records = [MsasmRecord(MS, c, s) for c, s in zip(SIX, scores)]
        [agg] = aggregate_msasm(records, SIX)
        assert 6 <= agg.total <= 30


def test_rank_bottlenecks_band_order():
    sets = [ModuleSet("M01", "M02"), ModuleSet("M03", "M04"), ModuleSet("M05", "M06")]
    records = []
    records += [MsasmRecord(sets[0], c, 5) for c in SIX]  # mean 5.0 critical
    records += [MsasmRecord(sets[1], c, s) for c, s in zip(SIX[:3], (3, 2, 3))]  # mean 2.67 revise
    records += [MsasmRecord(sets[2], c, s) for c, s in zip(SIX, (2, 2, 2, 2, 2, 1))]  # mean 1.83 optimal
    ranked = rank_bottlenecks(aggregate_msasm(records, SIX))
    assert [a.band for a in ranked] == [Band.CRITICAL, Band.REVISE, Band.OPTIMAL]


def test_rank_bottlenecks_tie_by_set_id():
    a = ModuleSet("M01", "M02")
    b = ModuleSet("M00", "M03")
    records = [MsasmRecord(a, SIX[0], 3), MsasmRecord(b, SIX[0], 3)]
    ranked = rank_bottlenecks(aggregate_msasm(records, SIX))
    assert [r.set.key for r in ranked] == ["M00-M03", "M01-M02"]


def test_rank_bottlenecks_single():
    [agg] = aggregate_msasm([MsasmRecord(MS, SIX[0], 4)], SIX)
    assert rank_bottlenecks([agg]) == [agg]


def test_band_colours():
    assert band_colour(Band.OPTIMAL) == "green"
    assert band_colour(Band.REVISE) == "yellow"
    assert band_colour(Band.CRITICAL) == "red"

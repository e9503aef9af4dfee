"""Scoring module-pair interfaces and finding the bottlenecks.

Each module set is scored 1-5 per criterion (1 = optimal, 5 = poor).  Split
opinions resolve conservatively to the worst proposal.  Means map to colour
bands, and the ranking puts the worst interface first.
"""

from mfdx import ModuleSet, aggregate_msasm, band_colour, rank_bottlenecks, record_score
from mfdx.analysis import analyze
from mfdx.fixtures import load_leaf_blower
from mfdx.msasm import DEFAULT_CRITERIA
from mfdx.project_io import export_csv

print("scoring one criterion with a split opinion:")
record = record_score(ModuleSet("M01", "M04"), "accessibility", [2, 4])
print(f"  proposals [2, 4] -> score {record.score} ({record.provenance.value}: {record.note})")
record = record_score(ModuleSet("M01", "M04"), "accessibility", [3, 3])
print(f"  proposals [3, 3] -> score {record.score} ({record.provenance.value})")

print("\nrubric anchors for the accessibility criterion:")
accessibility = next(c for c in DEFAULT_CRITERIA if c.id == "accessibility")
for score, text in sorted(accessibility.anchors.items()):
    print(f"  {score}: {text}")

project = load_leaf_blower()
analysis = analyze(project)

print(f"\nmodule-set grid for {project.name!r}:")
for aggregate in analysis.msasm_aggregates:
    missing = f" (missing {len(aggregate.missing_criteria)})" if aggregate.missing_criteria else ""
    print(
        f"  {aggregate.set.key}: total {aggregate.total:>2}, mean {aggregate.mean:.2f} "
        f"-> {aggregate.band.value} / {band_colour(aggregate.band)}{missing}"
    )

print("\nbottlenecks, worst interface first:")
for i, aggregate in enumerate(analysis.bottlenecks):
    print(f"  {i + 1}. {aggregate.set.key} ({aggregate.band.value})")

if analysis.unscored_sets:
    print(f"\nstill unscored: {', '.join(ms.key for ms in analysis.unscored_sets)}")

print("\nCSV export of the grid (first lines):")
for line in export_csv("msasm", project).decode("utf-8").splitlines()[:3]:
    print(f"  {line}")

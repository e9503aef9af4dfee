"""Comparing modular concepts on production-oriented criteria.

Shows the built-in DFA/DFD criteria catalog, then evaluates the leaf blower
concepts two ways: a Pugh comparison against the datum and weighted numeric
scoring (1 = best).
"""

from mfdx import criteria_catalog
from mfdx.analysis import evaluate_concepts
from mfdx.fixtures import load_leaf_blower

print("built-in criteria catalog:")
for kind in ("DFA", "DFD", "BOTH"):
    ids = [c.id for c in criteria_catalog(kind)]
    print(f"  {kind:<5} ({len(ids):>2}): {', '.join(ids)}")

project = load_leaf_blower()
print(f"\nconcepts in {project.name!r}:")
for concept in project.concepts:
    marker = " (datum)" if concept.is_datum else ""
    print(f"  {concept.id}{marker}: {concept.name} - {concept.description}")

print("\nPugh comparison (net better/same/worse vs the datum):")
for i, result in enumerate(evaluate_concepts(project, "pugh")):
    print(f"  {i + 1}. {result.concept}  net {result.net:+g}")

print("\nnumeric scoring (weighted ordinal totals, lower is better):")
for i, result in enumerate(evaluate_concepts(project, "numeric")):
    print(f"  {i + 1}. {result.concept}  total {result.total:g}")

print("\nBoth modes agree on the leader here; Pugh stays the default because")
print("teams find relative judgments quicker to reach consensus on.")

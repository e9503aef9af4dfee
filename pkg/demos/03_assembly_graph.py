"""Reading the assembly directions and connections draft.

Validates the leaf blower connection graph, runs the assembly and
disassembly issue detectors, searches for an insertion order with minimal
reorientation, and emits the graph in dot format for external rendering.
"""

from mfdx import detect_assembly_issues, detect_dfd_issues, optimal_sequence, to_dot, validate_adcd
from mfdx.fixtures import load_leaf_blower

project = load_leaf_blower()
graph = project.adcd
print(f"graph: {len(graph.nodes)} modules, {len(graph.edges)} connections, "
      f"{len(graph.precedence)} precedence constraints")

report = validate_adcd(graph)
print(f"validation: {'ok' if report.ok else 'errors'} "
      f"({len(report.warnings)} warning(s))")

print("\nassembly issues:")
for issue in detect_assembly_issues(graph):
    print(f"  [{issue.severity.value}] {issue.kind.value} at {issue.location.key}: {issue.message}")

print("\ndisassembly issues (drive module is marked reusable):")
for issue in detect_dfd_issues(graph, project.config.reusable_modules, project.config.fastener_diversity_threshold):
    where = issue.location.key if issue.location else "graph"
    print(f"  [{issue.severity.value}] {issue.kind.value} at {where}: {issue.message}")

result = optimal_sequence(graph)
steps = " -> ".join(f"{m} ({d.value})" for m, d in result.sequence)
print(f"\nbest insertion order: {steps}")
print(f"reorientations: {result.reorientations}")
print("(-Z is vertical insertion with gravity assistance; every switch of axis")
print(" costs one reorientation, so the sequencer groups directions.)")

print("\ndot description for graphviz or similar:")
print(to_dot(graph))

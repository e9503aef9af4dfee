"""From customer requirements to module candidates.

Follows the matrix pipeline on the bundled leaf blower project: normalize
requirement weights (CVR), push them onto product properties (QFD) and then
onto technical solutions (DPM), score module drivers (MIM), and finally let
the clustering search propose a module partition.
"""

from mfdx import brute_force_partition, clustering_objective, compute_cvr, compute_dpm, compute_mim, compute_qfd, propose_modules
from mfdx.fixtures import load_leaf_blower

project = load_leaf_blower()
print(f"project: {project.name}")
print(f"{len(project.requirements)} requirements -> {len(project.properties)} properties "
      f"-> {len(project.solutions)} solutions\n")

cvr = compute_cvr(project.requirements)
print("customer value rating (weights sum to 1):")
for rid, weight in cvr.entries.items():
    statement = next(r.statement for r in project.requirements if r.id == rid)
    print(f"  {rid}  {weight:.3f}  {statement}")

prop_importance = compute_qfd(cvr, project.matrices.qfd, sorted(project.property_ids()))
print("\nproperty importance (requirement weight x relation strength):")
for pid, value in sorted(prop_importance.entries.items(), key=lambda kv: -kv[1]):
    print(f"  {pid}  {value:.3f}")

solution_importance = compute_dpm(prop_importance, project.matrices.dpm, sorted(project.solution_ids()))
print("\ntop technical solutions by propagated importance:")
for sid, value in sorted(solution_importance.entries.items(), key=lambda kv: -kv[1])[:5]:
    print(f"  {sid}  {value:.2f}")

mim = compute_mim(project.matrices.mim, sorted(project.solution_ids()), project.config.mim_candidate_threshold)
candidates = [s for s, flag in mim.candidate_flags.items() if flag]
print(f"\nmodule candidates (driver total >= {project.config.mim_candidate_threshold}): {', '.join(candidates)}")

print("\nclustering: greedy merges + annealing, then the exhaustive check")
proposal = propose_modules(
    sorted(project.solution_ids()),
    project.matrices.mim,
    project.matrices.interactions,
    lam=project.config.clustering_lambda,
    seed=42,
)
for i, block in enumerate(proposal.partition.blocks):
    print(f"  block {i + 1}: {', '.join(block)}")
print(f"  objective: {proposal.objective:.4f} after {len(proposal.trace)} accepted moves")

oracle = brute_force_partition(
    sorted(project.solution_ids()), project.matrices.mim, project.matrices.interactions,
    lam=project.config.clustering_lambda,
)
oracle_objective = clustering_objective(
    oracle, project.matrices.mim, project.matrices.interactions, project.config.clustering_lambda
)
print(f"  exhaustive optimum: {oracle_objective:.4f} -> search {'matches' if oracle_objective == proposal.objective else 'MISSES'} it")

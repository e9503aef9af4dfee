"""Command-line entry point.

Exit codes: 0 success, 1 validation/engine failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from mfdx import adcd as adcd_mod
from mfdx import project_io
from mfdx.analysis import analyze, evaluate_concepts
from mfdx.clustering import propose_modules
from mfdx.errors import MfdxError, ValidationFailed
from mfdx.model import Severity
from mfdx.msasm import band_colour
from mfdx.project import Project, validate_project

DEFAULT_PORT = 8323


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfdx", description="Modular architecture workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a project file for consistency")
    p.add_argument("file")

    p = sub.add_parser("report", help="render the full project report")
    p.add_argument("file")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--matrix", default="msasm", help="matrix to export when --format csv")

    p = sub.add_parser("cluster", help="propose a solution-to-module partition")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="cross-block interaction penalty")
    p.add_argument("--max-blocks", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("msasm", help="module-set scores, bands, and bottlenecks")
    p.add_argument("file")

    p = sub.add_parser("adcd", help="connection-graph issues and insertion order")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit the graph in dot format instead")

    p = sub.add_parser("concepts", help="rank concepts")
    p.add_argument("file")
    p.add_argument("--mode", choices=("pugh", "numeric"), default="pugh")

    p = sub.add_parser("serve", help="serve the project over HTTP for the workshop UI")
    p.add_argument("file")
    p.add_argument("--port", type=int, default=None)
    return parser


def _load(path: str) -> Project:
    return project_io.load_project(Path(path).read_bytes())


def _print_report_issues(report) -> None:
    for issue in report.issues:
        print(f"{issue.severity.value}: {issue.path}: {issue.message}")


def cmd_validate(args) -> int:
    try:
        project = _load(args.file)
    except ValidationFailed as exc:
        _print_report_issues(exc.report)
        print(f"invalid: {exc}")
        return 1
    report = validate_project(project)
    _print_report_issues(report)
    print(f"ok: {args.file} ({len(report.warnings)} warning(s))")
    return 0


def cmd_report(args) -> int:
    project = _load(args.file)
    if args.format == "md":
        print(project_io.render_report(project))
    else:
        sys.stdout.write(project_io.export_csv(args.matrix, project).decode("utf-8"))
    return 0


def cmd_cluster(args) -> int:
    project = _load(args.file)
    lam = project.config.clustering_lambda if args.lam is None else args.lam
    max_blocks = project.config.clustering_max_blocks if args.max_blocks is None else args.max_blocks
    proposal = propose_modules(
        sorted(project.solution_ids()),
        project.matrices.mim,
        project.matrices.interactions,
        lam=lam,
        max_blocks=max_blocks,
        seed=args.seed,
    )
    for i, block in enumerate(proposal.partition.blocks):
        print(f"block {i + 1}: {', '.join(block)}")
    print(f"objective: {proposal.objective:.6f}")
    print(f"moves: {len(proposal.trace)}")
    return 0


def cmd_msasm(args) -> int:
    project = _load(args.file)
    analysis = analyze(project)
    if not analysis.msasm_aggregates:
        print("no module sets scored")
        return 0
    criteria = list(analysis.msasm_criteria)
    scores_by_set = {}
    for record in project.msasm:
        scores_by_set.setdefault(record.set, {})[record.criterion] = record.score
    header = ["set"] + criteria + ["total", "mean", "band", "colour"]
    print("\t".join(header))
    for aggregate in analysis.msasm_aggregates:
        scores = scores_by_set.get(aggregate.set, {})
        row = (
            [aggregate.set.key]
            + [str(scores.get(c, "-")) for c in criteria]
            + [str(aggregate.total), f"{aggregate.mean:.2f}", aggregate.band.value, band_colour(aggregate.band)]
        )
        print("\t".join(row))
    print()
    print("bottlenecks (worst first):")
    for i, aggregate in enumerate(analysis.bottlenecks):
        print(f"{i + 1}. {aggregate.set.key} [{aggregate.band.value}] mean {aggregate.mean:.2f} total {aggregate.total}")
    if analysis.unscored_sets:
        print("unscored: " + ", ".join(ms.key for ms in analysis.unscored_sets))
    return 0


def cmd_adcd(args) -> int:
    project = _load(args.file)
    if args.dot:
        sys.stdout.write(adcd_mod.to_dot(project.adcd))
        return 0
    analysis = analyze(project)
    _print_report_issues(analysis.adcd_report)
    for issue in list(analysis.assembly_issues) + list(analysis.dfd_issues):
        where = issue.location.key if issue.location else "graph"
        print(f"{issue.severity.value}: {issue.kind.value} at {where}: {issue.message}")
    if analysis.sequence is not None and analysis.sequence.sequence:
        steps = " -> ".join(f"{m} ({d.value})" for m, d in analysis.sequence.sequence)
        print(f"insertion order: {steps}")
        print(f"reorientations: {analysis.sequence.reorientations}")
    return 0


def cmd_concepts(args) -> int:
    project = _load(args.file)
    if not project.concepts:
        print("none evaluated")
        return 0
    cells = project.matrices.pugh if args.mode == "pugh" else project.matrices.numeric
    if not cells:
        print(f"no {args.mode} cells recorded", file=sys.stderr)
        return 1
    ranking = evaluate_concepts(project, args.mode)
    for i, result in enumerate(ranking):
        value = result.net if args.mode == "pugh" else result.total
        label = "net" if args.mode == "pugh" else "total"
        print(f"{i + 1}. {result.concept} ({label} {value:g})")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from mfdx.service import ProjectStore, create_app

    port = args.port
    if port is None:
        port = int(os.environ.get("MFDX_PORT", DEFAULT_PORT))
    store = ProjectStore(Path(args.file))
    app = create_app(store)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    return 0


_COMMANDS = {
    "validate": cmd_validate,
    "report": cmd_report,
    "cluster": cmd_cluster,
    "msasm": cmd_msasm,
    "adcd": cmd_adcd,
    "concepts": cmd_concepts,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help (0) and usage errors (2)
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ValidationFailed as exc:
        for issue in exc.report.issues:
            if issue.severity is Severity.ERROR:
                print(f"error: {issue.path}: {issue.message}", file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MfdxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

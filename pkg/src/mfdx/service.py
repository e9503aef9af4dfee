"""Embedded HTTP service exposing the engine to the workshop UI.

JSON over HTTP on loopback; one project per service.  Mutations go through a
single writer with an optimistic revision token: a stale PUT/PATCH gets 409
and the client refetches.  Every successful mutation is persisted atomically
before the response is sent.
"""

from __future__ import annotations

import dataclasses
import threading
from pathlib import Path
from typing import Any, Callable

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from mfdx import adcd as adcd_mod
from mfdx.analysis import analyze, evaluate_concepts
from mfdx.clustering import Partition, clustering_objective, propose_modules
from mfdx.errors import (
    CoverageMismatch,
    MalformedSyntax,
    MfdxError,
    StaleRevision,
    UnknownMatrix,
    UnsupportedVersion,
    ValidationFailed,
)
from mfdx.model import ModuleSet
from mfdx.msasm import DEFAULT_CRITERIA, MsasmRecord, band_colour, record_score
from mfdx.project import Project, validate_project
from mfdx.project_io import load_project, parse_document, to_document, write_project_file

_BUILTIN_CRITERIA = {c.id: c for c in DEFAULT_CRITERIA}


class ProjectStore:
    """Single-writer project state bound to one file on disk."""

    def __init__(self, path: Path):
        self._path = Path(path)
        self._lock = threading.Lock()
        self._project = load_project(self._path.read_bytes())
        self._revision = 1

    @property
    def path(self) -> Path:
        return self._path

    def snapshot(self) -> tuple[Project, int]:
        with self._lock:
            return self._project, self._revision

    def mutate(self, expected_revision: int, fn: Callable[[Project], Project]) -> tuple[Project, int]:
        with self._lock:
            if expected_revision != self._revision:
                raise StaleRevision(
                    f"revision {expected_revision} is stale (current is {self._revision}); refetch and retry"
                )
            candidate = fn(self._project)
            report = validate_project(candidate)
            if not report.ok:
                raise ValidationFailed(f"mutation leaves {len(report.errors)} validation error(s)", report)
            write_project_file(candidate, self._path)
            self._project = candidate
            self._revision += 1
            return self._project, self._revision


def _status_for(exc: MfdxError) -> int:
    if isinstance(exc, StaleRevision):
        return 409
    if isinstance(exc, UnknownMatrix):
        return 404
    if isinstance(exc, (MalformedSyntax, UnsupportedVersion)):
        return 400
    return 422


def _error_payload(exc: MfdxError) -> dict:
    details: Any = None
    if isinstance(exc, ValidationFailed):
        details = [
            {"severity": i.severity.value, "path": i.path, "message": i.message} for i in exc.report.issues
        ]
    return {"code": exc.code, "message": str(exc), "details": details}


async def _body(request: Request) -> dict:
    try:
        data = await request.json()
    except Exception as exc:
        raise MalformedSyntax(f"request body is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedSyntax("request body must be a JSON object")
    return data


def _require(body: dict, key: str):
    if key not in body:
        raise MalformedSyntax(f"request body is missing {key!r}")
    return body[key]


def _require_revision(body: dict) -> int:
    revision = _require(body, "revision")
    if isinstance(revision, bool) or not isinstance(revision, int):
        raise MalformedSyntax("revision must be an integer")
    return revision


def _record_dict(record: MsasmRecord) -> dict:
    return {
        "set": record.set.key,
        "a": record.set.a,
        "b": record.set.b,
        "criterion": record.criterion,
        "score": record.score,
        "provenance": record.provenance.value,
        "note": record.note,
    }


def _issue_dict(issue: adcd_mod.Issue) -> dict:
    return {
        "kind": issue.kind.value,
        "location": issue.location.key if issue.location else None,
        "severity": issue.severity.value,
        "message": issue.message,
    }


def _criterion_dict(project: Project, cid: str) -> dict:
    criterion = project.criterion_by_id(cid) or _BUILTIN_CRITERIA.get(cid)
    if criterion is None:
        return {"id": cid, "name": cid, "anchors": None}
    anchors = None if criterion.anchors is None else {str(k): v for k, v in sorted(criterion.anchors.items())}
    return {"id": criterion.id, "name": criterion.name, "anchors": anchors}


def _msasm_payload(project: Project) -> dict:
    analysis = analyze(project)
    cells_by_set: dict[ModuleSet, dict[str, MsasmRecord]] = {}
    for record in project.msasm:
        cells_by_set.setdefault(record.set, {})[record.criterion] = record

    def aggregate_dict(aggregate) -> dict:
        cells = {
            crit: {"score": rec.score, "provenance": rec.provenance.value, "note": rec.note}
            for crit, rec in sorted(cells_by_set.get(aggregate.set, {}).items())
        }
        return {
            "set": aggregate.set.key,
            "a": aggregate.set.a,
            "b": aggregate.set.b,
            "total": aggregate.total,
            "mean": aggregate.mean,
            "band": aggregate.band.value,
            "colour": band_colour(aggregate.band),
            "missing_criteria": list(aggregate.missing_criteria),
            "cells": cells,
        }

    return {
        "criteria": [_criterion_dict(project, cid) for cid in analysis.msasm_criteria],
        "aggregates": [aggregate_dict(a) for a in analysis.msasm_aggregates],
        "bottlenecks": [aggregate_dict(a) for a in analysis.bottlenecks],
        "unscored_sets": [{"set": ms.key, "a": ms.a, "b": ms.b} for ms in analysis.unscored_sets],
    }


def create_app(store: ProjectStore) -> FastAPI:
    app = FastAPI(title="mfdx", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(MfdxError)
    async def on_engine_error(request: Request, exc: MfdxError):
        return JSONResponse(status_code=_status_for(exc), content=_error_payload(exc))

    @app.exception_handler(ValueError)
    async def on_value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"code": "bad_request", "message": str(exc), "details": None})

    @app.get("/api/project")
    async def get_project():
        project, revision = store.snapshot()
        return {"revision": revision, "project": to_document(project)}

    @app.put("/api/project")
    async def put_project(request: Request):
        body = await _body(request)
        revision = _require_revision(body)
        replacement = parse_document(_require(body, "project"))
        _, new_revision = store.mutate(revision, lambda _old: replacement)
        return {"revision": new_revision}

    @app.patch("/api/msasm/scores")
    async def patch_scores(request: Request):
        body = await _body(request)
        revision = _require_revision(body)
        raw_scores = _require(body, "scores")
        if not isinstance(raw_scores, list) or not raw_scores:
            raise MalformedSyntax("scores must be a non-empty list")
        new_records = []
        for i, entry in enumerate(raw_scores):
            if not isinstance(entry, dict):
                raise MalformedSyntax(f"scores[{i}] must be an object")
            for key in ("a", "b", "criterion", "proposals"):
                if key not in entry:
                    raise MalformedSyntax(f"scores[{i}] is missing {key!r}")
            module_set = ModuleSet(str(entry["a"]), str(entry["b"]))
            proposals = entry["proposals"]
            if not isinstance(proposals, list):
                raise MalformedSyntax(f"scores[{i}]/proposals must be a list")
            new_records.append(record_score(module_set, str(entry["criterion"]), proposals))

        def apply(project: Project) -> Project:
            by_key = {(r.set, r.criterion): r for r in project.msasm}
            for record in new_records:
                by_key[(record.set, record.criterion)] = record
            merged = tuple(sorted(by_key.values(), key=lambda r: (r.set.key, r.criterion)))
            return dataclasses.replace(project, msasm=merged)

        project, new_revision = store.mutate(revision, apply)
        payload = _msasm_payload(project)
        return {
            "revision": new_revision,
            "records": [_record_dict(r) for r in new_records],
            "aggregates": payload["aggregates"],
            "bottlenecks": payload["bottlenecks"],
        }

    @app.post("/api/cluster/propose")
    async def cluster_propose(request: Request):
        body = await _body(request)
        project, revision = store.snapshot()
        lam = body.get("lambda", project.config.clustering_lambda)
        if isinstance(lam, bool) or not isinstance(lam, (int, float)):
            raise MalformedSyntax("lambda must be a number")
        if "partition" in body and body["partition"] is not None:
            raw = body["partition"]
            if not isinstance(raw, list) or not all(isinstance(b, list) for b in raw):
                raise MalformedSyntax("partition must be a list of lists of solution ids")
            partition = Partition(tuple(tuple(str(s) for s in block) for block in raw))
            covered = set(partition.solutions())
            expected = project.solution_ids()
            if covered != expected:
                raise CoverageMismatch(
                    f"partition covers {sorted(covered)} but the project has {sorted(expected)}"
                )
            objective = clustering_objective(
                partition, project.matrices.mim, project.matrices.interactions, lam
            )
            return {
                "revision": revision,
                "partition": [list(b) for b in partition.blocks],
                "objective": objective,
            }
        max_blocks = body.get("max_blocks", project.config.clustering_max_blocks)
        if max_blocks is not None and (isinstance(max_blocks, bool) or not isinstance(max_blocks, int)):
            raise MalformedSyntax("max_blocks must be an integer or null")
        seed = body.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise MalformedSyntax("seed must be an integer")
        proposal = propose_modules(
            sorted(project.solution_ids()),
            project.matrices.mim,
            project.matrices.interactions,
            lam=lam,
            max_blocks=max_blocks,
            seed=seed,
        )
        return {
            "revision": revision,
            "partition": [list(b) for b in proposal.partition.blocks],
            "objective": proposal.objective,
            "trace": list(proposal.trace),
        }

    @app.post("/api/concepts/evaluate")
    async def concepts_evaluate(request: Request):
        body = await _body(request)
        project, revision = store.snapshot()
        mode = body.get("mode", "pugh")
        if mode not in ("pugh", "numeric"):
            raise MalformedSyntax("mode must be 'pugh' or 'numeric'")
        cells = None
        if body.get("cells") is not None:
            raw_cells = body["cells"]
            if not isinstance(raw_cells, list):
                raise MalformedSyntax("cells must be a list")
            cells = {}
            for i, cell in enumerate(raw_cells):
                if not isinstance(cell, dict) or not {"concept", "criterion", "value"} <= set(cell):
                    raise MalformedSyntax(f"cells[{i}] must have concept, criterion, and value")
                cells[(str(cell["concept"]), str(cell["criterion"]))] = cell["value"]
        ranking = evaluate_concepts(project, mode, cells)
        if mode == "pugh":
            entries = [{"concept": r.concept, "net": r.net} for r in ranking]
        else:
            entries = [{"concept": r.concept, "total": r.total} for r in ranking]
        return {"revision": revision, "mode": mode, "ranking": entries}

    @app.get("/api/adcd/issues")
    async def adcd_issues():
        project, revision = store.snapshot()
        analysis = analyze(project)
        return {
            "revision": revision,
            "validation": [
                {"severity": i.severity.value, "path": i.path, "message": i.message}
                for i in analysis.adcd_report.issues
            ],
            "issues": [_issue_dict(i) for i in list(analysis.assembly_issues) + list(analysis.dfd_issues)],
            "sequence": None
            if analysis.sequence is None
            else {
                "steps": [{"module": m, "direction": d.value} for m, d in analysis.sequence.sequence],
                "reorientations": analysis.sequence.reorientations,
            },
        }

    @app.get("/api/msasm/report")
    async def msasm_report():
        project, revision = store.snapshot()
        payload = _msasm_payload(project)
        payload["revision"] = revision
        return payload

    return app

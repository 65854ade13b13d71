"""Insight HTTP service consumed by the dashboard: runs, metrics,
trajectories, comparisons, and error classifications."""

from __future__ import annotations

import os

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .compare import compare_runs
from .metrics import EmptyRunError, compute_metrics
from .records import DEFAULT_ERROR_TAXONOMY, ErrorClassification
from .stores import (
    ClassificationStore,
    RunStore,
    TrajectoryStore,
    UnknownTaskError,
    UnknownTrajectoryError,
)


class ClassificationIn(BaseModel):
    run_id: str = Field(min_length=1)
    task_id: str = Field(min_length=1)
    label: str = Field(min_length=1)
    note: str = ""
    author: str = ""


def create_app(runs_root: str, ui_dir: str | None = None, taxonomy: tuple[str, ...] | None = None) -> FastAPI:
    run_store = RunStore(runs_root)
    trajectory_store = TrajectoryStore(runs_root)
    classification_store = ClassificationStore(runs_root, run_store)
    labels = tuple(taxonomy or DEFAULT_ERROR_TAXONOMY)

    app = FastAPI(title="agent insight service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _load_run(run_id: str):
        if not run_store.exists(run_id):
            raise HTTPException(status_code=404, detail=f"no run {run_id!r}")
        return run_store.load(run_id)

    @app.get("/runs")
    def list_runs(limit: int = Query(50, ge=1, le=1000), offset: int = Query(0, ge=0)):
        run_ids = run_store.list_runs()
        page = run_ids[offset : offset + limit]
        runs = []
        for run_id in page:
            run = run_store.load(run_id)
            successes = sum(1 for r in run.results.values() if r.status == "success")
            total = len(run.results)
            runs.append(
                {
                    "run_id": run.run_id,
                    "agent_version": run.agent_version,
                    "sample": run.sample.__dict__,
                    "started_at": run.started_at,
                    "finished_at": run.finished_at,
                    "total_tasks": total,
                    "successes": successes,
                    "task_completion_rate": round(100.0 * successes / total, 4) if total else 0.0,
                }
            )
        return {"runs": runs, "total": len(run_ids), "limit": limit, "offset": offset}

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        return _load_run(run_id).to_dict()

    @app.get("/runs/{run_id}/metrics")
    def get_metrics(run_id: str):
        run = _load_run(run_id)
        try:
            return compute_metrics(run).to_dict()
        except EmptyRunError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/runs/{run_id}/tasks/{task_id}/trajectory")
    def get_trajectory(
        run_id: str,
        task_id: str,
        limit: int = Query(500, ge=1, le=5000),
        offset: int = Query(0, ge=0),
    ):
        _load_run(run_id)
        try:
            events = trajectory_store.load_trajectory(run_id, task_id)
        except UnknownTrajectoryError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        page = events[offset : offset + limit]
        return {
            "run_id": run_id,
            "task_id": task_id,
            "total": len(events),
            "limit": limit,
            "offset": offset,
            "events": [e.to_dict() for e in page],
        }

    @app.get("/compare")
    def compare(base: str, new: str):
        report = compare_runs(_load_run(base), _load_run(new))
        return report.to_dict()

    @app.post("/classifications", status_code=201)
    def post_classification(body: ClassificationIn):
        try:
            stored = classification_store.record_classification(
                ErrorClassification(
                    run_id=body.run_id,
                    task_id=body.task_id,
                    label=body.label,
                    note=body.note,
                    author=body.author,
                )
            )
        except UnknownTaskError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return stored.to_dict()

    @app.get("/runs/{run_id}/classifications")
    def list_classifications(
        run_id: str,
        limit: int = Query(200, ge=1, le=2000),
        offset: int = Query(0, ge=0),
    ):
        _load_run(run_id)
        items = classification_store.list_classifications(run_id)
        page = items[offset : offset + limit]
        return {
            "run_id": run_id,
            "total": len(items),
            "limit": limit,
            "offset": offset,
            "classifications": [c.to_dict() for c in page],
        }

    @app.get("/taxonomy")
    def get_taxonomy():
        return {"labels": list(labels)}

    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve_insight(runs_root: str, port: int = 8321, ui_dir: str | None = None):
    """Run the service under uvicorn (blocking)."""
    import uvicorn

    app = create_app(runs_root, ui_dir=ui_dir)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")

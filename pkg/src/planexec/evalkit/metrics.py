"""Run metrics: task completion, scenario completion over templates, and
average interactions, sliced per level and split when present."""

from __future__ import annotations

from .records import LevelSlice, MetricsSummary, RunRecord, TaskResult


class EmptyRunError(Exception):
    """Metrics over a run with zero results."""


def _slice_metrics(results: list[TaskResult]) -> LevelSlice:
    total = len(results)
    successes = sum(1 for r in results if r.status == "success")
    templates: dict[str, bool] = {}
    for r in results:
        templates[r.template_id] = templates.get(r.template_id, True) and r.status == "success"
    full = sum(1 for ok in templates.values() if ok)
    return LevelSlice(
        tgc=round(100.0 * successes / total, 4),
        sgc=round(100.0 * full / len(templates), 4),
        avg_interactions=round(sum(r.steps for r in results) / total, 4),
    )


def compute_metrics(run: RunRecord) -> MetricsSummary:
    results = list(run.results.values())
    if not results:
        raise EmptyRunError(f"run {run.run_id!r} has no results")
    overall = _slice_metrics(results)
    per_level: dict[str, dict[str, LevelSlice]] = {}
    leveled = [r for r in results if r.level is not None]
    if leveled:
        buckets: dict[tuple[str, str], list[TaskResult]] = {}
        for r in leveled:
            split = r.split or "normal"
            buckets.setdefault((str(r.level), split), []).append(r)
            buckets.setdefault(("all", split), []).append(r)
        for (level, split), rs in sorted(buckets.items()):
            per_level.setdefault(level, {})[split] = _slice_metrics(rs)
    templates = {r.template_id for r in results}
    return MetricsSummary(
        task_completion_rate=overall.tgc,
        scenario_completion_rate=overall.sgc,
        avg_interactions=overall.avg_interactions,
        total_tasks=len(results),
        total_templates=len(templates),
        per_level=per_level,
    )

"""Run-to-run comparison: resolved, regressed, new, and persistent buckets."""

from __future__ import annotations

from .records import ComparisonReport, RunRecord


def _passed(run: RunRecord, task_id: str) -> bool:
    return run.results[task_id].status == "success"


def compare_runs(base: RunRecord, new: RunRecord) -> ComparisonReport:
    """The five buckets partition the new run's task ids; tasks only in the
    base run land in the dropped side channel."""
    base_ids = set(base.results)
    new_ids = set(new.results)
    resolved = set()
    regressed = set()
    newly_covered = set()
    persistent_failures = set()
    persistent_passes = set()
    for task_id in new_ids:
        new_pass = _passed(new, task_id)
        if task_id not in base_ids:
            newly_covered.add(task_id)
        elif _passed(base, task_id):
            (persistent_passes if new_pass else regressed).add(task_id)
        else:
            (resolved if new_pass else persistent_failures).add(task_id)
    return ComparisonReport(
        base_run=base.run_id,
        new_run=new.run_id,
        resolved=resolved,
        regressed=regressed,
        newly_covered=newly_covered,
        persistent_failures=persistent_failures,
        persistent_passes=persistent_passes,
        dropped=base_ids - new_ids,
    )

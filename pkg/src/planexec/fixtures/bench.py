"""Benchmark-shaped fixtures: the 812-task manifest, result sets whose
metrics land on the published figures, and the completion-rate series."""

from __future__ import annotations

from dataclasses import dataclass

from ..evalkit.records import RunRecord, SampleSpec, TaskResult

DOMAINS = ("shopping", "forum", "code", "maps", "admin")
TEMPLATE_COUNT = 190
TASK_COUNT = 812
FIVE_INSTANCE_TEMPLATES = 52  # 52*5 + 138*4 = 812


@dataclass(frozen=True)
class ManifestTask:
    task_id: str
    template_id: str
    domain: str
    intent: str


@dataclass(frozen=True)
class TaskManifest:
    manifest_id: str
    tasks: tuple[ManifestTask, ...]

    def by_template(self) -> dict[str, list[ManifestTask]]:
        grouped: dict[str, list[ManifestTask]] = {}
        for task in self.tasks:
            grouped.setdefault(task.template_id, []).append(task)
        for instances in grouped.values():
            instances.sort(key=lambda t: t.task_id)
        return grouped

    @property
    def domains(self) -> list[str]:
        return sorted({t.domain for t in self.tasks})


def bundled_manifest() -> TaskManifest:
    """812 tasks over 190 templates across 5 domains (52 templates carry 5
    instances, the rest 4)."""
    tasks: list[ManifestTask] = []
    for t in range(TEMPLATE_COUNT):
        template_id = f"T{t + 1:03d}"
        domain = DOMAINS[t % len(DOMAINS)]
        instances = 5 if t < FIVE_INSTANCE_TEMPLATES else 4
        for k in range(instances):
            tasks.append(
                ManifestTask(
                    task_id=f"{template_id}-{k + 1}",
                    template_id=template_id,
                    domain=domain,
                    intent=f"{domain} scenario {template_id} variant {k + 1}",
                )
            )
    assert len(tasks) == TASK_COUNT
    return TaskManifest(manifest_id="bundled-812", tasks=tuple(tasks))


def fixture_run_812(run_id: str = "fixture-812") -> RunRecord:
    """812 results with 501 successes: a 61.7% task completion rate."""
    manifest = bundled_manifest()
    successes = 501
    results: dict[str, TaskResult] = {}
    for i, task in enumerate(manifest.tasks):
        # spread failures evenly: every ~2.6th task fails
        ok = (i * successes) % TASK_COUNT < successes
        results[task.task_id] = TaskResult(
            status="success" if ok else "failure",
            steps=4 + (i % 7),
            duration_ms=float(40 + (i % 11) * 5),
            template_id=task.template_id,
        )
    actual = sum(1 for r in results.values() if r.status == "success")
    # the modular spread lands exactly on the target count
    assert actual == successes, actual
    return RunRecord(
        run_id=run_id,
        agent_version="fixture",
        sample=SampleSpec(name="full", size=TASK_COUNT, selection="all_tasks", seed=0),
        results=results,
        started_at="2026-08-01T00:00:00Z",
        finished_at="2026-08-01T01:00:00Z",
    )


# Per-(level, split) layout: templates carry 3 instances each.
#   T: templates, s: successful instances, f: fully-successful templates,
#   steps: total interactions across the cell's instances.
LEVEL_CELLS = {
    ("normal", 1): {"T": 19, "s": 52, "f": 16, "steps": 339},
    ("normal", 2): {"T": 16, "s": 37, "f": 11, "steps": 497},
    ("normal", 3): {"T": 21, "s": 34, "f": 8, "steps": 799},
    ("challenge", 1): {"T": 24, "s": 66, "f": 21, "steps": 335},
    ("challenge", 2): {"T": 50, "s": 88, "f": 21, "steps": 1250},
    ("challenge", 3): {"T": 65, "s": 86, "f": 25, "steps": 2313},
}
INSTANCES_PER_TEMPLATE = 3


def _cell_statuses(T: int, s: int, f: int) -> list[list[bool]]:
    """Per-template pass/fail triples: f templates fully pass, the leftover
    successes spread at most two per remaining template."""
    rem = s - INSTANCES_PER_TEMPLATE * f
    triples: list[list[bool]] = [[True] * INSTANCES_PER_TEMPLATE for _ in range(f)]
    for _ in range(T - f):
        take = min(2, rem)
        rem -= take
        triples.append([i < take for i in range(INSTANCES_PER_TEMPLATE)])
    assert rem == 0
    return triples


def _cell_steps(n: int, total: int) -> list[int]:
    base = total // n
    extra = total - base * n
    steps = [base + (1 if i < extra else 0) for i in range(n)]
    # widen the spread without moving the sum: pair up +1/-1 around the mean
    for i in range(0, n - 1, 4):
        if steps[i] > 2:
            steps[i] -= 1
            steps[i + 1] += 1
    assert sum(steps) == total
    return steps


def fixture_run_leveled(run_id: str = "fixture-leveled") -> RunRecord:
    """Level/split-shaped results whose per-level metrics land on the
    published table cells (and whose per-split aggregate task and scenario
    rates match the aggregate row)."""
    results: dict[str, TaskResult] = {}
    for (split, level), cell in LEVEL_CELLS.items():
        triples = _cell_statuses(cell["T"], cell["s"], cell["f"])
        n = cell["T"] * INSTANCES_PER_TEMPLATE
        steps = _cell_steps(n, cell["steps"])
        i = 0
        for t_idx, triple in enumerate(triples):
            template_id = f"ap-{split}-L{level}-{t_idx + 1:02d}"
            for k, passed in enumerate(triple):
                results[f"{template_id}-{k + 1}"] = TaskResult(
                    status="success" if passed else "failure",
                    steps=steps[i],
                    duration_ms=float(30 + (i % 9) * 4),
                    template_id=template_id,
                    level=level,
                    split=split,
                )
                i += 1
    return RunRecord(
        run_id=run_id,
        agent_version="fixture",
        sample=SampleSpec(name="full", size=len(results), selection="all_tasks", seed=0),
        results=results,
        started_at="2026-08-02T00:00:00Z",
        finished_at="2026-08-02T02:00:00Z",
    )


# (evaluation run label, task completion rate %, sample size)
COMPLETION_RATE_SERIES = (
    ("1-initial", 15.2, 22),
    ("1-nano", 26.0, 44),
    ("2-nano", 37.8, 44),
    ("2-micro", 43.2, 90),
    ("3-micro", 45.5, 90),
    ("3-mini", 42.4, 190),
    ("4-mini", 55.5, 190),
    ("4-full", 50.1, 812),
    ("5-full", 61.7, 812),
)

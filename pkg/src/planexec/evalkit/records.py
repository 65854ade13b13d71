"""Evaluation artifacts: samples, run records, trajectories, metrics, reports."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Any, Optional

LADDER = {
    "initial": 22,
    "nano": 44,
    "micro": 90,
    "mini": 190,
    "full": 812,
}

SELECTION_FOR_LEVEL = {
    "initial": "per_template_representatives",
    "nano": "per_template_representatives",
    "micro": "template_coverage_50",
    "mini": "all_templates",
    "full": "all_tasks",
}

AGENTS = (
    "plan_controller",
    "api_planner",
    "shortlister",
    "code_agent",
    "browser_planner",
    "action_agent",
    "extraction_agent",
    "judge",
    "context",
)

EVENT_KINDS = ("observation", "decision", "action", "result", "reflection")

TASK_STATUSES = ("success", "failure", "error")


@dataclass(frozen=True)
class SampleSpec:
    name: str  # initial | nano | micro | mini | full
    size: int
    selection: str
    seed: int

    @classmethod
    def for_level(cls, name: str, seed: int = 0) -> "SampleSpec":
        if name not in LADDER:
            raise ValueError(f"unknown ladder level: {name!r}")
        return cls(name=name, size=LADDER[name], selection=SELECTION_FOR_LEVEL[name], seed=seed)


@dataclass
class TaskResult:
    status: str  # success | failure | error
    steps: int
    duration_ms: float
    template_id: str
    level: Optional[int] = None
    split: Optional[str] = None  # normal | challenge

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TaskResult":
        return cls(**d)


@dataclass
class RunRecord:
    run_id: str
    agent_version: str
    sample: SampleSpec
    results: dict[str, TaskResult]
    started_at: str = ""
    finished_at: str = ""

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "agent_version": self.agent_version,
            "sample": asdict(self.sample),
            "results": {tid: r.to_dict() for tid, r in sorted(self.results.items())},
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        return cls(
            run_id=d["run_id"],
            agent_version=d["agent_version"],
            sample=SampleSpec(**d["sample"]),
            results={tid: TaskResult.from_dict(r) for tid, r in d["results"].items()},
            started_at=d.get("started_at", ""),
            finished_at=d.get("finished_at", ""),
        )


@dataclass(frozen=True)
class TrajectoryEvent:
    run_id: str
    task_id: str
    seq: int
    agent: str
    kind: str
    payload: Any
    wall_ms: float

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "task_id": self.task_id,
            "seq": self.seq,
            "agent": self.agent,
            "kind": self.kind,
            "payload": self.payload,
            "wall_ms": self.wall_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrajectoryEvent":
        return cls(**d)


@dataclass
class LevelSlice:
    tgc: float
    sgc: float
    avg_interactions: float

    def to_dict(self) -> dict:
        # display precision: rates at one decimal, interaction means at two
        return {
            "tgc": round(self.tgc, 1),
            "sgc": round(self.sgc, 1),
            "avg_interactions": round(self.avg_interactions, 2),
        }


@dataclass
class MetricsSummary:
    task_completion_rate: float
    scenario_completion_rate: float
    avg_interactions: float
    total_tasks: int
    total_templates: int
    per_level: dict[str, dict[str, LevelSlice]] = field(default_factory=dict)
    # per_level keys: str(level) -> split -> slice

    def to_dict(self) -> dict:
        return {
            "task_completion_rate": round(self.task_completion_rate, 1),
            "scenario_completion_rate": round(self.scenario_completion_rate, 1),
            "avg_interactions": round(self.avg_interactions, 2),
            "total_tasks": self.total_tasks,
            "total_templates": self.total_templates,
            "per_level": {
                lvl: {split: sl.to_dict() for split, sl in splits.items()}
                for lvl, splits in self.per_level.items()
            },
        }


@dataclass
class ComparisonReport:
    base_run: str
    new_run: str
    resolved: set[str]
    regressed: set[str]
    newly_covered: set[str]
    persistent_failures: set[str]
    persistent_passes: set[str]
    dropped: set[str]  # in base but absent from new

    def to_dict(self) -> dict:
        return {
            "base_run": self.base_run,
            "new_run": self.new_run,
            "resolved": sorted(self.resolved),
            "regressed": sorted(self.regressed),
            "newly_covered": sorted(self.newly_covered),
            "persistent_failures": sorted(self.persistent_failures),
            "persistent_passes": sorted(self.persistent_passes),
            "dropped": sorted(self.dropped),
        }


@dataclass
class ErrorClassification:
    run_id: str
    task_id: str
    label: str
    note: str = ""
    author: str = ""
    created_at: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ErrorClassification":
        return cls(**d)


DEFAULT_ERROR_TAXONOMY = (
    "grounding-failure",
    "popup-obstruction",
    "shortlist-miss",
    "variable-loss",
    "reflection-miss",
    "plan-error",
    "extraction-error",
    "harness-error",
)

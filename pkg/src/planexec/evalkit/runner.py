"""Parallel benchmark runner: each task gets an isolated environment
(fresh registry, mock servers, simulated driver) and a full orchestration
pipeline; per-task crashes become status=error without aborting the run."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

from ..context import assess_and_paraphrase, enrich, mine_sitemap
from ..apiagent.agent import ApiAgent
from ..browser.agent import BrowserAgent
from ..events import EventRecorder
from ..fixtures.bench import ManifestTask
from ..fixtures.scenarios import Scenario, scenario_for
from ..orchestrator import PlanController, SubTaskResult
from ..prompting import BundleBuilder
from ..reasoner import (
    BackendConfig,
    RecordingBackend,
    RemoteChatBackend,
    Script,
    ScriptedBackend,
)
from .records import RunRecord, SampleSpec, TaskResult
from .stores import RunStore, TrajectoryStore


@dataclass
class AgentConfig:
    backend_kind: str = "scripted"  # scripted | remote
    remote: Optional[BackendConfig] = None
    agent_version: str = "dev"
    replan_budget: int = 2
    step_cap: int = 12
    stm_cap: int = 10
    shortlist_k: int = 8
    mine_budget: int = 6


class _StubExecutor:
    """Stands in for an executor kind the scenario has no environment for."""

    def __init__(self, kind: str):
        self.kind = kind

    def run_subtask(self, subtask, inputs) -> SubTaskResult:
        return SubTaskResult(
            subtask_id=subtask.id,
            status="failed",
            failure_reason=f"no {self.kind} environment available",
        )


class _MiningBrowserExecutor:
    """Wraps the browser agent; mines the app's sitemap lazily on the first
    browser sub-task and feeds it to later prompts as guidance fragments."""

    def __init__(self, scenario: Scenario, agent_factory, bundles: BundleBuilder, events, budget: int):
        self.scenario = scenario
        self.agent_factory = agent_factory
        self.bundles = bundles
        self.events = events
        self.budget = budget
        self._agent: BrowserAgent | None = None

    def run_subtask(self, subtask, inputs) -> SubTaskResult:
        if self._agent is None:
            self._agent = self.agent_factory()
            self._mine_once()
        return self._agent.run_subtask(subtask, inputs)

    def _mine_once(self) -> None:
        site = self.scenario.site
        if site is None:
            return
        miner = self.scenario.driver_factory()()
        entry_url = site.page(site.entry).url
        knowledge = mine_sitemap(entry_url, miner, budget=self.budget)
        miner.close()
        pages = "; ".join(
            f"{title} [{', '.join(links)}]" for _url, title, links in knowledge.nodes
        )
        self.bundles.base_fragments.append((f"sitemap:{site.site_id}", pages))
        self.events.emit(
            "context",
            "observation",
            {
                "type": "sitemap",
                "site_id": site.site_id,
                "pages": [list(n) for n in ((u, t, list(l)) for u, t, l in knowledge.nodes)],
                "budget_used": knowledge.budget_used,
            },
        )


def execute_scenario(
    scenario: Scenario,
    run_id: str,
    config: AgentConfig,
    sink=None,
    script_override: Script | None = None,
) -> tuple[TaskResult, EventRecorder, Script]:
    """Run one scenario end to end; returns (result, events, used script)."""
    task = scenario.task
    recorder = EventRecorder(run_id, task.id, sink)
    if config.backend_kind == "scripted":
        inner = ScriptedBackend(script_override or scenario.script)
    else:
        inner = RemoteChatBackend(config.remote)
    backend = RecordingBackend(inner)
    bundles = BundleBuilder(task.id)

    intent = assess_and_paraphrase(task.intent, bundles, backend)
    recorder.emit(
        "context",
        "decision",
        {
            "type": "refined_intent",
            "quality": intent.quality,
            "refined": intent.refined,
            "notes": intent.notes,
        },
    )
    knowledge: dict = {}
    ctx = enrich(intent, task, knowledge, scenario.registry)
    bundles.base_fragments.extend(ctx.as_prompt_fragments())
    recorder.emit(
        "context",
        "decision",
        {
            "type": "context_bundle",
            "fragments": [list(f) for f in ctx.fragments],
            "provenance": list(ctx.provenance),
        },
    )

    executors = {
        "api": ApiAgent(
            scenario.registry,
            backend,
            bundles,
            events=recorder,
            apps_in_scope=list(task.apps_in_scope),
            shortlist_k=config.shortlist_k,
            step_cap=config.step_cap,
            stm_cap=config.stm_cap,
        )
    }
    driver_factory = scenario.driver_factory()
    if driver_factory is not None:
        def make_agent():
            return BrowserAgent(
                driver_factory(),
                backend,
                bundles,
                events=recorder,
                step_cap=config.step_cap,
                stm_cap=config.stm_cap,
            )

        executors["browser"] = _MiningBrowserExecutor(
            scenario, make_agent, bundles, recorder, config.mine_budget
        )
    else:
        executors["browser"] = _StubExecutor("browser")

    controller = PlanController(
        backend,
        executors,
        events=recorder,
        replan_budget=config.replan_budget,
        bundles=bundles,
    )
    outcome = controller.run_task(task)
    succeeded = (
        outcome.status == "complete"
        and scenario.expected_answer is not None
        and outcome.final_answer == scenario.expected_answer
    )
    result = TaskResult(
        status="success" if succeeded else "failure",
        steps=outcome.steps,
        duration_ms=_duration_ms(config, recorder),
        template_id=_template_of(task.id),
    )
    return result, recorder, backend.script()


def _duration_ms(config: AgentConfig, recorder: EventRecorder) -> float:
    # scripted runs report a logical duration (event count) so results are
    # byte-identical regardless of scheduling; remote runs report wall time
    if config.backend_kind == "scripted":
        return float(len(recorder.events))
    return recorder.events[-1].wall_ms if recorder.events else 0.0


def _template_of(task_id: str) -> str:
    return task_id.rsplit("-", 1)[0]


def _utcnow() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


def run_benchmark(
    tasks: list[ManifestTask],
    agent_config: AgentConfig,
    workers: int = 1,
    run_id: str = "run",
    sample: SampleSpec | None = None,
    runs_root: str | None = None,
    inject_crash: set[str] | None = None,
) -> RunRecord:
    if workers < 1:
        raise ValueError("workers must be >= 1")
    trajectory_store = TrajectoryStore(runs_root) if runs_root else None
    run_store = RunStore(runs_root) if runs_root else None
    started = _utcnow()
    crash_ids = inject_crash or set()

    def one(mtask: ManifestTask) -> tuple[str, TaskResult]:
        try:
            if mtask.task_id in crash_ids:
                raise RuntimeError("injected crash")
            scenario = scenario_for(mtask)
            sink = (
                trajectory_store.sink_for(run_id, mtask.task_id)
                if trajectory_store
                else None
            )
            result, recorder, used_script = execute_scenario(
                scenario, run_id, agent_config, sink=sink
            )
            result.template_id = mtask.template_id
            if runs_root:
                _save_script(runs_root, run_id, mtask.task_id, used_script)
            return mtask.task_id, result
        except Exception:
            return mtask.task_id, TaskResult(
                status="error",
                steps=0,
                duration_ms=0.0,
                template_id=mtask.template_id,
            )

    results: dict[str, TaskResult] = {}
    if workers == 1:
        for mtask in tasks:
            task_id, result = one(mtask)
            results[task_id] = result
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for task_id, result in pool.map(one, tasks):
                results[task_id] = result

    record = RunRecord(
        run_id=run_id,
        agent_version=agent_config.agent_version,
        sample=sample
        or SampleSpec(name="adhoc", size=len(tasks), selection="all_tasks", seed=0),
        results=results,
        started_at=started,
        finished_at=_utcnow(),
    )
    if run_store:
        run_store.save(record)
    return record


def _save_script(runs_root: str, run_id: str, task_id: str, script: Script) -> None:
    folder = os.path.join(runs_root, run_id, "scripts")
    os.makedirs(folder, exist_ok=True)
    script.dump(os.path.join(folder, f"{task_id}.json"))


def replay_task(
    runs_root: str, run_id: str, task_id: str, config: AgentConfig | None = None
) -> tuple[TaskResult, list, list]:
    """Re-execute a task from its recorded reasoner script; returns the new
    result plus (stored, replayed) event payload sequences for comparison."""
    from ..fixtures.bench import bundled_manifest

    script_path = os.path.join(runs_root, run_id, "scripts", f"{task_id}.json")
    if not os.path.exists(script_path):
        raise FileNotFoundError(f"no recorded script for {run_id}/{task_id}")
    script = Script.load(script_path)
    manifest_task = next(
        (t for t in bundled_manifest().tasks if t.task_id == task_id), None
    )
    if manifest_task is None:
        manifest_task = ManifestTask(
            task_id=task_id,
            template_id=_template_of(task_id),
            domain="adhoc",
            intent="",
        )
    scenario = scenario_for(manifest_task)
    config = config or AgentConfig()
    result, recorder, _ = execute_scenario(
        scenario, run_id, config, sink=None, script_override=script
    )
    stored_events = TrajectoryStore(runs_root).load_trajectory(run_id, task_id)
    stored = [_comparable(e.to_dict()) for e in stored_events]
    replayed = [_comparable(e.to_dict()) for e in recorder.events]
    return result, stored, replayed


def _comparable(event_dict: dict) -> dict:
    out = dict(event_dict)
    out.pop("wall_ms", None)
    return out

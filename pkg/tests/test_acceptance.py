"""Acceptance gate: every criterion at its stated tolerance, with runtime
budgets enforced. One pass/fail line per criterion is printed by the hook
in conftest.py."""

import os
import random
import subprocess
import sys
import textwrap
import time

import pytest

from planexec.apiagent.interpreter import evaluate_expr
from planexec.apiagent.stepprogram import LetStmt, ReturnStmt, parse_program, static_check
from planexec.browser.agent import ActionFailedError, act
from planexec.browser.sim import SimulatedBrowser
from planexec.evalkit.compare import compare_runs
from planexec.evalkit.metrics import compute_metrics
from planexec.evalkit.records import LADDER, RunRecord, SampleSpec, TaskResult
from planexec.evalkit.runner import AgentConfig, run_benchmark
from planexec.evalkit.sampling import draw_sample
from planexec.evalkit.stores import TrajectoryStore
from planexec.events import EventRecorder
from planexec.fixtures.bench import bundled_manifest, fixture_run_812, fixture_run_leveled
from planexec.fixtures.corpus import build_corpus_registry, corpus_app_ids, corpus_document, labeled_queries
from planexec.fixtures.scenarios import count_mail_scenario
from planexec.fixtures.sites import make_shop_site
from planexec.jsonutil import canonical_json
from planexec.prompting import BundleBuilder
from planexec.reasoner import Script, ScriptedBackend
from planexec.registry.ingest import iter_source_operations

from program_gen import generate_case


def timed(budget_s):
    class _Timer:
        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.elapsed = time.perf_counter() - self.t0
            if exc[0] is None:
                assert self.elapsed < budget_s, (
                    f"runtime {self.elapsed:.2f}s exceeded the {budget_s}s budget"
                )
            return False

    return _Timer()


def strip_wall(events):
    out = []
    for e in events:
        d = e.to_dict()
        d.pop("wall_ms")
        out.append(d)
    return out


class TestAcceptance:
    def test_end_to_end_scripted_scenario(self):
        from planexec.evalkit.runner import execute_scenario

        with timed(5.0):
            runs = []
            for _ in range(2):
                scenario = count_mail_scenario("T000-1", user="alice", count=5)
                result, recorder, _ = execute_scenario(scenario, "accept", AgentConfig())
                runs.append((result, recorder))
            for result, recorder in runs:
                assert result.status == "success"
                assert len(recorder.events) >= 8
                dispatches = [
                    e.payload for e in recorder.events if e.payload.get("type") == "dispatch"
                ]
                assert dispatches[1]["inputs"]["order_count"] == 5  # propagated
            assert canonical_json(strip_wall(runs[0][1].events)) == canonical_json(
                strip_wall(runs[1][1].events)
            )

    def test_metrics_oracle_on_published_figures(self):
        with timed(1.0):
            headline = compute_metrics(fixture_run_812())
            assert abs(headline.task_completion_rate - 61.7) <= 0.1
            leveled = compute_metrics(fixture_run_leveled())
            table = {
                ("normal", 1): (91.2, 84.2, 5.94),
                ("normal", 2): (77.1, 68.8, 10.36),
                ("normal", 3): (54.0, 38.1, 12.69),
                ("challenge", 1): (91.7, 87.5, 4.65),
                ("challenge", 2): (58.7, 42.0, 8.33),
                ("challenge", 3): (44.1, 38.5, 11.86),
            }
            for (split, level), (tgc, sgc, avg) in table.items():
                cell = leveled.per_level[str(level)][split]
                assert abs(cell.tgc - tgc) <= 0.1
                assert abs(cell.sgc - sgc) <= 0.1
                assert abs(cell.avg_interactions - avg) <= 0.1

    def test_comparison_correctness_randomized(self):
        rng = random.Random(424242)

        def random_run(run_id, ids):
            results = {
                t: TaskResult(
                    status=rng.choice(["success", "failure", "error"]),
                    steps=1,
                    duration_ms=0.0,
                    template_id=t,
                )
                for t in ids
            }
            return RunRecord(
                run_id=run_id,
                agent_version="v",
                sample=SampleSpec(name="adhoc", size=len(ids), selection="all_tasks", seed=0),
                results=results,
            )

        with timed(10.0):
            for _ in range(1000):
                universe = [f"t{i}" for i in range(500)]
                base_ids = {t for t in universe if rng.random() < 0.9}
                new_ids = {t for t in universe if rng.random() < 0.9}
                base = random_run("b", base_ids)
                new = random_run("n", new_ids)
                report = compare_runs(base, new)
                passed_base = {t for t, r in base.results.items() if r.status == "success"}
                passed_new = {t for t, r in new.results.items() if r.status == "success"}
                in_both = base_ids & new_ids
                assert report.resolved == (in_both - passed_base) & passed_new
                assert report.regressed == (in_both & passed_base) - passed_new
                assert report.newly_covered == new_ids - base_ids
                assert report.persistent_failures == (in_both - passed_base) - passed_new
                assert report.persistent_passes == (in_both & passed_base) & passed_new
                buckets = [
                    report.resolved,
                    report.regressed,
                    report.newly_covered,
                    report.persistent_failures,
                    report.persistent_passes,
                ]
                assert sum(len(b) for b in buckets) == len(new_ids)
                union = set()
                for b in buckets:
                    union |= b
                assert union == new_ids

    def test_parallel_serial_equivalence_on_nano_fixture(self):
        with timed(30.0):
            tasks = draw_sample(bundled_manifest(), SampleSpec.for_level("nano", seed=0))
            assert len(tasks) == 44
            outcomes = {}
            for workers in (1, 4, 8):
                record = run_benchmark(
                    tasks, AgentConfig(), workers=workers, run_id=f"eq-{workers}"
                )
                outcomes[workers] = {
                    tid: r.to_dict() for tid, r in record.results.items()
                }
            assert outcomes[1] == outcomes[4] == outcomes[8]

    def test_sample_ladder_sizes_and_nesting(self):
        with timed(5.0):
            manifest = bundled_manifest()
            levels = ["initial", "nano", "micro", "mini", "full"]
            for name, size in LADDER.items():
                assert len(draw_sample(manifest, SampleSpec.for_level(name, seed=0))) == size
            for seed in range(100):
                previous = None
                for level in levels:
                    ids = {
                        t.task_id
                        for t in draw_sample(manifest, SampleSpec.for_level(level, seed))
                    }
                    if previous is not None:
                        assert previous <= ids, (seed, level)
                    previous = ids

    def test_interpreter_equivalence_ten_thousand_programs(self):
        with timed(60.0):
            rng = random.Random(20260810)
            divergences = 0
            for _ in range(10000):
                case = generate_case(rng)
                program = parse_program(case.source)
                static_check(program, set(case.ambient), None)
                env = dict(case.ambient)
                got = None
                for stmt in program.statements:
                    if isinstance(stmt, LetStmt):
                        env[stmt.name] = evaluate_expr(stmt.expr, env)
                    elif isinstance(stmt, ReturnStmt):
                        got = {n: evaluate_expr(e, env) for n, e in stmt.entries}
                if canonical_json(got) != canonical_json(case.expected):
                    divergences += 1
            assert divergences == 0

    def test_minimizer_bound_and_invocation_sufficiency(self):
        with timed(30.0):
            registry, _ = build_corpus_registry()
            assert len(registry.app_ids) >= 20
            total_ops = sum(len(registry.manifest(a).tools) for a in registry.app_ids)
            assert total_ops >= 200
            source_total = 0
            minimized_total = 0
            for app_id in corpus_app_ids():
                doc = corpus_document(app_id)
                source_total += sum(
                    len(canonical_json(op)) for op in iter_source_operations(doc)
                )
                minimized_total += sum(
                    len(canonical_json(t.to_dict()))
                    for t in registry.manifest(app_id).tools
                )
            assert minimized_total <= 0.5 * source_total
            samples = {"string": "sample", "number": 1, "boolean": True, "list": [], "record": {}}
            for app_id in registry.app_ids:
                for tool in registry.manifest(app_id).tools:
                    args = {
                        p.name: samples[p.type_tag] for p in tool.params if p.required
                    }
                    resp = registry.invoke(tool.tool_id, args)
                    assert 200 <= resp.status_code < 300, (tool.tool_id, resp.body)

    def test_shortlister_recall_at_five(self):
        with timed(10.0):
            registry, _ = build_corpus_registry()
            queries = labeled_queries(100)
            hits = sum(
                1
                for query, expected in queries
                if expected in {h.tool_id for h in registry.search(query, k=5)}
            )
            assert hits / len(queries) >= 0.9

    def test_popup_bypass_and_undismissable_cap(self):
        with timed(5.0):
            bundles = BundleBuilder("accept-popup")
            reasoner = ScriptedBackend(Script())
            driver = SimulatedBrowser(make_shop_site(popup="dismissable"))
            events = EventRecorder("accept", "popup")
            outcome = act(
                "click the Orders link", driver.snapshot(), driver, bundles, reasoner, events=events
            )
            assert outcome.success and outcome.attempts <= 3
            assert any(
                e.payload.get("type") == "dismiss_overlay" for e in events.events
            ), "trajectory must record the dismissal action"
            hard = SimulatedBrowser(make_shop_site(popup="undismissable"))
            with pytest.raises(ActionFailedError) as exc:
                act("click the Orders link", hard.snapshot(), hard, bundles, reasoner)
            assert exc.value.attempts == 3

    def test_trajectory_durability_under_kill(self, tmp_path):
        child = textwrap.dedent(
            f"""
            import os, sys
            sys.path.insert(0, {str(os.path.join(os.path.dirname(__file__), "..", "src"))!r})
            from planexec.evalkit.records import TrajectoryEvent
            from planexec.evalkit.stores import TrajectoryStore
            store = TrajectoryStore({str(tmp_path)!r})
            for task in ("ta", "tb", "tc"):
                for i in range(25):
                    store.append_event(TrajectoryEvent(
                        run_id="killrun", task_id=task, seq=i, agent="action_agent",
                        kind="action", payload={{"i": i}}, wall_ms=0.0,
                    ))
            os._exit(9)
            """
        )
        proc = subprocess.run([sys.executable, "-c", child], capture_output=True, text=True)
        assert proc.returncode == 9, proc.stderr
        store = TrajectoryStore(str(tmp_path))
        for task in ("ta", "tb", "tc"):
            events = store.load_trajectory("killrun", task)
            assert [e.seq for e in events] == list(range(25)), f"{task} lost events"

import os
import subprocess
import sys
import textwrap
import threading

import pytest

from planexec.evalkit.records import (
    ErrorClassification,
    RunRecord,
    SampleSpec,
    TaskResult,
    TrajectoryEvent,
)
from planexec.evalkit.stores import (
    ClassificationStore,
    RunStore,
    SequenceGapError,
    TrajectoryStore,
    UnknownTaskError,
    UnknownTrajectoryError,
)


def event(seq, run_id="r1", task_id="t1", payload=None):
    return TrajectoryEvent(
        run_id=run_id,
        task_id=task_id,
        seq=seq,
        agent="plan_controller",
        kind="decision",
        payload=payload or {"n": seq},
        wall_ms=float(seq),
    )


class TestTrajectoryStore:
    def test_round_trip_ten_events(self, tmp_path):
        store = TrajectoryStore(str(tmp_path))
        for i in range(10):
            store.append_event(event(i))
        loaded = store.load_trajectory("r1", "t1")
        assert [e.seq for e in loaded] == list(range(10))
        assert loaded[3].payload == {"n": 3}

    def test_sequence_gap_rejected(self, tmp_path):
        store = TrajectoryStore(str(tmp_path))
        store.append_event(event(0))
        with pytest.raises(SequenceGapError):
            store.append_event(event(2))

    def test_unknown_trajectory(self, tmp_path):
        with pytest.raises(UnknownTrajectoryError):
            TrajectoryStore(str(tmp_path)).load_trajectory("r1", "missing")

    def test_append_resumes_after_reopen(self, tmp_path):
        store = TrajectoryStore(str(tmp_path))
        for i in range(3):
            store.append_event(event(i))
        fresh = TrajectoryStore(str(tmp_path))
        fresh.append_event(event(3))
        assert [e.seq for e in fresh.load_trajectory("r1", "t1")] == [0, 1, 2, 3]

    def test_concurrent_appends_eight_tasks(self, tmp_path):
        store = TrajectoryStore(str(tmp_path))
        errors = []

        def writer(task_id):
            try:
                for i in range(50):
                    store.append_event(event(i, task_id=task_id))
            except Exception as exc:  # pragma: no cover
                errors.append(exc)

        threads = [
            threading.Thread(target=writer, args=(f"task-{k}",)) for k in range(8)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        for k in range(8):
            loaded = store.load_trajectory("r1", f"task-{k}")
            assert [e.seq for e in loaded] == list(range(50))

    def test_kill_mid_run_loses_no_appended_events(self, tmp_path):
        """A child process appends events and dies hard; every event it
        appended (fsynced) must load intact, in order, with no torn tail."""
        child = textwrap.dedent(
            f"""
            import os, sys
            sys.path.insert(0, {str(os.path.join(os.path.dirname(__file__), "..", "src"))!r})
            from planexec.evalkit.records import TrajectoryEvent
            from planexec.evalkit.stores import TrajectoryStore

            store = TrajectoryStore({str(tmp_path)!r})
            for i in range(37):
                store.append_event(TrajectoryEvent(
                    run_id="rk", task_id="tk", seq=i, agent="code_agent",
                    kind="action", payload={{"i": i, "pad": "x" * 512}}, wall_ms=0.0,
                ))
                if i == 36:
                    os._exit(137)  # simulated crash, no cleanup
            """
        )
        proc = subprocess.run(
            [sys.executable, "-c", child], capture_output=True, text=True
        )
        assert proc.returncode == 137, proc.stderr
        loaded = TrajectoryStore(str(tmp_path)).load_trajectory("rk", "tk")
        assert [e.seq for e in loaded] == list(range(37))
        assert all(e.payload["i"] == e.seq for e in loaded)

    def test_torn_tail_line_is_dropped(self, tmp_path):
        store = TrajectoryStore(str(tmp_path))
        for i in range(5):
            store.append_event(event(i))
        path = os.path.join(str(tmp_path), "r1", "trajectories", "t1.jsonl")
        with open(path, "a", encoding="utf-8") as fh:
            fh.write('{"run_id": "r1", "task_id": "t1", "seq": 5, "agen')  # torn write
        loaded = TrajectoryStore(str(tmp_path)).load_trajectory("r1", "t1")
        assert [e.seq for e in loaded] == list(range(5))


def save_run(tmp_path, run_id="r1", task_ids=("t1", "t2")):
    store = RunStore(str(tmp_path))
    store.save(
        RunRecord(
            run_id=run_id,
            agent_version="v",
            sample=SampleSpec(name="adhoc", size=len(task_ids), selection="all_tasks", seed=0),
            results={
                tid: TaskResult(status="failure", steps=1, duration_ms=1.0, template_id=tid)
                for tid in task_ids
            },
        )
    )
    return store


class TestRunStore:
    def test_save_load_round_trip(self, tmp_path):
        store = save_run(tmp_path)
        run = store.load("r1")
        assert run.run_id == "r1"
        assert set(run.results) == {"t1", "t2"}
        assert store.list_runs() == ["r1"]

    def test_unknown_run(self, tmp_path):
        with pytest.raises(UnknownTaskError):
            RunStore(str(tmp_path)).load("ghost")


class TestClassificationStore:
    def test_round_trip_with_server_timestamp(self, tmp_path):
        run_store = save_run(tmp_path)
        store = ClassificationStore(str(tmp_path), run_store)
        stored = store.record_classification(
            ErrorClassification(run_id="r1", task_id="t1", label="grounding-failure")
        )
        assert stored.created_at
        listed = store.list_classifications("r1")
        assert [c.label for c in listed] == ["grounding-failure"]

    def test_unknown_task_rejected(self, tmp_path):
        run_store = save_run(tmp_path)
        store = ClassificationStore(str(tmp_path), run_store)
        with pytest.raises(UnknownTaskError):
            store.record_classification(
                ErrorClassification(run_id="r1", task_id="ghost", label="plan-error")
            )
        with pytest.raises(UnknownTaskError):
            store.record_classification(
                ErrorClassification(run_id="ghost", task_id="t1", label="plan-error")
            )

    def test_multiple_labels_per_task(self, tmp_path):
        run_store = save_run(tmp_path)
        store = ClassificationStore(str(tmp_path), run_store)
        store.record_classification(
            ErrorClassification(run_id="r1", task_id="t1", label="popup-obstruction")
        )
        store.record_classification(
            ErrorClassification(run_id="r1", task_id="t1", label="grounding-failure")
        )
        labels = [c.label for c in store.list_classifications("r1")]
        assert labels == ["popup-obstruction", "grounding-failure"]

    def test_empty_label_rejected(self, tmp_path):
        run_store = save_run(tmp_path)
        store = ClassificationStore(str(tmp_path), run_store)
        with pytest.raises(ValueError):
            store.record_classification(
                ErrorClassification(run_id="r1", task_id="t1", label="")
            )

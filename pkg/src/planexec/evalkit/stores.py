"""Durable stores: append-only trajectory files, run records, and error
classifications. Layout under a runs root:

    <root>/<run_id>/run.json
    <root>/<run_id>/trajectories/<task_id>.jsonl
    <root>/<run_id>/classifications.jsonl
    <root>/<run_id>/scripts/<task_id>.json     (recorded reasoner outputs)
"""

from __future__ import annotations

import json
import os
import threading
from datetime import datetime, timezone

from .records import ErrorClassification, RunRecord, TrajectoryEvent


class SequenceGapError(Exception):
    """An appended event does not continue the sequence."""


class UnknownTrajectoryError(Exception):
    """No trajectory exists for this (run, task)."""


class UnknownTaskError(Exception):
    """The referenced run or task does not exist."""


def _utcnow() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


def _sanitize(part: str) -> str:
    if not part or "/" in part or "\\" in part or part.startswith("."):
        raise ValueError(f"unsafe path component: {part!r}")
    return part


class TrajectoryStore:
    """One jsonl file per (run, task); every append is flushed and fsynced
    so a killed process loses at most the line it was writing."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)
        self._last_seq: dict[tuple[str, str], int] = {}
        self._locks: dict[tuple[str, str], threading.Lock] = {}
        self._guard = threading.Lock()

    def _path(self, run_id: str, task_id: str) -> str:
        return os.path.join(
            self.root, _sanitize(run_id), "trajectories", _sanitize(task_id) + ".jsonl"
        )

    def _lock(self, key: tuple[str, str]) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(key, threading.Lock())

    def append_event(self, event: TrajectoryEvent) -> None:
        key = (event.run_id, event.task_id)
        with self._lock(key):
            last = self._last_seq.get(key)
            if last is None:
                existing = self._load_lines(event.run_id, event.task_id, missing_ok=True)
                last = existing[-1]["seq"] if existing else -1
            if event.seq != last + 1:
                raise SequenceGapError(
                    f"expected seq {last + 1} for {key}, got {event.seq}"
                )
            path = self._path(event.run_id, event.task_id)
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event.to_dict(), sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._last_seq[key] = event.seq

    def _load_lines(self, run_id: str, task_id: str, missing_ok: bool = False) -> list[dict]:
        path = self._path(run_id, task_id)
        if not os.path.exists(path):
            if missing_ok:
                return []
            raise UnknownTrajectoryError(f"no trajectory for {(run_id, task_id)}")
        events = []
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
        for line in raw.split("\n"):
            if not line:
                continue
            try:
                events.append(json.loads(line))
            except json.JSONDecodeError:
                break  # torn trailing line from a killed writer
        return events

    def load_trajectory(self, run_id: str, task_id: str) -> list[TrajectoryEvent]:
        lines = self._load_lines(run_id, task_id)
        return [TrajectoryEvent.from_dict(d) for d in lines]

    def has_trajectory(self, run_id: str, task_id: str) -> bool:
        return os.path.exists(self._path(run_id, task_id))

    def task_ids(self, run_id: str) -> list[str]:
        folder = os.path.join(self.root, _sanitize(run_id), "trajectories")
        if not os.path.isdir(folder):
            return []
        return sorted(f[: -len(".jsonl")] for f in os.listdir(folder) if f.endswith(".jsonl"))

    def sink_for(self, run_id: str, task_id: str):
        def sink(event: TrajectoryEvent) -> None:
            self.append_event(event)

        return sink


class RunStore:
    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)

    def _path(self, run_id: str) -> str:
        return os.path.join(self.root, _sanitize(run_id), "run.json")

    def save(self, run: RunRecord) -> None:
        path = self._path(run.run_id)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(run.to_dict(), fh, indent=2, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)

    def load(self, run_id: str) -> RunRecord:
        path = self._path(run_id)
        if not os.path.exists(path):
            raise UnknownTaskError(f"no run {run_id!r}")
        with open(path, "r", encoding="utf-8") as fh:
            return RunRecord.from_dict(json.load(fh))

    def exists(self, run_id: str) -> bool:
        return os.path.exists(self._path(run_id))

    def list_runs(self) -> list[str]:
        out = []
        for name in sorted(os.listdir(self.root)):
            if os.path.exists(os.path.join(self.root, name, "run.json")):
                out.append(name)
        return out


class ClassificationStore:
    def __init__(self, root: str, run_store: RunStore):
        self.root = root
        self.run_store = run_store
        self._lock = threading.Lock()

    def _path(self, run_id: str) -> str:
        return os.path.join(self.root, _sanitize(run_id), "classifications.jsonl")

    def record_classification(self, c: ErrorClassification) -> ErrorClassification:
        if not c.label:
            raise ValueError("label must be nonempty")
        if not self.run_store.exists(c.run_id):
            raise UnknownTaskError(f"no run {c.run_id!r}")
        run = self.run_store.load(c.run_id)
        if c.task_id not in run.results:
            raise UnknownTaskError(f"run {c.run_id!r} has no task {c.task_id!r}")
        stamped = ErrorClassification(
            run_id=c.run_id,
            task_id=c.task_id,
            label=c.label,
            note=c.note,
            author=c.author,
            created_at=c.created_at or _utcnow(),
        )
        path = self._path(c.run_id)
        with self._lock:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(stamped.to_dict(), sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        return stamped

    def list_classifications(self, run_id: str) -> list[ErrorClassification]:
        if not self.run_store.exists(run_id):
            raise UnknownTaskError(f"no run {run_id!r}")
        path = self._path(run_id)
        if not os.path.exists(path):
            return []
        out = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(ErrorClassification.from_dict(json.loads(line)))
        return out

"""Per-task trajectory event recorder feeding the trajectory store."""

from __future__ import annotations

import time
from typing import Any, Callable

from .evalkit.records import AGENTS, EVENT_KINDS, TrajectoryEvent

EventSink = Callable[[TrajectoryEvent], None]


class EventRecorder:
    """Assigns strictly increasing sequence numbers for one (run, task)."""

    def __init__(self, run_id: str, task_id: str, sink: EventSink | None = None):
        self.run_id = run_id
        self.task_id = task_id
        self._sink = sink
        self._seq = 0
        self._t0 = time.monotonic()
        self.events: list[TrajectoryEvent] = []

    def emit(self, agent: str, kind: str, payload: Any) -> TrajectoryEvent:
        if agent not in AGENTS:
            raise ValueError(f"unknown trajectory agent: {agent!r}")
        if kind not in EVENT_KINDS:
            raise ValueError(f"unknown trajectory event kind: {kind!r}")
        event = TrajectoryEvent(
            run_id=self.run_id,
            task_id=self.task_id,
            seq=self._seq,
            agent=agent,
            kind=kind,
            payload=payload,
            wall_ms=(time.monotonic() - self._t0) * 1000.0,
        )
        self._seq += 1
        self.events.append(event)
        if self._sink is not None:
            self._sink(event)
        return event


def null_recorder(run_id: str = "adhoc", task_id: str = "adhoc") -> EventRecorder:
    return EventRecorder(run_id, task_id, sink=None)

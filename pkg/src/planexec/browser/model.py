"""Browser observation and action types."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

INTERACTABLE_ROLES = ("button", "link", "textbox", "combobox", "checkbox", "dialog")


class SessionClosedError(Exception):
    """The driver session is no longer open."""


@dataclass(frozen=True)
class AxNode:
    node_id: int
    role: str
    name: str
    value: Optional[str] = None
    bounds: tuple[int, int, int, int] = (0, 0, 0, 0)
    occluded_by: Optional[int] = None

    @property
    def interactable(self) -> bool:
        return self.role in INTERACTABLE_ROLES

    def to_dict(self) -> dict:
        return {
            "node_id": self.node_id,
            "role": self.role,
            "name": self.name,
            "value": self.value,
            "bounds": list(self.bounds),
            "occluded_by": self.occluded_by,
        }


@dataclass(frozen=True)
class Observation:
    url: str
    ax_tree: tuple[AxNode, ...]
    screenshot_ref: str
    overlay_present: bool
    capture_seq: int

    def __post_init__(self):
        ids = [n.node_id for n in self.ax_tree]
        if len(ids) != len(set(ids)):
            raise ValueError("ax node ids must be unique within an observation")
        object.__setattr__(self, "ax_tree", tuple(self.ax_tree))

    def node(self, node_id: int) -> AxNode:
        for n in self.ax_tree:
            if n.node_id == node_id:
                return n
        raise KeyError(node_id)

    def has_node(self, node_id: int) -> bool:
        return any(n.node_id == node_id for n in self.ax_tree)


@dataclass(frozen=True)
class BrowserAction:
    kind: str  # click | type | select | go_back | finish
    target: Optional[int] = None
    text: Optional[str] = None
    option: Optional[str] = None

    def __post_init__(self):
        if self.kind in ("click", "type", "select") and self.target is None:
            raise ValueError(f"{self.kind} requires a target node")
        if self.kind == "type" and self.text is None:
            raise ValueError("type requires text")
        if self.kind == "select" and self.option is None:
            raise ValueError("select requires an option")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "target": self.target, "text": self.text, "option": self.option}


@dataclass(frozen=True)
class ActionOutcome:
    applied: BrowserAction
    success: bool
    feedback: Optional[str]
    attempts: int
    new_observation: Observation


@dataclass(frozen=True)
class PageContent:
    """The extraction agent's observation space: markdown only, no ax tree."""

    markdown: str
    screenshot_ref: str
    url: str

"""Deterministic page-graph browser simulator and the real-browser adapter
contract.

A site fixture declares pages with accessibility nodes, optional blocking
overlays, markdown content, and click transitions. The simulator replays
them exactly: the same action sequence from the same start page always
yields the same pages and observations.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional
from urllib.parse import urlparse

from .model import AxNode, Observation, PageContent, SessionClosedError


@dataclass(frozen=True)
class OverlaySpec:
    dialog: int
    close: Optional[int] = None
    dismissable: bool = True
    covers: Optional[tuple[int, ...]] = None  # default: every other node


@dataclass(frozen=True)
class PageSpec:
    page_id: str
    url: str
    title: str
    nodes: tuple[AxNode, ...]
    markdown: str
    transitions: dict[int, str] = field(default_factory=dict)
    overlay: Optional[OverlaySpec] = None

    def node(self, node_id: int) -> AxNode | None:
        for n in self.nodes:
            if n.node_id == node_id:
                return n
        return None


@dataclass(frozen=True)
class SitePlan:
    site_id: str
    origin: str
    entry: str
    pages: dict[str, PageSpec]

    def page(self, page_id: str) -> PageSpec:
        return self.pages[page_id]


def _page_from_dict(d: dict) -> PageSpec:
    nodes = tuple(
        AxNode(
            node_id=n["id"],
            role=n["role"],
            name=n["name"],
            value=n.get("value"),
            bounds=tuple(n.get("bounds", (0, 0, 0, 0))),
        )
        for n in d["nodes"]
    )
    overlay = None
    if d.get("overlay"):
        o = d["overlay"]
        overlay = OverlaySpec(
            dialog=o["dialog"],
            close=o.get("close"),
            dismissable=o.get("dismissable", True),
            covers=tuple(o["covers"]) if o.get("covers") else None,
        )
    return PageSpec(
        page_id=d["id"],
        url=d["url"],
        title=d.get("title", d["id"]),
        nodes=nodes,
        markdown=d.get("markdown", ""),
        transitions={int(k): v for k, v in d.get("transitions", {}).items()},
        overlay=overlay,
    )


def site_from_dict(doc: dict) -> SitePlan:
    pages = {p["id"]: _page_from_dict(p) for p in doc["pages"]}
    return SitePlan(
        site_id=doc["site_id"],
        origin=doc["origin"],
        entry=doc["entry"],
        pages=pages,
    )


def site_to_dict(site: SitePlan) -> dict:
    pages = []
    for page in site.pages.values():
        d = {
            "id": page.page_id,
            "url": page.url,
            "title": page.title,
            "nodes": [
                {
                    "id": n.node_id,
                    "role": n.role,
                    "name": n.name,
                    **({"value": n.value} if n.value is not None else {}),
                }
                for n in page.nodes
            ],
            "markdown": page.markdown,
            "transitions": {str(k): v for k, v in page.transitions.items()},
        }
        if page.overlay:
            d["overlay"] = {
                "dialog": page.overlay.dialog,
                "close": page.overlay.close,
                "dismissable": page.overlay.dismissable,
                **({"covers": list(page.overlay.covers)} if page.overlay.covers else {}),
            }
        pages.append(d)
    return {"site_id": site.site_id, "origin": site.origin, "entry": site.entry, "pages": pages}


def load_site(path: str) -> SitePlan:
    with open(path, "r", encoding="utf-8") as fh:
        return site_from_dict(json.load(fh))


def save_site(site: SitePlan, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(site_to_dict(site), fh, indent=2)


@dataclass(frozen=True)
class DriverActionResult:
    ok: bool
    reason: Optional[str] = None
    page_changed: bool = False


class BrowserDriver(ABC):
    """Adapter contract for browser control. Real browsers implement this
    over their remote-control wire protocol; tests use the simulator."""

    @abstractmethod
    def navigate(self, url: str) -> None: ...

    @abstractmethod
    def click(self, node_id: int) -> DriverActionResult: ...

    @abstractmethod
    def type_text(self, node_id: int, text: str) -> DriverActionResult: ...

    @abstractmethod
    def select(self, node_id: int, option: str) -> DriverActionResult: ...

    @abstractmethod
    def back(self) -> DriverActionResult: ...

    @abstractmethod
    def snapshot(self) -> Observation: ...

    @abstractmethod
    def page_content(self) -> PageContent: ...

    @abstractmethod
    def close(self) -> None: ...


class SimulatedBrowser(BrowserDriver):
    def __init__(self, site: SitePlan, start_page: str | None = None):
        self.site = site
        self._page_id = start_page or site.entry
        self._history: list[str] = []
        self._open = True
        self._capture_seq = 0
        self._dismissed: set[str] = set()
        self._typed: dict[tuple[str, int], str] = {}
        self._selected: dict[tuple[str, int], str] = {}

    # ----------------------------------------------------------- helpers

    def _require_open(self):
        if not self._open:
            raise SessionClosedError("browser session is closed")

    @property
    def current_page(self) -> PageSpec:
        return self.site.page(self._page_id)

    def _overlay_active(self) -> bool:
        page = self.current_page
        return page.overlay is not None and self._page_id not in self._dismissed

    def _occluded(self, node_id: int) -> bool:
        if not self._overlay_active():
            return False
        overlay = self.current_page.overlay
        if node_id == overlay.dialog or node_id == overlay.close:
            return False
        if overlay.covers is not None:
            return node_id in overlay.covers
        return True

    # ------------------------------------------------------------ driver

    def navigate(self, url: str) -> None:
        self._require_open()
        for page in self.site.pages.values():
            if page.url == url:
                self._history.append(self._page_id)
                self._page_id = page.page_id
                return
        raise ValueError(f"no page with url {url!r}")

    def click(self, node_id: int) -> DriverActionResult:
        self._require_open()
        page = self.current_page
        node = page.node(node_id)
        if node is None:
            return DriverActionResult(False, f"no node {node_id} on page {page.page_id}")
        if self._overlay_active():
            overlay = page.overlay
            if node_id == overlay.close:
                self._dismissed.add(page.page_id)
                return DriverActionResult(True, "dialog dismissed")
            if node_id == overlay.dialog:
                if overlay.dismissable:
                    self._dismissed.add(page.page_id)
                    return DriverActionResult(True, "dialog dismissed")
                return DriverActionResult(False, f"dialog {overlay.dialog} refuses to close")
            if self._occluded(node_id):
                return DriverActionResult(
                    False, f"node {node_id} is occluded by dialog {overlay.dialog}"
                )
        target = page.transitions.get(node_id)
        if target is not None:
            self._history.append(page.page_id)
            self._page_id = target
            return DriverActionResult(True, None, page_changed=True)
        return DriverActionResult(True, None)

    def type_text(self, node_id: int, text: str) -> DriverActionResult:
        self._require_open()
        page = self.current_page
        node = page.node(node_id)
        if node is None:
            return DriverActionResult(False, f"no node {node_id} on page {page.page_id}")
        if self._occluded(node_id):
            return DriverActionResult(
                False, f"node {node_id} is occluded by dialog {page.overlay.dialog}"
            )
        if node.role != "textbox":
            return DriverActionResult(False, f"node {node_id} ({node.role}) is not a textbox")
        self._typed[(page.page_id, node_id)] = text
        return DriverActionResult(True, None)

    def select(self, node_id: int, option: str) -> DriverActionResult:
        self._require_open()
        page = self.current_page
        node = page.node(node_id)
        if node is None:
            return DriverActionResult(False, f"no node {node_id} on page {page.page_id}")
        if self._occluded(node_id):
            return DriverActionResult(
                False, f"node {node_id} is occluded by dialog {page.overlay.dialog}"
            )
        if node.role != "combobox":
            return DriverActionResult(False, f"node {node_id} ({node.role}) is not a combobox")
        self._selected[(page.page_id, node_id)] = option
        return DriverActionResult(True, None)

    def back(self) -> DriverActionResult:
        self._require_open()
        if not self._history:
            return DriverActionResult(False, "history is empty")
        self._page_id = self._history.pop()
        return DriverActionResult(True, None, page_changed=True)

    def snapshot(self) -> Observation:
        self._require_open()
        page = self.current_page
        self._capture_seq += 1
        overlay_active = self._overlay_active()
        nodes = []
        for node in page.nodes:
            value = self._typed.get((page.page_id, node.node_id), node.value)
            value = self._selected.get((page.page_id, node.node_id), value)
            occluded_by = (
                page.overlay.dialog
                if overlay_active and self._occluded(node.node_id)
                else None
            )
            nodes.append(
                AxNode(
                    node_id=node.node_id,
                    role=node.role,
                    name=node.name,
                    value=value,
                    bounds=node.bounds,
                    occluded_by=occluded_by,
                )
            )
        return Observation(
            url=page.url,
            ax_tree=tuple(nodes),
            screenshot_ref=f"sim://{self.site.site_id}/{page.page_id}#{self._capture_seq}",
            overlay_present=overlay_active,
            capture_seq=self._capture_seq,
        )

    def page_content(self) -> PageContent:
        self._require_open()
        page = self.current_page
        self._capture_seq += 1
        return PageContent(
            markdown=page.markdown,
            screenshot_ref=f"sim://{self.site.site_id}/{page.page_id}#{self._capture_seq}",
            url=page.url,
        )

    def close(self) -> None:
        self._open = False

    # the mining layer walks link nodes; expose the origin check it needs
    def same_origin(self, url: str) -> bool:
        return urlparse(url).netloc == urlparse(self.site.origin).netloc

"""Context curation: utterance assessment and paraphrase, site-map mining
over the browser driver, and fragment injection into planner prompts."""

from __future__ import annotations

import json
import os
import re
import threading
from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import schemas
from .browser.sim import BrowserDriver
from .jsonutil import digest
from .prompting import BundleBuilder

DEFAULT_CHAR_BUDGET = 4000


class EmptyUtteranceError(Exception):
    """Nothing to assess."""


@dataclass(frozen=True)
class RefinedIntent:
    original: str
    refined: str
    quality: str  # clear | paraphrased | ambiguous
    notes: Optional[str] = None

    def __post_init__(self):
        if self.quality == "clear" and self.refined != self.original:
            raise ValueError("quality=clear requires refined == original")
        if self.quality == "ambiguous" and not self.notes:
            raise ValueError("quality=ambiguous requires notes")


@dataclass(frozen=True)
class NavigationKnowledge:
    app_id: str
    nodes: tuple[tuple[str, str, tuple[str, ...]], ...]  # (url, title, link labels)
    mined_at_seq: int
    budget_used: int

    def to_dict(self) -> dict:
        return {
            "app_id": self.app_id,
            "nodes": [
                {"url": url, "title": title, "links": list(links)}
                for url, title, links in self.nodes
            ],
            "mined_at_seq": self.mined_at_seq,
            "budget_used": self.budget_used,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NavigationKnowledge":
        return cls(
            app_id=d["app_id"],
            nodes=tuple(
                (n["url"], n["title"], tuple(n["links"])) for n in d["nodes"]
            ),
            mined_at_seq=d["mined_at_seq"],
            budget_used=d["budget_used"],
        )


@dataclass(frozen=True)
class ContextBundle:
    fragments: tuple[tuple[str, str], ...]
    provenance: tuple[str, ...]  # per fragment: sitemap | registry | utterance_notes

    def total_chars(self) -> int:
        return sum(len(label) + len(text) for label, text in self.fragments)

    def as_prompt_fragments(self) -> list[tuple[str, str]]:
        return [tuple(f) for f in self.fragments]


_ENTITY_RE = re.compile(r"\b([A-Z][a-zA-Z]*|\d+(?:\.\d+)?)\b")


def named_entities(text: str) -> set[str]:
    """Capitalized tokens and numbers; the paraphrase must keep them all."""
    return {m.group(1) for m in _ENTITY_RE.finditer(text)}


def assess_and_paraphrase(utterance: str, bundles: BundleBuilder, reasoner) -> RefinedIntent:
    if not utterance.strip():
        raise EmptyUtteranceError("utterance is empty")
    bundle = bundles.next(
        agent="context.paraphrase",
        role_preamble="You assess task requests and paraphrase unclear ones.",
        instructions=(
            f"Utterance: {utterance}\n"
            "Classify as clear, paraphrased, or ambiguous. Keep every name and "
            "number from the original."
        ),
        output_schema=schemas.PARAPHRASE_SCHEMA,
    )
    value = reasoner.complete(bundle).structured_value
    quality = value["quality"]
    refined = utterance if quality == "clear" else value["refined"]
    intent = RefinedIntent(
        original=utterance,
        refined=refined,
        quality=quality,
        notes=value.get("notes"),
    )
    if quality in ("clear", "paraphrased"):
        missing = {
            e for e in named_entities(utterance) if e.lower() not in refined.lower()
        }
        if missing:
            # refuse to drop entities: fall back to the original wording
            return RefinedIntent(
                original=utterance,
                refined=utterance,
                quality="clear",
                notes=None,
            )
    return intent


def mine_sitemap(app_entry_url: str, driver: BrowserDriver, budget: int) -> NavigationKnowledge:
    """Breadth-first walk of link-role nodes, same origin only, up to
    `budget` page visits."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    driver.navigate(app_entry_url)
    visited: dict[str, tuple[str, str, tuple[str, ...]]] = {}
    queue: deque[str] = deque([app_entry_url])
    seen_urls = {app_entry_url}
    visits = 0
    while queue and visits < budget:
        url = queue.popleft()
        driver.navigate(url)
        visits += 1
        obs = driver.snapshot()
        links = tuple(n.name for n in obs.ax_tree if n.role == "link")
        title = next((n.name for n in obs.ax_tree if n.role == "heading"), url)
        visited[url] = (url, title, links)
        for target_url in _link_targets(driver, obs):
            if target_url not in seen_urls and _same_origin(driver, target_url):
                seen_urls.add(target_url)
                queue.append(target_url)
    return NavigationKnowledge(
        app_id="",
        nodes=tuple(visited.values()),
        mined_at_seq=obs.capture_seq,
        budget_used=visits,
    )


def _link_targets(driver: BrowserDriver, obs) -> list[str]:
    # the simulator exposes its transition table; real adapters resolve hrefs
    page = getattr(driver, "current_page", None)
    site = getattr(driver, "site", None)
    if page is None or site is None:
        return []
    targets = []
    for node in obs.ax_tree:
        if node.role != "link":
            continue
        target_page = page.transitions.get(node.node_id)
        if target_page is not None:
            targets.append(site.page(target_page).url)
    return targets


def _same_origin(driver: BrowserDriver, url: str) -> bool:
    check = getattr(driver, "same_origin", None)
    if check is None:
        return True
    return check(url)


class KnowledgeStore:
    """Per-app navigation knowledge persisted as JSON files; concurrent
    reads, serialized writes per app."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, app_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(app_id, threading.Lock())

    def _path(self, app_id: str) -> str:
        return os.path.join(self.root, f"{app_id}.json")

    def put(self, app_id: str, knowledge: NavigationKnowledge) -> None:
        doc = knowledge.to_dict()
        doc["app_id"] = app_id
        with self._lock_for(app_id):
            with open(self._path(app_id), "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2)

    def get(self, app_id: str) -> Optional[NavigationKnowledge]:
        path = self._path(app_id)
        if not os.path.exists(path):
            return None
        with open(path, "r", encoding="utf-8") as fh:
            return NavigationKnowledge.from_dict(json.load(fh))

    def has(self, app_id: str) -> bool:
        return os.path.exists(self._path(app_id))


def _overlap(intent_tokens: set[str], labels: tuple[str, ...]) -> int:
    label_tokens = set()
    for label in labels:
        label_tokens.update(re.findall(r"[a-z0-9]+", label.lower()))
    return len(intent_tokens & label_tokens)


def enrich(
    intent: RefinedIntent,
    task,
    knowledge: dict[str, NavigationKnowledge],
    registry=None,
    char_budget: int = DEFAULT_CHAR_BUDGET,
) -> ContextBundle:
    """Sitemap fragments for in-scope apps whose link labels overlap the
    refined intent, plus registry app titles; lowest-overlap fragments are
    dropped first when over budget."""
    intent_tokens = set(re.findall(r"[a-z0-9]+", intent.refined.lower()))
    candidates: list[tuple[int, str, str, str]] = []  # (overlap, label, text, source)
    for app_id in task.apps_in_scope:
        nav = knowledge.get(app_id)
        if nav is None:
            continue
        for url, title, links in nav.nodes:
            overlap = _overlap(intent_tokens, links + (title,))
            if overlap <= 0:
                continue
            text = f"{title} ({url}) links: {', '.join(links)}"
            candidates.append((overlap, f"sitemap:{app_id}:{title}", text, "sitemap"))
    if registry is not None:
        titles = []
        for app_id in task.apps_in_scope:
            try:
                manifest = registry.manifest(app_id)
            except KeyError:
                continue
            titles.append(f"{app_id}: {manifest.title}")
        if titles:
            candidates.append((10**6, "registry:apps", "; ".join(titles), "registry"))
    if intent.quality == "ambiguous" and intent.notes:
        candidates.append((10**6, "utterance:notes", intent.notes, "utterance_notes"))
    candidates.sort(key=lambda c: (-c[0], c[1]))
    fragments: list[tuple[str, str]] = []
    provenance: list[str] = []
    seen: set[tuple[str, str]] = set()
    used = 0
    for _overlap_score, label, text, source in candidates:
        key = (label, digest(text))
        if key in seen:
            continue
        if used + len(label) + len(text) > char_budget:
            continue
        seen.add(key)
        fragments.append((label, text))
        provenance.append(source)
        used += len(label) + len(text)
    return ContextBundle(fragments=tuple(fragments), provenance=tuple(provenance))

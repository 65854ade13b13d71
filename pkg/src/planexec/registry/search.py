"""Two-stage lexical ranking: applications first, then operations within
the leading applications. Deterministic under the tie rule."""

from __future__ import annotations

import math
import re
from collections import Counter

from .model import AppManifest, SearchHit, ToolSpec

TOP_APPS = 3

_TOKEN_RE = re.compile(r"[a-z0-9]+")

_STOPWORDS = frozenset(
    "a an and are as at be but by for from has have in into is it its of on "
    "or that the their this to was were will with".split()
)


def tokenize(text: str) -> list[str]:
    return [
        t
        for t in _TOKEN_RE.findall(text.lower().replace("_", " "))
        if t not in _STOPWORDS
    ]


def tool_document(tool: ToolSpec) -> list[str]:
    parts = [tool.summary, tool.operation_key, tool.path]
    for p in tool.params:
        parts.append(p.name)
        parts.append(p.description)
    return tokenize(" ".join(parts))


def app_document(manifest: AppManifest) -> list[str]:
    return tokenize(f"{manifest.app_id} {manifest.title} {manifest.description}")


class SearchIndex:
    """Term statistics over the registered tools, rebuilt after each ingest."""

    def __init__(self, manifests: dict[str, AppManifest]):
        self.tool_docs: dict[str, Counter[str]] = {}
        self.app_docs: dict[str, Counter[str]] = {}
        self.tools: dict[str, ToolSpec] = {}
        df: Counter[str] = Counter()
        for app_id, manifest in manifests.items():
            self.app_docs[app_id] = Counter(app_document(manifest))
            for tool in manifest.tools:
                doc = Counter(tool_document(tool))
                self.tool_docs[tool.tool_id] = doc
                self.tools[tool.tool_id] = tool
                df.update(set(doc))
        n = max(1, len(self.tool_docs))
        self.idf = {t: math.log(1.0 + n / (1.0 + df[t])) for t in df}

    def tool_score(self, query_tokens: list[str], tool_id: str) -> float:
        doc = self.tool_docs[tool_id]
        score = 0.0
        for token in set(query_tokens):
            tf = doc.get(token, 0)
            if tf:
                score += self.idf.get(token, 1.0) * (1.0 + 0.25 * min(tf - 1, 3))
        return score

    def app_score(self, query_tokens: list[str], app_id: str, manifest: AppManifest) -> float:
        total = sum(self.tool_score(query_tokens, t.tool_id) for t in manifest.tools)
        app_doc = self.app_docs[app_id]
        for token in set(query_tokens):
            if token in app_doc:
                total += self.idf.get(token, 1.0)
        return total


def search_index(
    index: SearchIndex,
    manifests: dict[str, AppManifest],
    query: str,
    scope: str | None,
    k: int,
) -> list[SearchHit]:
    if k < 1:
        raise ValueError("k must be >= 1")
    query_tokens = tokenize(query)
    if scope is not None:
        candidates = {scope: manifests[scope]} if scope in manifests else {}
        ranked_apps = [(scope, 0.0)] if candidates else []
    else:
        scored = [
            (app_id, index.app_score(query_tokens, app_id, manifest))
            for app_id, manifest in manifests.items()
        ]
        scored = [(a, s) for a, s in scored if s > 0.0]
        scored.sort(key=lambda pair: (-pair[1], pair[0]))
        ranked_apps = scored[:TOP_APPS]
        candidates = {a: manifests[a] for a, _ in ranked_apps}
    app_rank = {a: i for i, (a, _) in enumerate(ranked_apps)}
    hits: list[SearchHit] = []
    for app_id, manifest in candidates.items():
        for tool in manifest.tools:
            score = index.tool_score(query_tokens, tool.tool_id)
            if score <= 0.0:
                continue
            hits.append(
                SearchHit(
                    tool_id=tool.tool_id,
                    score=round(score, 6),
                    app_rank=app_rank.get(app_id, 0),
                    snippet=tool.summary[:100],
                )
            )
    hits.sort(key=lambda h: (-h.score, h.tool_id))
    return hits[:k]

"""The registry facade: onboarding, lookup, search, and invocation."""

from __future__ import annotations

import threading
from typing import Any

from ..jsonutil import canonical_json
from .gateway import HttpTransport, Transport, invoke_tool
from .ingest import build_manifest
from .model import (
    AppManifest,
    DuplicateAppError,
    EmptyRegistryError,
    SearchHit,
    ToolResponse,
    ToolSpec,
    UnknownToolError,
)
from .search import SearchIndex, search_index


class ApiRegistry:
    def __init__(self, default_transport: Transport | None = None):
        self._manifests: dict[str, AppManifest] = {}
        self._tools: dict[str, ToolSpec] = {}
        self._transports: dict[str, Transport] = {}
        self._default_transport = default_transport or HttpTransport()
        self._index: SearchIndex | None = None
        self._write_lock = threading.Lock()

    def ingest_spec(
        self,
        document: str,
        app_id: str,
        base_url: str,
        transport: Transport | None = None,
    ) -> AppManifest:
        with self._write_lock:
            if app_id in self._manifests:
                raise DuplicateAppError(f"app {app_id!r} already registered")
            manifest = build_manifest(document, app_id, base_url)
            self._manifests[app_id] = manifest
            for tool in manifest.tools:
                self._tools[tool.tool_id] = tool
            if transport is not None:
                self._transports[app_id] = transport
            self._index = None
        return manifest

    def register_manifest(self, manifest: AppManifest, transport: Transport | None = None) -> None:
        with self._write_lock:
            if manifest.app_id in self._manifests:
                raise DuplicateAppError(f"app {manifest.app_id!r} already registered")
            self._manifests[manifest.app_id] = manifest
            for tool in manifest.tools:
                self._tools[tool.tool_id] = tool
            if transport is not None:
                self._transports[manifest.app_id] = transport
            self._index = None

    def set_transport(self, app_id: str, transport: Transport) -> None:
        self._transports[app_id] = transport

    @property
    def app_ids(self) -> list[str]:
        return sorted(self._manifests)

    def manifest(self, app_id: str) -> AppManifest:
        return self._manifests[app_id]

    def has_tool(self, tool_id: str) -> bool:
        return tool_id in self._tools

    def tool(self, tool_id: str) -> ToolSpec:
        try:
            return self._tools[tool_id]
        except KeyError:
            raise UnknownToolError(f"unknown tool {tool_id!r}") from None

    def tools_for_apps(self, app_ids: list[str]) -> list[ToolSpec]:
        out: list[ToolSpec] = []
        for app_id in app_ids:
            manifest = self._manifests.get(app_id)
            if manifest:
                out.extend(manifest.tools)
        return out

    def _ensure_index(self) -> SearchIndex:
        index = self._index
        if index is None:
            index = SearchIndex(self._manifests)
            self._index = index
        return index

    def search(self, query: str, scope: str | None = None, k: int = 8) -> list[SearchHit]:
        if not self._manifests:
            raise EmptyRegistryError("no applications registered")
        return search_index(self._ensure_index(), self._manifests, query, scope, k)

    def invoke(self, tool_id: str, args: dict[str, Any]) -> ToolResponse:
        tool = self.tool(tool_id)
        app_id = tool.app_id
        manifest = self._manifests[app_id]
        transport = self._transports.get(app_id, self._default_transport)
        return invoke_tool(tool, manifest.base_url, args, transport)

    def export_text(self) -> str:
        """Deterministic dump of all manifests for diffing."""
        payload = [self._manifests[a].to_dict() for a in sorted(self._manifests)]
        return canonical_json(payload)

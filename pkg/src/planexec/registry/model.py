"""Registry domain types and errors."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Optional

SUMMARY_CAP = 200
PARAM_DESC_CAP = 80


class SpecParseError(Exception):
    """The document is not a usable OpenAPI v3 description."""


class DuplicateAppError(Exception):
    """An app with this id is already registered."""


class UnresolvableRefError(Exception):
    """A $ref points nowhere we can follow."""


class EmptyRegistryError(Exception):
    """Search over a registry with no applications."""


class UnknownToolError(Exception):
    """No tool with this id is registered."""


class ArgValidationError(Exception):
    """Invocation arguments do not satisfy the tool's parameters."""

    def __init__(self, param: str, message: str):
        super().__init__(message)
        self.param = param


def truncate(text: str, cap: int) -> str:
    if len(text) <= cap:
        return text
    return text[: cap - 1] + "…"


@dataclass(frozen=True)
class ToolParam:
    name: str
    location: str  # path | query | body
    type_tag: str
    required: bool
    description: str = ""

    def __post_init__(self):
        if self.location not in ("path", "query", "body"):
            raise ValueError(f"bad param location: {self.location!r}")
        object.__setattr__(self, "description", truncate(self.description, PARAM_DESC_CAP))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "location": self.location,
            "type_tag": self.type_tag,
            "required": self.required,
            "description": self.description,
        }


@dataclass(frozen=True)
class ToolSpec:
    tool_id: str
    method: str
    path: str
    summary: str
    params: tuple[ToolParam, ...]
    response_fields: tuple[tuple[str, str], ...]  # (dotted path, type_tag)

    def __post_init__(self):
        object.__setattr__(self, "summary", truncate(self.summary, SUMMARY_CAP))
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "response_fields", tuple(tuple(f) for f in self.response_fields))
        path_params = {p.name for p in self.params if p.location == "path"}
        templated = set(re.findall(r"\{([^{}]+)\}", self.path))
        missing = templated - path_params
        if missing:
            raise ValueError(f"path params not declared: {sorted(missing)}")

    @property
    def app_id(self) -> str:
        return self.tool_id.split(".", 1)[0]

    @property
    def operation_key(self) -> str:
        return self.tool_id.split(".", 1)[1]

    def required_params(self) -> list[ToolParam]:
        return [p for p in self.params if p.required]

    def to_dict(self) -> dict:
        return {
            "tool_id": self.tool_id,
            "method": self.method,
            "path": self.path,
            "summary": self.summary,
            "params": [p.to_dict() for p in self.params],
            "response_fields": [list(f) for f in self.response_fields],
        }


@dataclass(frozen=True)
class AppManifest:
    app_id: str
    title: str
    description: str
    base_url: str
    tools: tuple[ToolSpec, ...]
    source_digest: str

    def __post_init__(self):
        object.__setattr__(self, "tools", tuple(self.tools))

    def to_dict(self) -> dict:
        return {
            "app_id": self.app_id,
            "title": self.title,
            "description": self.description,
            "base_url": self.base_url,
            "tools": [t.to_dict() for t in self.tools],
            "source_digest": self.source_digest,
        }


@dataclass(frozen=True)
class SearchHit:
    tool_id: str
    score: float
    app_rank: int
    snippet: str


@dataclass(frozen=True)
class ToolResponse:
    status_code: int
    body: Any
    latency_ms: float
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and 200 <= self.status_code < 300

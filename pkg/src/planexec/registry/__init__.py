"""Application onboarding from OpenAPI documents, minimized tool specs,
hierarchical search, and a uniform invocation gateway."""

from .model import (
    AppManifest,
    ArgValidationError,
    DuplicateAppError,
    EmptyRegistryError,
    SearchHit,
    SpecParseError,
    ToolParam,
    ToolResponse,
    ToolSpec,
    UnknownToolError,
    UnresolvableRefError,
)
from .registry import ApiRegistry
from .gateway import HttpTransport, MockTransport, TransportError
from .mockserver import MockServer, serve_http

__all__ = [
    "ApiRegistry",
    "AppManifest",
    "ArgValidationError",
    "DuplicateAppError",
    "EmptyRegistryError",
    "HttpTransport",
    "MockServer",
    "MockTransport",
    "SearchHit",
    "SpecParseError",
    "ToolParam",
    "ToolResponse",
    "ToolSpec",
    "TransportError",
    "UnknownToolError",
    "UnresolvableRefError",
    "serve_http",
]

"""Tool invocation: argument validation, request building, transports."""

from __future__ import annotations

import time
import urllib.parse
from typing import Any, Protocol

from ..variables import type_tag_of
from .model import ArgValidationError, ToolResponse, ToolSpec


class TransportError(Exception):
    """The request never produced an HTTP response."""


class Transport(Protocol):
    def request(
        self, method: str, url: str, query: dict[str, Any], body: Any | None
    ) -> tuple[int, Any]: ...


_COMPATIBLE = {
    "number": {"number"},
    "string": {"string"},
    "boolean": {"boolean"},
    "list": {"list"},
    "record": {"record"},
    "null": {"null"},
}


def validate_args(tool: ToolSpec, args: dict[str, Any]) -> None:
    declared = {p.name: p for p in tool.params}
    for name in args:
        if name not in declared:
            raise ArgValidationError(name, f"unknown parameter {name!r} for {tool.tool_id}")
    for param in tool.params:
        if param.required and param.name not in args:
            raise ArgValidationError(
                param.name, f"missing required parameter {param.name!r} for {tool.tool_id}"
            )
        if param.name in args:
            tag = type_tag_of(args[param.name])
            if tag != "null" and tag not in _COMPATIBLE.get(param.type_tag, {param.type_tag}):
                raise ArgValidationError(
                    param.name,
                    f"parameter {param.name!r} expects {param.type_tag}, got {tag}",
                )


def build_request(
    tool: ToolSpec, base_url: str, args: dict[str, Any]
) -> tuple[str, str, dict[str, Any], Any]:
    """Returns (method, url, query, body) for the transport."""
    path = tool.path
    query: dict[str, Any] = {}
    body: dict[str, Any] = {}
    for param in tool.params:
        if param.name not in args:
            continue
        value = args[param.name]
        if param.location == "path":
            path = path.replace(
                "{" + param.name + "}", urllib.parse.quote(str(value), safe="")
            )
        elif param.location == "query":
            query[param.name] = value
        else:
            body[param.name] = value
    url = base_url.rstrip("/") + path
    return tool.method, url, query, (body or None)


def invoke_tool(
    tool: ToolSpec, base_url: str, args: dict[str, Any], transport: Transport
) -> ToolResponse:
    validate_args(tool, args)
    method, url, query, body = build_request(tool, base_url, args)
    start = time.perf_counter()
    try:
        status, payload = transport.request(method, url, query, body)
    except TransportError as exc:
        latency = (time.perf_counter() - start) * 1000.0
        return ToolResponse(status_code=0, body=None, latency_ms=latency, error=f"transport: {exc}")
    latency = (time.perf_counter() - start) * 1000.0
    error = None
    if not 200 <= status < 300:
        error = f"HTTP {status}"
        if isinstance(payload, dict) and payload.get("error"):
            error += f": {payload['error']}"
    return ToolResponse(status_code=status, body=payload, latency_ms=latency, error=error)


class HttpTransport:
    """Plain HTTP via httpx. Per-app auth headers pass through untouched."""

    def __init__(self, headers: dict[str, str] | None = None, timeout: float = 30.0):
        self.headers = dict(headers or {})
        self.timeout = timeout

    def request(self, method, url, query, body):
        import httpx

        try:
            resp = httpx.request(
                method,
                url,
                params=query or None,
                json=body,
                headers=self.headers or None,
                timeout=self.timeout,
            )
        except httpx.HTTPError as exc:
            raise TransportError(str(exc)) from exc
        try:
            payload = resp.json()
        except ValueError:
            payload = resp.text
        return resp.status_code, payload


class MockTransport:
    """Routes requests to an in-process mock server, no sockets involved."""

    def __init__(self, server):
        self.server = server

    def request(self, method, url, query, body):
        parsed = urllib.parse.urlparse(url)
        return self.server.handle(method, parsed.path, query or {}, body)

"""Deterministic in-process mock application servers.

One MockServer backs one application: routes come from its manifest, and
responses are either custom handlers (fixture data) or structures
synthesized from the tool's response fields. The same server object can be
exposed over real HTTP for wire-level tests.
"""

from __future__ import annotations

import json
import threading
import urllib.parse
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any, Callable

from .model import AppManifest, ToolSpec

Handler = Callable[[dict[str, Any]], Any]


def _sample_leaf(type_tag: str, name: str) -> Any:
    if type_tag == "number":
        return 1
    if type_tag == "boolean":
        return True
    if type_tag == "list":
        return []
    if type_tag == "record":
        return {}
    if type_tag == "null":
        return None
    return f"{name}-sample"


def synthesize_response(tool: ToolSpec) -> Any:
    """Build a body with every advertised response field present."""
    if not tool.response_fields:
        return {"ok": True}
    root: dict[str, Any] = {}
    field_tags = dict(tool.response_fields)

    def ensure(container: dict, segments: list[str], tag: str, full_path: str):
        head = segments[0]
        is_list = head.endswith("[]")
        key = head[:-2] if is_list else head
        if len(segments) == 1:
            if is_list:
                container.setdefault(key, [])
            else:
                container.setdefault(key, _sample_leaf(tag, key))
            return
        if is_list:
            lst = container.setdefault(key, [])
            if not lst or not isinstance(lst[0], dict):
                lst.clear()
                lst.append({})
            ensure(lst[0], segments[1:], tag, full_path)
        else:
            sub = container.setdefault(key, {})
            if not isinstance(sub, dict):
                sub = {}
                container[key] = sub
            ensure(sub, segments[1:], tag, full_path)

    for path, tag in tool.response_fields:
        segments = path.split(".")
        ensure(root, segments, tag, path)
    # containers noted as lists of records get a second element for realism
    def duplicate_lists(node: Any):
        if isinstance(node, dict):
            for v in node.values():
                duplicate_lists(v)
        elif isinstance(node, list) and len(node) == 1 and isinstance(node[0], dict):
            node.append(json.loads(json.dumps(node[0])))
    duplicate_lists(root)
    return root


class MockServer:
    """Request handler for one application's manifest."""

    def __init__(self, manifest: AppManifest):
        self.manifest = manifest
        self.app_id = manifest.app_id
        self._base_path = urllib.parse.urlparse(manifest.base_url).path.rstrip("/")
        self._handlers: dict[str, Handler] = {}
        self._forced: dict[str, tuple[int, Any]] = {}
        self._routes: list[tuple[str, list[str], ToolSpec]] = []
        for tool in manifest.tools:
            segments = [s for s in tool.path.split("/") if s]
            self._routes.append((tool.method, segments, tool))

    def set_handler(self, tool_id: str, handler: Handler) -> None:
        self._handlers[tool_id] = handler

    def force_response(self, tool_id: str, status: int, body: Any = None) -> None:
        self._forced[tool_id] = (status, body if body is not None else {"error": "forced"})

    def clear_forced(self, tool_id: str) -> None:
        self._forced.pop(tool_id, None)

    def _match(self, method: str, path: str) -> tuple[ToolSpec, dict[str, str]] | None:
        if self._base_path and path.startswith(self._base_path):
            path = path[len(self._base_path) :]
        segments = [s for s in path.split("/") if s]
        best = None
        for m, template, tool in self._routes:
            if m != method.upper() or len(template) != len(segments):
                continue
            captured: dict[str, str] = {}
            literals = 0
            ok = True
            for t_seg, seg in zip(template, segments):
                if t_seg.startswith("{") and t_seg.endswith("}"):
                    captured[t_seg[1:-1]] = urllib.parse.unquote(seg)
                else:
                    if t_seg != seg:
                        ok = False
                        break
                    literals += 1
            if ok and (best is None or literals > best[0]):
                best = (literals, tool, captured)
        if best is None:
            return None
        return best[1], best[2]

    def handle(
        self, method: str, path: str, query: dict[str, Any], body: Any
    ) -> tuple[int, Any]:
        matched = self._match(method, path)
        if matched is None:
            return 404, {"error": f"no route for {method} {path}"}
        tool, path_args = matched
        args: dict[str, Any] = {}
        declared = {p.name: p for p in tool.params}
        for name, raw in path_args.items():
            param = declared.get(name)
            if param is not None and param.type_tag == "number":
                try:
                    args[name] = int(raw) if raw.lstrip("-").isdigit() else float(raw)
                except ValueError:
                    return 400, {"error": f"parameter {name!r} must be a number"}
            else:
                args[name] = raw
        args.update(query)
        if isinstance(body, dict):
            args.update(body)
        for param in tool.params:
            if param.required and param.name not in args:
                return 400, {"error": f"missing required parameter {param.name!r}"}
        if tool.tool_id in self._forced:
            return self._forced[tool.tool_id]
        handler = self._handlers.get(tool.tool_id)
        if handler is not None:
            out = handler(args)
            if isinstance(out, tuple):
                return out
            return 200, out
        return 200, synthesize_response(tool)


class _HttpBridge(BaseHTTPRequestHandler):
    server_version = "MockApp/1.0"
    mock: MockServer = None  # set by serve_http

    def _dispatch(self, method: str):
        parsed = urllib.parse.urlparse(self.path)
        query = {k: v[0] for k, v in urllib.parse.parse_qs(parsed.query).items()}
        body = None
        length = int(self.headers.get("Content-Length") or 0)
        if length:
            try:
                body = json.loads(self.rfile.read(length))
            except json.JSONDecodeError:
                self._reply(400, {"error": "body is not valid JSON"})
                return
        status, payload = self.mock.handle(method, parsed.path, query, body)
        self._reply(status, payload)

    def _reply(self, status: int, payload: Any):
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_PUT(self):
        self._dispatch("PUT")

    def do_DELETE(self):
        self._dispatch("DELETE")

    def do_PATCH(self):
        self._dispatch("PATCH")

    def log_message(self, fmt, *args):
        pass  # keep test output quiet


def serve_http(mock: MockServer, port: int = 0):
    """Expose a mock server over loopback HTTP; returns (httpd, base_url)."""
    handler = type("BoundBridge", (_HttpBridge,), {"mock": mock})
    httpd = ThreadingHTTPServer(("127.0.0.1", port), handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    base_url = f"http://127.0.0.1:{httpd.server_address[1]}"
    return httpd, base_url

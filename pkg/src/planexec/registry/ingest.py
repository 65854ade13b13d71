"""OpenAPI v3 subset ingestion and operation minimization.

Minimization keeps what an invocation needs (method, path, params,
response field paths) and drops servers, security, examples, vendor
extensions, and long prose beyond the caps.
"""

from __future__ import annotations

import re
from typing import Any

import yaml

from ..jsonutil import sha256_hex
from .model import (
    AppManifest,
    SpecParseError,
    ToolParam,
    ToolSpec,
    UnresolvableRefError,
    truncate,
    PARAM_DESC_CAP,
    SUMMARY_CAP,
)

HTTP_METHODS = ("get", "put", "post", "delete", "patch")

_TYPE_TAGS = {
    "string": "string",
    "integer": "number",
    "number": "number",
    "boolean": "boolean",
    "array": "list",
    "object": "record",
}

RESPONSE_FLATTEN_DEPTH = 4


def _resolve_ref(doc: dict, node: Any, seen: tuple[str, ...] = ()) -> Any:
    """Follow internal $ref pointers; external refs are unsupported."""
    while isinstance(node, dict) and "$ref" in node:
        ref = node["$ref"]
        if not isinstance(ref, str) or not ref.startswith("#/"):
            raise UnresolvableRefError(f"unsupported reference: {ref!r}")
        if ref in seen:
            raise UnresolvableRefError(f"reference cycle at {ref!r}")
        seen = seen + (ref,)
        target: Any = doc
        for part in ref[2:].split("/"):
            part = part.replace("~1", "/").replace("~0", "~")
            if not isinstance(target, dict) or part not in target:
                raise UnresolvableRefError(f"dangling reference: {ref!r}")
            target = target[part]
        node = target
    return node


def _schema_type_tag(schema: dict) -> str:
    t = schema.get("type")
    if t is None:
        if "properties" in schema:
            t = "object"
        elif "items" in schema:
            t = "array"
        else:
            return "record"
    return _TYPE_TAGS.get(t, "record")


def _flatten_response_fields(
    doc: dict, schema: Any, prefix: str = "", depth: int = 0
) -> list[tuple[str, str]]:
    if depth > RESPONSE_FLATTEN_DEPTH or not isinstance(schema, dict):
        return []
    schema = _resolve_ref(doc, schema)
    tag = _schema_type_tag(schema)
    fields: list[tuple[str, str]] = []
    if tag == "record":
        props = schema.get("properties", {})
        for name in props:
            sub = _resolve_ref(doc, props[name])
            path = f"{prefix}.{name}" if prefix else name
            fields.append((path, _schema_type_tag(sub)))
            fields.extend(_flatten_response_fields(doc, sub, path, depth + 1))
    elif tag == "list":
        items = schema.get("items")
        if items is not None:
            path = f"{prefix}[]" if prefix else "[]"
            sub = _resolve_ref(doc, items)
            fields.extend(_flatten_response_fields(doc, sub, path, depth + 1))
    elif prefix:
        pass  # scalar leaf already recorded by the caller
    return fields


def _success_response_schema(doc: dict, operation: dict) -> Any:
    responses = operation.get("responses", {})
    for code in sorted(responses):
        if str(code).startswith("2") or str(code) == "default":
            resp = _resolve_ref(doc, responses[code])
            content = resp.get("content", {})
            media = content.get("application/json") or next(iter(content.values()), None)
            if media and "schema" in media:
                return media["schema"]
    return None


def minimize(doc: dict, app_id: str, path: str, method: str, operation: dict) -> ToolSpec:
    """Boil one operation down to the fields an agent needs to call it."""
    operation = _resolve_ref(doc, operation)
    op_key = operation.get("operationId") or _slug(method, path)
    summary = operation.get("summary") or operation.get("description") or op_key
    params: list[ToolParam] = []
    for raw in operation.get("parameters", []):
        raw = _resolve_ref(doc, raw)
        location = raw.get("in")
        if location not in ("path", "query"):
            continue  # headers/cookies are transport concerns, not tool semantics
        schema = _resolve_ref(doc, raw.get("schema", {}))
        params.append(
            ToolParam(
                name=raw["name"],
                location=location,
                type_tag=_schema_type_tag(schema),
                required=bool(raw.get("required", location == "path")),
                description=truncate(raw.get("description", ""), PARAM_DESC_CAP),
            )
        )
    body = operation.get("requestBody")
    if body:
        body = _resolve_ref(doc, body)
        content = body.get("content", {})
        media = content.get("application/json") or next(iter(content.values()), None)
        if media and "schema" in media:
            schema = _resolve_ref(doc, media["schema"])
            required = set(schema.get("required", []))
            props = schema.get("properties")
            if props:
                for name in props:
                    sub = _resolve_ref(doc, props[name])
                    params.append(
                        ToolParam(
                            name=name,
                            location="body",
                            type_tag=_schema_type_tag(sub),
                            required=name in required,
                            description=truncate(sub.get("description", ""), PARAM_DESC_CAP),
                        )
                    )
            else:
                params.append(
                    ToolParam(name="body", location="body", type_tag=_schema_type_tag(schema), required=bool(body.get("required", False)))
                )
    response_fields: list[tuple[str, str]] = []
    resp_schema = _success_response_schema(doc, operation)
    if resp_schema is not None:
        response_fields = _flatten_response_fields(doc, resp_schema)
    return ToolSpec(
        tool_id=f"{app_id}.{op_key}",
        method=method.upper(),
        path=path,
        summary=truncate(summary, SUMMARY_CAP),
        params=tuple(params),
        response_fields=tuple(response_fields),
    )


def _slug(method: str, path: str) -> str:
    parts = [method.lower()] + [
        re.sub(r"[{}]", "", seg) for seg in path.strip("/").split("/") if seg
    ]
    return "_".join(re.sub(r"[^A-Za-z0-9]+", "_", p).strip("_") for p in parts if p)


def parse_document(document: str) -> dict:
    try:
        doc = yaml.safe_load(document)
    except yaml.YAMLError as exc:
        raise SpecParseError(f"document does not parse: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecParseError("document is not a mapping")
    version = str(doc.get("openapi", ""))
    if not version.startswith("3"):
        raise SpecParseError(f"unsupported OpenAPI version: {version or 'missing'}")
    return doc


def build_manifest(document: str, app_id: str, base_url: str) -> AppManifest:
    doc = parse_document(document)
    paths = doc.get("paths") or {}
    tools: list[ToolSpec] = []
    for path in paths:
        item = _resolve_ref(doc, paths[path])
        for method in HTTP_METHODS:
            if method in item:
                tools.append(minimize(doc, app_id, path, method, item[method]))
    if not tools:
        raise SpecParseError("no operations")
    info = doc.get("info", {})
    return AppManifest(
        app_id=app_id,
        title=info.get("title", app_id),
        description=truncate(info.get("description", ""), SUMMARY_CAP),
        base_url=base_url.rstrip("/"),
        tools=tuple(tools),
        source_digest=sha256_hex(document),
    )


def iter_source_operations(document: str) -> list[dict]:
    """Raw (unminimized) operation objects, for size accounting."""
    doc = parse_document(document)
    ops = []
    for path, item in (doc.get("paths") or {}).items():
        item = _resolve_ref(doc, item)
        for method in HTTP_METHODS:
            if method in item:
                ops.append(item[method])
    return ops

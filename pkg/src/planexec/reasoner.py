"""Uniform gateway to language-model backends.

Two backends: a remote chat-completion HTTP backend, and a deterministic
scripted backend replaying canned structured outputs keyed by prompt
fingerprints (used for tests and replay). All outputs are validated against
a JSON-schema descriptor before they leave the gateway.
"""

from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import dataclass, field
from typing import Any, Callable

import jsonschema

from .jsonutil import canonical_json, sha256_hex

DEFAULT_RETRY_BUDGET = 2
DEFAULT_INFLIGHT_CAP = 8
FINGERPRINT_LEN = 32


class SchemaViolationError(Exception):
    """Backend output failed schema validation after the retry budget."""


class ScriptMissError(Exception):
    """Scripted backend has no entry for a fingerprint and no default."""


class TransportError(Exception):
    """The remote backend could not be reached or returned garbage."""


@dataclass(frozen=True)
class PromptBundle:
    """Everything one reasoner call needs, plus a stable step fingerprint."""

    agent: str
    task_id: str
    cursor: int
    role_preamble: str
    instructions: str
    context_fragments: tuple[tuple[str, str], ...]
    output_schema: dict
    step_fingerprint: str = field(default="")

    def __post_init__(self):
        if not self.output_schema:
            raise ValueError("output_schema must be nonempty")
        object.__setattr__(self, "context_fragments", tuple(tuple(f) for f in self.context_fragments))
        object.__setattr__(self, "step_fingerprint", fingerprint(self))


def fingerprint(bundle: PromptBundle) -> str:
    """Stable hash of (agent, task id, cursor, digest of the assembled prompt).

    Fragment order is semantic, so the digest hashes the ordered sequence.
    """
    prompt_digest = sha256_hex(
        canonical_json(
            [
                bundle.role_preamble,
                bundle.instructions,
                [list(f) for f in bundle.context_fragments],
                bundle.output_schema,
            ]
        )
    )
    key = canonical_json([bundle.agent, bundle.task_id, bundle.cursor, prompt_digest])
    return sha256_hex(key)[:FINGERPRINT_LEN]


@dataclass(frozen=True)
class ReasonerOutput:
    structured_value: Any
    raw_text: str
    attempt_count: int
    backend_id: str


@dataclass(frozen=True)
class BackendConfig:
    kind: str  # "remote_chat" | "scripted"
    endpoint: str | None = None
    model_name: str | None = None
    temperature: float = 0.0
    max_tokens: int = 2048
    script_path: str | None = None
    retry_budget: int = DEFAULT_RETRY_BUDGET
    api_key_env: str = "AGENT_CHAT_API_KEY"

    def __post_init__(self):
        if self.kind == "remote_chat" and not self.endpoint:
            raise ValueError("remote_chat backend requires an endpoint")
        if self.kind == "scripted" and not self.script_path:
            raise ValueError("scripted backend requires a script_path")
        if self.kind not in ("remote_chat", "scripted"):
            raise ValueError(f"unknown backend kind: {self.kind!r}")


def validate_structured(value: Any, schema: dict) -> str | None:
    """Return None when valid, else a description of the first violation."""
    try:
        jsonschema.validate(value, schema)
        return None
    except jsonschema.ValidationError as exc:
        return f"{'/'.join(str(p) for p in exc.absolute_path) or '<root>'}: {exc.message}"


class Script:
    """Canned structured outputs: exact fingerprint entries, per-agent
    ordered sequences (assigned to fingerprints in arrival order, then
    memoized so replay stays pure), and an optional wildcard default.
    """

    def __init__(
        self,
        entries: dict[str, Any] | None = None,
        sequences: dict[str, list[Any]] | None = None,
        default: Any = None,
    ):
        self.entries = dict(entries or {})
        self.sequences = {k: list(v) for k, v in (sequences or {}).items()}
        self.default = default

    @classmethod
    def load(cls, path: str) -> "Script":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return cls(doc.get("entries"), doc.get("sequences"), doc.get("default"))

    def dump(self, path: str) -> None:
        doc = {"entries": self.entries, "sequences": self.sequences, "default": self.default}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)


class ScriptedBackend:
    """Pure function of the fingerprint: same bundle, same output, always."""

    backend_id = "scripted"

    def __init__(self, script: Script):
        self.script = script
        self._assigned: dict[str, Any] = {}
        self._seq_pos: dict[str, int] = {}
        self._lock = threading.Lock()

    def complete(self, bundle: PromptBundle) -> ReasonerOutput:
        value = self._lookup(bundle)
        err = validate_structured(value, bundle.output_schema)
        if err is not None:
            raise SchemaViolationError(
                f"scripted entry for {bundle.step_fingerprint} is schema-invalid: {err}"
            )
        return ReasonerOutput(
            structured_value=value,
            raw_text=canonical_json(value),
            attempt_count=1,
            backend_id=self.backend_id,
        )

    def _lookup(self, bundle: PromptBundle) -> Any:
        fp = bundle.step_fingerprint
        if fp in self.script.entries:
            return self.script.entries[fp]
        with self._lock:
            if fp in self._assigned:
                return self._assigned[fp]
            seq = self.script.sequences.get(bundle.agent)
            if seq is not None:
                pos = self._seq_pos.get(bundle.agent, 0)
                if pos < len(seq):
                    self._seq_pos[bundle.agent] = pos + 1
                    self._assigned[fp] = seq[pos]
                    return seq[pos]
        if self.script.default is not None:
            return self.script.default
        raise ScriptMissError(
            f"no scripted entry for agent {bundle.agent!r} fingerprint {fp}"
        )


def _render_messages(bundle: PromptBundle) -> list[dict]:
    parts = [bundle.instructions]
    for label, text in bundle.context_fragments:
        parts.append(f"## {label}\n{text}")
    parts.append(
        "Respond with a single JSON value matching this schema:\n"
        + json.dumps(bundle.output_schema, indent=2)
    )
    return [
        {"role": "system", "content": bundle.role_preamble},
        {"role": "user", "content": "\n\n".join(parts)},
    ]


_FENCE_RE = re.compile(r"^```(?:json)?\s*|\s*```$", re.MULTILINE)


def parse_structured_text(text: str) -> Any:
    """Parse a JSON value out of assistant text, tolerating code fences."""
    cleaned = _FENCE_RE.sub("", text).strip()
    return json.loads(cleaned)


class RemoteChatBackend:
    """Chat-completion HTTP backend with schema-repair retries.

    POSTs {model, messages, temperature, max_tokens}; expects the assistant
    text at choices[0].message.content. A transport callable can be injected
    for tests; the default uses httpx. At most `inflight_cap` requests are
    in flight at once.
    """

    def __init__(
        self,
        config: BackendConfig,
        transport: Callable[[dict], dict] | None = None,
        inflight_cap: int = DEFAULT_INFLIGHT_CAP,
    ):
        self.config = config
        self.backend_id = f"remote:{config.model_name or 'default'}"
        self._transport = transport or self._http_transport
        self._slots = threading.Semaphore(inflight_cap)

    def _http_transport(self, payload: dict) -> dict:
        import httpx

        headers = {}
        api_key = os.environ.get(self.config.api_key_env, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        try:
            resp = httpx.post(self.config.endpoint, json=payload, headers=headers, timeout=120)
        except httpx.HTTPError as exc:
            raise TransportError(str(exc)) from exc
        if resp.status_code != 200:
            raise TransportError(f"chat endpoint returned {resp.status_code}")
        return resp.json()

    def complete(self, bundle: PromptBundle) -> ReasonerOutput:
        messages = _render_messages(bundle)
        last_err = "no attempts made"
        for attempt in range(1, self.config.retry_budget + 2):
            payload = {
                "model": self.config.model_name,
                "messages": messages,
                "temperature": self.config.temperature,
                "max_tokens": self.config.max_tokens,
            }
            with self._slots:
                reply = self._transport(payload)
            try:
                text = reply["choices"][0]["message"]["content"]
            except (KeyError, IndexError, TypeError) as exc:
                raise TransportError(f"malformed chat response: {reply!r}") from exc
            try:
                value = parse_structured_text(text)
                err = validate_structured(value, bundle.output_schema)
            except json.JSONDecodeError as exc:
                err = f"output is not valid JSON: {exc}"
                value = None
            if err is None:
                return ReasonerOutput(
                    structured_value=value,
                    raw_text=text,
                    attempt_count=attempt,
                    backend_id=self.backend_id,
                )
            last_err = err
            messages = messages + [
                {"role": "assistant", "content": text},
                {
                    "role": "user",
                    "content": f"Your output failed validation: {err}. "
                    "Reply again with JSON matching the schema exactly.",
                },
            ]
        raise SchemaViolationError(last_err)


class RecordingBackend:
    """Wraps a backend and captures fingerprint -> output for later replay."""

    def __init__(self, inner):
        self.inner = inner
        self.backend_id = f"recording:{inner.backend_id}"
        self.captured: dict[str, Any] = {}
        self._lock = threading.Lock()

    def complete(self, bundle: PromptBundle) -> ReasonerOutput:
        out = self.inner.complete(bundle)
        with self._lock:
            self.captured[bundle.step_fingerprint] = out.structured_value
        return out

    def script(self) -> Script:
        with self._lock:
            return Script(entries=dict(self.captured))


_backend_cache: dict[tuple, Any] = {}
_backend_cache_lock = threading.Lock()


def create_backend(config: BackendConfig):
    if config.kind == "scripted":
        return ScriptedBackend(Script.load(config.script_path))
    return RemoteChatBackend(config)


def complete(bundle: PromptBundle, config: BackendConfig) -> ReasonerOutput:
    """Module-level entry point; backends are cached per config so the
    scripted sequence memoization survives across calls."""
    key = (config.kind, config.endpoint, config.model_name, config.script_path)
    with _backend_cache_lock:
        backend = _backend_cache.get(key)
        if backend is None:
            backend = create_backend(config)
            _backend_cache[key] = backend
    return backend.complete(bundle)

"""API sub-task plan-execute agent: shortlist tools, generate a constrained
step-program, execute it against the registry, reflect on failures."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Optional

from .. import schemas
from ..events import EventRecorder, null_recorder
from ..jsonutil import digest
from ..orchestrator import SubTask, SubTaskResult
from ..prompting import BundleBuilder
from ..reasoner import SchemaViolationError
from ..registry.model import ToolSpec
from ..variables import Variable, VariableStore
from .interpreter import ProgramRuntimeError, evaluate_expr
from .stepprogram import (
    CallStmt,
    LetStmt,
    ProgramParseError,
    ReturnStmt,
    StaticCheckError,
    StepProgram,
    parse_program,
    static_check,
)

DEFAULT_STEP_CAP = 12
DEFAULT_STM_CAP = 10
DEFAULT_SHORTLIST_K = 8
DEFAULT_RETRY_BUDGET = 2

PHASES = ("shortlisting", "programming", "executing", "reflecting", "done")
LEGAL_TRANSITIONS = {
    ("shortlisting", "programming"),
    ("shortlisting", "done"),
    ("programming", "executing"),
    ("programming", "done"),
    ("executing", "reflecting"),
    ("executing", "done"),
    ("reflecting", "programming"),
    ("reflecting", "shortlisting"),
    ("reflecting", "done"),
}


class NoCandidateError(Exception):
    """Zero tools survived shortlisting."""


class StepCapExceeded(Exception):
    """The iteration budget for one sub-task ran out."""


@dataclass
class ApiPlannerState:
    subtask: SubTask
    stm: deque = field(default_factory=lambda: deque(maxlen=DEFAULT_STM_CAP))
    shortlist: list[ToolSpec] = field(default_factory=list)
    variables: Optional[VariableStore] = None
    iteration: int = 0
    phase: str = "shortlisting"
    phase_log: list[str] = field(default_factory=lambda: ["shortlisting"])

    def transition(self, new_phase: str) -> None:
        if (self.phase, new_phase) not in LEGAL_TRANSITIONS:
            raise RuntimeError(f"illegal phase transition {self.phase} -> {new_phase}")
        self.phase = new_phase
        self.phase_log.append(new_phase)

    def remember(self, decision: str, outcome: str) -> None:
        self.stm.append((decision, outcome))


@dataclass(frozen=True)
class ExecutionResult:
    returned: tuple[Variable, ...]
    call_log: tuple[tuple[str, str, int], ...]  # (tool_id, args digest, status)
    status: str  # ok | call_failed | expr_error
    diagnostic: Optional[str] = None


@dataclass(frozen=True)
class Revision:
    kind: str  # retry_program | reshortlist | give_up
    hint: Optional[str] = None
    reason: Optional[str] = None


def shortlist(
    subtask: SubTask,
    registry,
    bundles: BundleBuilder,
    reasoner,
    k: int = DEFAULT_SHORTLIST_K,
    apps_in_scope: list[str] | None = None,
) -> list[ToolSpec]:
    """Registry search hits merged with reasoner-selected ids; search order
    preserved, duplicates dropped, capped at k."""
    scope_apps = [a for a in (apps_in_scope or registry.app_ids) if a in registry.app_ids]
    hits = []
    for app_id in scope_apps:
        hits.extend(registry.search(subtask.goal, scope=app_id, k=k))
    hits.sort(key=lambda h: (-h.score, h.tool_id))
    ordered_ids: list[str] = []
    for hit in hits:
        if hit.tool_id not in ordered_ids:
            ordered_ids.append(hit.tool_id)
    tool_cards = [
        f"{hit.tool_id}: {hit.snippet}" for hit in hits[: 2 * k]
    ]
    bundle = bundles.next(
        agent="api_planner.shortlist",
        role_preamble="You pick the API operations a sub-task will need.",
        instructions=(
            f"Sub-task: {subtask.goal}\n"
            f"Apps in scope: {', '.join(scope_apps) or '(none)'}\n"
            f"Lexical candidates:\n" + "\n".join(tool_cards)
        ),
        output_schema=schemas.SHORTLIST_SCHEMA,
    )
    try:
        extra = reasoner.complete(bundle).structured_value["tool_ids"]
    except SchemaViolationError:
        extra = []
    for tool_id in extra:
        if tool_id in ordered_ids or not registry.has_tool(tool_id):
            continue
        if registry.tool(tool_id).app_id not in scope_apps:
            continue
        ordered_ids.append(tool_id)
    final = ordered_ids[:k]
    if not final:
        raise NoCandidateError(f"no candidate tools for sub-task {subtask.id!r}")
    return [registry.tool(tid) for tid in final]


def _tool_card(tool: ToolSpec) -> str:
    params = ", ".join(
        f"{p.name}:{p.type_tag}{'' if p.required else '?'}({p.location})" for p in tool.params
    )
    fields = ", ".join(f"{path}:{tag}" for path, tag in tool.response_fields[:12])
    return f"{tool.tool_id} {tool.method} {tool.path} ({params}) -> [{fields}]\n  {tool.summary}"


def generate_program(
    subtask: SubTask,
    shortlist_tools: list[ToolSpec],
    variables: VariableStore,
    bundles: BundleBuilder,
    reasoner,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    hint: str | None = None,
) -> StepProgram:
    """Ask for a step-program and statically validate it, feeding validation
    errors back to the reasoner within the retry budget."""
    if not shortlist_tools:
        raise NoCandidateError("cannot program with an empty shortlist")
    by_id = {t.tool_id: t for t in shortlist_tools}
    ambient = set(variables.names())
    base_instructions = (
        f"Write a step program for this sub-task.\n"
        f"Goal: {subtask.goal}\n"
        f"Produce variables: {', '.join(subtask.produces) or '(answer only)'}\n"
        f"Available variables: {', '.join(sorted(ambient)) or '(none)'}\n"
        "Tools:\n" + "\n".join(_tool_card(t) for t in shortlist_tools)
    )
    error_note = f"Revision hint: {hint}\n" if hint else ""
    last_exc: Exception | None = None
    for _attempt in range(retry_budget + 1):
        bundle = bundles.next(
            agent="api_planner.program",
            role_preamble="You write small call-and-transform programs.",
            instructions=error_note + base_instructions,
            output_schema=schemas.PROGRAM_SCHEMA,
        )
        source = reasoner.complete(bundle).structured_value["program"]
        try:
            program = parse_program(source)
            static_check(program, ambient, by_id)
            return program
        except (ProgramParseError, StaticCheckError) as exc:
            last_exc = exc
            error_note = f"Previous program rejected: {exc}\n"
    raise last_exc


def execute_program(
    program: StepProgram,
    variables: VariableStore,
    registry,
    events: EventRecorder | None = None,
) -> ExecutionResult:
    """Evaluate statements in order; failures are encoded, never raised."""
    env: dict[str, Any] = variables.values_map()
    call_log: list[tuple[str, str, int]] = []
    for stmt in program.statements:
        if isinstance(stmt, LetStmt):
            try:
                env[stmt.name] = evaluate_expr(stmt.expr, env)
            except ProgramRuntimeError as exc:
                return ExecutionResult((), tuple(call_log), "expr_error", str(exc))
        elif isinstance(stmt, CallStmt):
            try:
                args = {name: evaluate_expr(expr, env) for name, expr in stmt.args}
            except ProgramRuntimeError as exc:
                return ExecutionResult((), tuple(call_log), "expr_error", str(exc))
            response = registry.invoke(stmt.tool_id, args)
            call_log.append((stmt.tool_id, digest(args), response.status_code))
            if events is not None:
                events.emit(
                    "code_agent",
                    "action",
                    {
                        "type": "tool_call",
                        "tool_id": stmt.tool_id,
                        "args_digest": digest(args),
                        "status_code": response.status_code,
                    },
                )
            if not response.ok:
                diag = (
                    f"call {stmt.name} = {stmt.tool_id} failed: "
                    f"{response.error or response.status_code}"
                )
                return ExecutionResult((), tuple(call_log), "call_failed", diag)
            env[stmt.name] = response.body
        elif isinstance(stmt, ReturnStmt):
            returned = []
            try:
                for name, expr in stmt.entries:
                    returned.append(
                        Variable(name, evaluate_expr(expr, env), producer="code_agent")
                    )
            except ProgramRuntimeError as exc:
                return ExecutionResult((), tuple(call_log), "expr_error", str(exc))
            return ExecutionResult(tuple(returned), tuple(call_log), "ok", None)
    return ExecutionResult((), tuple(call_log), "expr_error", "program had no return")


def reflect(
    result: ExecutionResult,
    state: ApiPlannerState,
    bundles: BundleBuilder,
    reasoner,
    step_cap: int = DEFAULT_STEP_CAP,
) -> Revision:
    """Decide how to respond to a failed (or suspicious) execution."""
    summary = f"{result.status}: {result.diagnostic or 'ok'}"
    try:
        if state.iteration >= step_cap:
            raise StepCapExceeded(f"iteration {state.iteration} at cap {step_cap}")
    except StepCapExceeded as exc:
        revision = Revision(kind="give_up", reason=str(exc))
        state.remember(summary, revision.kind)
        return revision
    history = "\n".join(f"- {d} => {o}" for d, o in state.stm) or "(empty)"
    bundle = bundles.next(
        agent="api_planner.reflect",
        role_preamble="You decide whether to retry, re-shortlist, or give up.",
        instructions=(
            f"Sub-task: {state.subtask.goal}\n"
            f"Last execution: {summary}\n"
            f"Call log: {[f'{t} -> {code}' for t, _, code in result.call_log]}\n"
            f"History:\n{history}"
        ),
        output_schema=schemas.REFLECT_SCHEMA,
    )
    value = reasoner.complete(bundle).structured_value
    revision = Revision(
        kind=value["revision"], hint=value.get("hint"), reason=value.get("reason")
    )
    state.remember(summary, revision.kind)
    return revision


class ApiAgent:
    """Drives the phase machine for API-executor sub-tasks."""

    def __init__(
        self,
        registry,
        reasoner,
        bundles: BundleBuilder,
        events: EventRecorder | None = None,
        apps_in_scope: list[str] | None = None,
        shortlist_k: int = DEFAULT_SHORTLIST_K,
        step_cap: int = DEFAULT_STEP_CAP,
        stm_cap: int = DEFAULT_STM_CAP,
        retry_budget: int = DEFAULT_RETRY_BUDGET,
    ):
        self.registry = registry
        self.reasoner = reasoner
        self.bundles = bundles
        self.events = events or null_recorder()
        self.apps_in_scope = apps_in_scope
        self.shortlist_k = shortlist_k
        self.step_cap = step_cap
        self.stm_cap = stm_cap
        self.retry_budget = retry_budget

    def run_subtask(self, subtask: SubTask, inputs: VariableStore) -> SubTaskResult:
        state = ApiPlannerState(
            subtask=subtask, stm=deque(maxlen=self.stm_cap), variables=inputs
        )
        hint: str | None = None
        failure: str | None = None
        produced: tuple[Variable, ...] = ()
        while state.phase != "done":
            if state.phase == "shortlisting":
                try:
                    state.shortlist = shortlist(
                        subtask,
                        self.registry,
                        self.bundles,
                        self.reasoner,
                        k=self.shortlist_k,
                        apps_in_scope=self.apps_in_scope,
                    )
                except NoCandidateError:
                    failure = "no candidate tools"
                    state.transition("done")
                    continue
                self.events.emit(
                    "shortlister",
                    "decision",
                    {
                        "type": "shortlist",
                        "subtask_id": subtask.id,
                        "tool_ids": [t.tool_id for t in state.shortlist],
                    },
                )
                state.transition("programming")
            elif state.phase == "programming":
                try:
                    program = generate_program(
                        subtask,
                        state.shortlist,
                        inputs,
                        self.bundles,
                        self.reasoner,
                        retry_budget=self.retry_budget,
                        hint=hint,
                    )
                except (ProgramParseError, StaticCheckError, SchemaViolationError) as exc:
                    failure = f"program generation failed: {exc}"
                    state.transition("done")
                    continue
                self.events.emit(
                    "code_agent",
                    "decision",
                    {"type": "program", "subtask_id": subtask.id, "source": program.source_text},
                )
                state.transition("executing")
            elif state.phase == "executing":
                state.iteration += 1
                result = execute_program(program, inputs, self.registry, self.events)
                self.events.emit(
                    "code_agent",
                    "result",
                    {
                        "type": "execution",
                        "subtask_id": subtask.id,
                        "status": result.status,
                        "diagnostic": result.diagnostic,
                        "call_log": [list(entry) for entry in result.call_log],
                    },
                )
                if result.status == "ok":
                    collected = self._collect_produced(subtask, result)
                    if collected is None:
                        failure = "program did not produce the declared variables"
                    else:
                        produced = collected
                        state.remember("execute", "ok")
                    state.transition("done")
                else:
                    state.transition("reflecting")
            elif state.phase == "reflecting":
                revision = reflect(
                    result, state, self.bundles, self.reasoner, step_cap=self.step_cap
                )
                self.events.emit(
                    "api_planner",
                    "reflection",
                    {
                        "type": "revision",
                        "subtask_id": subtask.id,
                        "revision": revision.kind,
                        "hint": revision.hint,
                        "reason": revision.reason,
                    },
                )
                if revision.kind == "retry_program":
                    hint = revision.hint or "previous attempt failed"
                    state.transition("programming")
                elif revision.kind == "reshortlist":
                    hint = None
                    state.transition("shortlisting")
                else:
                    failure = revision.reason or "gave up"
                    state.transition("done")
        if failure is not None:
            return SubTaskResult(
                subtask_id=subtask.id,
                status="failed",
                step_count=state.iteration,
                failure_reason=failure,
            )
        answer = next(
            (str(v.value) for v in produced if v.type_tag in ("string", "number")), None
        )
        return SubTaskResult(
            subtask_id=subtask.id,
            status="succeeded",
            produced=produced,
            answer=answer,
            step_count=state.iteration,
        )

    @staticmethod
    def _collect_produced(subtask: SubTask, result: ExecutionResult):
        declared = set(subtask.produces)
        by_name = {v.name: v for v in result.returned}
        if not declared:
            return tuple(result.returned)
        if not declared <= set(by_name):
            return None
        return tuple(by_name[name] for name in subtask.produces)

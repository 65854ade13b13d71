"""Plan controller: decomposes a task into sub-tasks, sequences them,
expands loops, dispatches to executors, propagates variables, and decides
completion or replanning."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Protocol

from . import schemas
from .events import EventRecorder, null_recorder
from .prompting import BundleBuilder
from .reasoner import SchemaViolationError
from .variables import Variable, VariableStore

DEFAULT_REPLAN_BUDGET = 2

PENDING = "pending"
RUNNING = "running"
SUCCEEDED = "succeeded"
FAILED = "failed"
SKIPPED = "skipped"


class ReasonerSchemaError(Exception):
    """The reasoner never produced schema-valid output within the budget."""


class EmptyPlanError(Exception):
    """The reasoner proposed zero sub-tasks."""


class PlanValidationError(Exception):
    """A proposed plan violates dataflow ordering."""


class DeadlockError(Exception):
    """No pending sub-task is runnable and the plan is not finished."""


class UnknownSubtaskError(Exception):
    """A result arrived for a sub-task that is not the running one."""


class NotAListError(Exception):
    """Loop expansion was asked to iterate a non-list variable."""


class ReplanBudgetExhausted(Exception):
    """All replans spent; the task must abort."""


@dataclass(frozen=True)
class Task:
    id: str
    intent: str
    apps_in_scope: tuple[str, ...]
    initial_context: tuple[Variable, ...] = ()
    source: str = "benchmark"  # benchmark | interactive

    def __post_init__(self):
        if not self.id:
            raise ValueError("task id must be nonempty")
        if not self.apps_in_scope:
            raise ValueError("apps_in_scope must be nonempty")
        object.__setattr__(self, "apps_in_scope", tuple(self.apps_in_scope))
        object.__setattr__(self, "initial_context", tuple(self.initial_context))


@dataclass(frozen=True)
class SubTask:
    id: str
    goal: str
    executor: str  # browser | api
    consumes: tuple[str, ...] = ()
    produces: tuple[str, ...] = ()
    loop_binding: Optional[tuple[str, str]] = None  # (list variable, item alias)
    loop_index: Optional[int] = None  # set on loop-expanded instances

    def __post_init__(self):
        if self.executor not in ("browser", "api"):
            raise ValueError(f"unknown executor: {self.executor!r}")
        object.__setattr__(self, "consumes", tuple(self.consumes))
        object.__setattr__(self, "produces", tuple(self.produces))


@dataclass(frozen=True)
class SubTaskResult:
    subtask_id: str
    status: str  # succeeded | failed
    produced: tuple[Variable, ...] = ()
    answer: Optional[str] = None
    step_count: int = 0
    failure_reason: Optional[str] = None

    def __post_init__(self):
        if self.status not in (SUCCEEDED, FAILED):
            raise ValueError(f"bad result status: {self.status!r}")
        if (self.status == FAILED) != (self.failure_reason is not None):
            raise ValueError("failure_reason present iff status is failed")
        if self.step_count < 0:
            raise ValueError("step_count must be >= 0")
        object.__setattr__(self, "produced", tuple(self.produced))


@dataclass
class PlanState:
    task_id: str
    subtasks: list[SubTask]
    cursor: int
    statuses: dict[str, str]
    variables: VariableStore
    revision_count: int = 0
    final_answer: Optional[str] = None
    outcome: Optional[str] = None  # complete | abort once terminal
    abort_reason: Optional[str] = None

    @classmethod
    def fresh(cls, task: Task, subtasks: list[SubTask]) -> "PlanState":
        store = VariableStore(list(task.initial_context))
        return cls(
            task_id=task.id,
            subtasks=list(subtasks),
            cursor=0,
            statuses={st.id: PENDING for st in subtasks},
            variables=store,
        )

    @property
    def terminal(self) -> bool:
        return self.outcome is not None

    def status_of(self, subtask_id: str) -> str:
        return self.statuses[subtask_id]

    def resolved_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for status in self.statuses.values():
            if status in (SUCCEEDED, FAILED, SKIPPED):
                counts[status] = counts.get(status, 0) + 1
        return counts


@dataclass(frozen=True)
class Dispatch:
    """Either a sub-task to run with its resolved inputs, or `conclude`."""

    conclude: bool
    subtask: Optional[SubTask] = None
    inputs: Optional[VariableStore] = None


@dataclass(frozen=True)
class Verdict:
    kind: str  # complete | replan | abort
    final_answer: Optional[str] = None
    new_subtasks: tuple[SubTask, ...] = ()
    reason: Optional[str] = None


class SubtaskExecutor(Protocol):
    def run_subtask(self, subtask: SubTask, inputs: VariableStore) -> SubTaskResult: ...


def _parse_subtasks(raw: list[dict], id_offset: int = 0) -> list[SubTask]:
    out = []
    for i, item in enumerate(raw):
        loop = item.get("loop")
        out.append(
            SubTask(
                id=item.get("id") or f"st{id_offset + i + 1}",
                goal=item["goal"],
                executor=item["executor"],
                consumes=tuple(item.get("consumes", ())),
                produces=tuple(item.get("produces", ())),
                loop_binding=(loop["list"], loop["alias"]) if loop else None,
            )
        )
    return out


def _validate_dataflow(subtasks: list[SubTask], initial_names: set[str]) -> None:
    bound = set(initial_names)
    for st in subtasks:
        needed = set(st.consumes)
        if st.loop_binding:
            needed.add(st.loop_binding[0])
        missing = needed - bound
        if missing:
            raise PlanValidationError(
                f"sub-task {st.id!r} consumes unbound variable(s): {sorted(missing)}"
            )
        bound.update(st.produces)


def decompose(task: Task, bundles: BundleBuilder, reasoner) -> list[SubTask]:
    """Ask the reasoner for an ordered sub-task plan and validate its dataflow."""
    instructions = (
        f"Decompose this task into ordered sub-tasks.\n"
        f"Task: {task.intent}\n"
        f"Applications in scope: {', '.join(task.apps_in_scope)}\n"
        f"Variables already available: {', '.join(v.name for v in task.initial_context) or '(none)'}"
    )
    bundle = bundles.next(
        agent="plan_controller.decompose",
        role_preamble="You are a plan controller that splits tasks into browser and API sub-tasks.",
        instructions=instructions,
        output_schema=schemas.PLAN_SCHEMA,
    )
    try:
        output = reasoner.complete(bundle)
    except SchemaViolationError as exc:
        raise ReasonerSchemaError(str(exc)) from exc
    raw = output.structured_value["subtasks"]
    if not raw:
        raise EmptyPlanError(f"reasoner produced an empty plan for task {task.id!r}")
    subtasks = _parse_subtasks(raw)
    _validate_dataflow(subtasks, {v.name for v in task.initial_context})
    return subtasks


def expand_loop(state: PlanState, template: SubTask, list_var: Variable) -> list[SubTask]:
    """One instance per list element, alias bound to the element, produced
    names suffixed with the element index."""
    if list_var.type_tag != "list":
        raise NotAListError(
            f"loop over {list_var.name!r} requires a list, got {list_var.type_tag}"
        )
    if template.loop_binding is None or template.loop_binding[0] != list_var.name:
        raise ValueError("template loop_binding does not name the list variable")
    list_name, alias = template.loop_binding
    instances = []
    for i, _element in enumerate(list_var.value):
        consumes = tuple(c for c in template.consumes if c != list_name) + (f"{alias}_{i}",)
        produces = tuple(f"{p}_{i}" for p in template.produces)
        instances.append(
            replace(
                template,
                id=f"{template.id}.{i}",
                consumes=consumes,
                produces=produces,
                loop_index=i,
            )
        )
    return instances


def _apply_loop_expansion(state: PlanState, idx: int) -> None:
    template = state.subtasks[idx]
    list_name, alias = template.loop_binding
    list_var = state.variables.get(list_name)
    instances = expand_loop(state, template, list_var)
    for i, element in enumerate(list_var.value):
        state.variables.bind(
            Variable(f"{alias}_{i}", element, producer=f"loop:{template.id}")
        )
    del state.statuses[template.id]
    if instances:
        state.subtasks[idx : idx + 1] = instances
        for inst in instances:
            state.statuses[inst.id] = PENDING
    else:
        # empty iteration: the loop body vanishes and the plan moves on
        state.statuses[template.id] = SKIPPED
        state.subtasks[idx] = replace(template, loop_index=-1)


def next_step(state: PlanState) -> Dispatch:
    """Dispatch the lowest-index pending sub-task whose consumed variables
    are all bound, expanding loop templates on the way; conclude when all
    sub-tasks are resolved."""
    if state.terminal:
        raise ValueError("next_step called on a terminal plan state")
    while True:
        pending = [
            (i, st)
            for i, st in enumerate(state.subtasks)
            if state.statuses.get(st.id) == PENDING
        ]
        if not pending:
            if any(s == RUNNING for s in state.statuses.values()):
                raise ValueError("next_step called while a sub-task is running")
            return Dispatch(conclude=True)
        expanded = False
        for i, st in pending:
            if st.loop_binding and st.loop_index is None:
                if state.variables.has(st.loop_binding[0]):
                    _apply_loop_expansion(state, i)
                    expanded = True
                    break
                continue
            if all(state.variables.has(name) for name in st.consumes):
                state.cursor = i
                inputs = _resolve_inputs(state, st)
                return Dispatch(conclude=False, subtask=st, inputs=inputs)
        if expanded:
            continue
        raise DeadlockError(
            f"no runnable sub-task among pending {[st.id for _, st in pending]}"
        )


def _resolve_inputs(state: PlanState, st: SubTask) -> VariableStore:
    aliases = {}
    if st.loop_binding and st.loop_index is not None and st.loop_index >= 0:
        _list_name, alias = st.loop_binding
        aliases[f"{alias}_{st.loop_index}"] = alias
    return state.variables.view(list(st.consumes), aliases)


def mark_running(state: PlanState, subtask_id: str) -> None:
    if state.statuses.get(subtask_id) != PENDING:
        raise UnknownSubtaskError(f"{subtask_id!r} is not pending")
    state.statuses[subtask_id] = RUNNING


def record_result(state: PlanState, result: SubTaskResult) -> PlanState:
    """Merge produced variables and update the sub-task status in place."""
    if state.statuses.get(result.subtask_id) != RUNNING:
        raise UnknownSubtaskError(
            f"{result.subtask_id!r} is not the running sub-task"
        )
    subtask = next(st for st in state.subtasks if st.id == result.subtask_id)
    if result.status == SUCCEEDED:
        declared = set(subtask.produces)
        stray = [v.name for v in result.produced if v.name not in declared]
        if stray:
            raise ValueError(
                f"sub-task {subtask.id!r} produced undeclared variables: {stray}"
            )
        for var in result.produced:
            state.variables.bind(
                Variable(var.name, var.value, producer=subtask.id)
            )
        state.statuses[subtask.id] = SUCCEEDED
    else:
        state.statuses[subtask.id] = FAILED
    return state


def conclude_or_replan(
    state: PlanState,
    bundles: BundleBuilder,
    reasoner,
    replan_budget: int = DEFAULT_REPLAN_BUDGET,
    deadlock: str | None = None,
) -> Verdict:
    """Judge the finished (or deadlocked) plan: complete, replan, or abort."""
    failures = [sid for sid, s in state.statuses.items() if s == FAILED]
    trouble = bool(failures) or deadlock is not None
    if trouble and state.revision_count >= replan_budget:
        reason = f"replan budget exhausted after {state.revision_count} revision(s)"
        state.outcome = "abort"
        state.abort_reason = reason
        return Verdict(kind="abort", reason=reason)

    status_lines = "\n".join(
        f"- {st.id} [{state.statuses.get(st.id, '?')}]: {st.goal}" for st in state.subtasks
    )
    var_lines = "\n".join(
        f"- {v.name} = {v.value!r} (from {v.producer})" for v in state.variables
    )
    instructions = (
        "All sub-tasks are resolved. Decide the task outcome.\n"
        f"Sub-tasks:\n{status_lines}\n"
        f"Variables:\n{var_lines or '(none)'}\n"
        + (f"Deadlock: {deadlock}\n" if deadlock else "")
        + "Reply complete with a final answer assembled from the variables, "
        "replan with recovery sub-tasks, or abort with a reason."
    )
    bundle = bundles.next(
        agent="plan_controller.conclude",
        role_preamble="You judge whether a multi-step task is complete.",
        instructions=instructions,
        output_schema=schemas.CONCLUDE_SCHEMA,
    )
    try:
        output = reasoner.complete(bundle)
    except SchemaViolationError as exc:
        raise ReasonerSchemaError(str(exc)) from exc
    value = output.structured_value
    verdict = value["verdict"]
    if verdict == "complete":
        answer = value.get("final_answer", "")
        if not answer:
            raise PlanValidationError("complete verdict requires a nonempty final answer")
        state.outcome = "complete"
        state.final_answer = answer
        return Verdict(kind="complete", final_answer=answer)
    if verdict == "replan":
        if state.revision_count >= replan_budget:
            reason = "replan budget exhausted"
            state.outcome = "abort"
            state.abort_reason = reason
            return Verdict(kind="abort", reason=reason)
        new_subtasks = _parse_subtasks(
            value.get("subtasks", []), id_offset=len(state.subtasks)
        )
        if not new_subtasks:
            raise EmptyPlanError("replan verdict carried zero sub-tasks")
        produced_so_far = set(state.variables.names())
        _validate_dataflow(new_subtasks, produced_so_far)
        state.subtasks.extend(new_subtasks)
        for st in new_subtasks:
            state.statuses[st.id] = PENDING
        state.revision_count += 1
        return Verdict(kind="replan", new_subtasks=tuple(new_subtasks))
    reason = value.get("reason", "aborted by judge")
    state.outcome = "abort"
    state.abort_reason = reason
    return Verdict(kind="abort", reason=reason)


@dataclass
class TaskOutcome:
    task_id: str
    status: str  # complete | abort
    final_answer: Optional[str]
    steps: int
    state: PlanState = field(repr=False, default=None)


class PlanController:
    """Drives one task end to end through decomposition, dispatch, and judging."""

    def __init__(
        self,
        reasoner,
        executors: dict[str, SubtaskExecutor],
        events: EventRecorder | None = None,
        replan_budget: int = DEFAULT_REPLAN_BUDGET,
        context_fragments: list[tuple[str, str]] | None = None,
        bundles: BundleBuilder | None = None,
    ):
        self.reasoner = reasoner
        self.executors = executors
        self.replan_budget = replan_budget
        self.context_fragments = context_fragments or []
        self.events = events
        self.bundles = bundles

    def run_task(self, task: Task) -> TaskOutcome:
        events = self.events or null_recorder(task_id=task.id)
        bundles = self.bundles or BundleBuilder(task.id, base_fragments=self.context_fragments)
        subtasks = decompose(task, bundles, self.reasoner)
        events.emit(
            "plan_controller",
            "decision",
            {
                "type": "plan",
                "subtasks": [
                    {
                        "id": st.id,
                        "goal": st.goal,
                        "executor": st.executor,
                        "consumes": list(st.consumes),
                        "produces": list(st.produces),
                    }
                    for st in subtasks
                ],
            },
        )
        state = PlanState.fresh(task, subtasks)
        steps = 0
        while not state.terminal:
            deadlock = None
            try:
                dispatch = next_step(state)
            except DeadlockError as exc:
                deadlock = str(exc)
                dispatch = Dispatch(conclude=True)
            if dispatch.conclude:
                verdict = conclude_or_replan(
                    state, bundles, self.reasoner, self.replan_budget, deadlock=deadlock
                )
                events.emit(
                    "plan_controller",
                    "reflection",
                    {
                        "type": "verdict",
                        "verdict": verdict.kind,
                        "final_answer": verdict.final_answer,
                        "reason": verdict.reason,
                        "revision_count": state.revision_count,
                    },
                )
                continue
            st = dispatch.subtask
            mark_running(state, st.id)
            events.emit(
                "plan_controller",
                "decision",
                {
                    "type": "dispatch",
                    "subtask_id": st.id,
                    "executor": st.executor,
                    "inputs": dispatch.inputs.values_map(),
                },
            )
            executor = self.executors[st.executor]
            result = executor.run_subtask(st, dispatch.inputs)
            steps += result.step_count
            record_result(state, result)
            events.emit(
                "plan_controller",
                "result",
                {
                    "type": "subtask_result",
                    "subtask_id": st.id,
                    "status": result.status,
                    "produced": {v.name: v.value for v in result.produced},
                    "failure_reason": result.failure_reason,
                },
            )
        return TaskOutcome(
            task_id=task.id,
            status=state.outcome,
            final_answer=state.final_answer,
            steps=steps,
            state=state,
        )

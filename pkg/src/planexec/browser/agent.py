"""Browser sub-task agent: a planner with short-term memory and a
reflection judge, an action agent with a grounding-and-feedback loop, and
a question-answering agent on a markdown-only observation space."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .. import schemas
from ..events import EventRecorder, null_recorder
from ..orchestrator import SubTask, SubTaskResult
from ..prompting import BundleBuilder
from ..variables import Variable, VariableStore
from .model import ActionOutcome, BrowserAction, Observation, PageContent
from .sim import BrowserDriver

DEFAULT_STEP_CAP = 12
DEFAULT_STM_CAP = 10
ACTION_ATTEMPT_CAP = 3

_CLOSE_WORDS = ("close", "dismiss", "no thanks", "not now", "x", "×")

_VERB_ROLES = {
    "click": ("button", "link", "checkbox", "combobox", "dialog"),
    "press": ("button", "link", "checkbox", "combobox", "dialog"),
    "open": ("link", "button"),
    "follow": ("link",),
    "type": ("textbox",),
    "enter": ("textbox",),
    "fill": ("textbox",),
    "select": ("combobox",),
    "choose": ("combobox",),
    "check": ("checkbox",),
}


class AmbiguousTargetError(Exception):
    """Two or more equally named candidates and the reasoner declined."""


class TargetNotFoundError(Exception):
    """The instruction names no element present in the observation."""


class ActionFailedError(Exception):
    """The grounding-and-feedback loop gave up."""

    def __init__(self, feedback: str, attempts: int):
        super().__init__(feedback)
        self.feedback = feedback
        self.attempts = attempts


class NotOnPageError(Exception):
    """The extractor reports the asked fact is absent from the page."""


@dataclass(frozen=True)
class BrowserDecision:
    kind: str  # act | extract | finish
    instruction: Optional[str] = None
    question: Optional[str] = None
    answer: Optional[str] = None
    success: bool = True


@dataclass(frozen=True)
class JudgeVerdict:
    kind: str  # approve | revise
    hint: Optional[str] = None


def snapshot(driver: BrowserDriver) -> Observation:
    return driver.snapshot()


def to_page_content(driver: BrowserDriver) -> PageContent:
    return driver.page_content()


def _describe_nodes(obs: Observation) -> str:
    lines = []
    for n in obs.ax_tree:
        occluded = f" (occluded by {n.occluded_by})" if n.occluded_by is not None else ""
        value = f" value={n.value!r}" if n.value else ""
        lines.append(f"[{n.node_id}] {n.role} {n.name!r}{value}{occluded}")
    return "\n".join(lines)


def plan_browser_step(
    subtask: SubTask,
    obs: Observation,
    stm: deque,
    bundles: BundleBuilder,
    reasoner,
) -> BrowserDecision:
    history = "\n".join(f"- {d} => {o}" for d, o in stm) or "(empty)"
    bundle = bundles.next(
        agent="browser_planner.step",
        role_preamble="You plan one browser step at a time: act, extract, or finish.",
        instructions=(
            f"Goal: {subtask.goal}\n"
            f"Current page: {obs.url}\n"
            f"Overlay present: {obs.overlay_present}\n"
            f"Elements:\n{_describe_nodes(obs)}\n"
            f"History:\n{history}"
        ),
        output_schema=schemas.BROWSER_DECISION_SCHEMA,
    )
    value = reasoner.complete(bundle).structured_value
    return BrowserDecision(
        kind=value["decision"],
        instruction=value.get("instruction"),
        question=value.get("question"),
        answer=value.get("answer"),
        success=value.get("success", True),
    )


def _instruction_verb(instruction: str) -> str:
    first = instruction.strip().split(maxsplit=1)
    return first[0].lower() if first else "click"


def ground(
    instruction: str,
    obs: Observation,
    bundles: BundleBuilder,
    reasoner,
) -> int:
    """Map an instruction to a node id present in the observation."""
    verb = _instruction_verb(instruction)
    roles = _VERB_ROLES.get(verb, ("button", "link", "textbox", "combobox", "checkbox"))
    wanted = instruction.lower()
    candidates = [
        n
        for n in obs.ax_tree
        if n.role in roles and n.name and n.name.lower() in wanted
    ]
    if not candidates:
        raise TargetNotFoundError(f"no {'/'.join(roles)} matching {instruction!r}")
    candidates.sort(key=lambda n: (-len(n.name), n.node_id))
    best_name = candidates[0].name.lower()
    tied = [n for n in candidates if n.name.lower() == best_name]
    if len(tied) == 1:
        return tied[0].node_id
    bundle = bundles.next(
        agent="browser_planner.ground",
        role_preamble="You disambiguate between identically named page elements.",
        instructions=(
            f"Instruction: {instruction}\n"
            "Candidates:\n"
            + "\n".join(f"[{n.node_id}] {n.role} {n.name!r}" for n in tied)
            + "\nReply with the node_id to use, or null to decline."
        ),
        output_schema=schemas.GROUND_CHOICE_SCHEMA,
    )
    choice = reasoner.complete(bundle).structured_value["node_id"]
    if choice is None:
        raise AmbiguousTargetError(
            f"{len(tied)} equally named candidates for {instruction!r}"
        )
    if not obs.has_node(choice) or choice not in {n.node_id for n in tied}:
        raise TargetNotFoundError(f"reasoner chose node {choice}, not a candidate")
    return choice


def _find_dismiss_node(obs: Observation, dialog_id: int) -> int:
    """Prefer a close/dismiss-named node; fall back to the dialog itself."""
    for n in obs.ax_tree:
        if n.node_id == dialog_id:
            continue
        if n.occluded_by is None and n.role in ("button", "link"):
            if any(w in n.name.lower() for w in _CLOSE_WORDS):
                return n.node_id
    return dialog_id


def _dispatch(driver: BrowserDriver, action: BrowserAction):
    if action.kind == "click":
        return driver.click(action.target)
    if action.kind == "type":
        return driver.type_text(action.target, action.text)
    if action.kind == "select":
        return driver.select(action.target, action.option)
    if action.kind == "go_back":
        return driver.back()
    raise ValueError(f"cannot dispatch action kind {action.kind!r}")


def _action_for(instruction: str, node_id: int, obs: Observation) -> BrowserAction:
    verb = _instruction_verb(instruction)
    node = obs.node(node_id)
    if node.role == "textbox" or verb in ("type", "enter", "fill"):
        text = instruction.split('"')[1] if '"' in instruction else instruction
        return BrowserAction(kind="type", target=node_id, text=text)
    if node.role == "combobox" or verb in ("select", "choose"):
        option = instruction.split('"')[1] if '"' in instruction else instruction
        return BrowserAction(kind="select", target=node_id, option=option)
    return BrowserAction(kind="click", target=node_id)


def act(
    instruction: str,
    obs: Observation,
    driver: BrowserDriver,
    bundles: BundleBuilder,
    reasoner,
    events: EventRecorder | None = None,
    attempt_cap: int = ACTION_ATTEMPT_CAP,
) -> ActionOutcome:
    """Ground and dispatch, re-planning within the feedback loop: occluding
    dialogs are dismissed first, then the original instruction is retried."""
    events = events or null_recorder()
    feedback: Optional[str] = None
    attempts = 0
    while attempts < attempt_cap:
        attempts += 1
        try:
            node_id = ground(instruction, obs, bundles, reasoner)
        except (TargetNotFoundError, AmbiguousTargetError) as exc:
            feedback = str(exc)
            obs = driver.snapshot()
            continue
        node = obs.node(node_id)
        if node.occluded_by is not None:
            dismiss_id = _find_dismiss_node(obs, node.occluded_by)
            dismiss = BrowserAction(kind="click", target=dismiss_id)
            result = _dispatch(driver, dismiss)
            events.emit(
                "action_agent",
                "action",
                {
                    "type": "dismiss_overlay",
                    "action": dismiss.to_dict(),
                    "dialog": node.occluded_by,
                    "ok": result.ok,
                    "feedback": result.reason,
                    "attempt": attempts,
                },
            )
            feedback = result.reason or "dismissed overlay"
            obs = driver.snapshot()
            continue
        action = _action_for(instruction, node_id, obs)
        result = _dispatch(driver, action)
        events.emit(
            "action_agent",
            "action",
            {
                "type": "browser_action",
                "instruction": instruction,
                "action": action.to_dict(),
                "grounded_node": node_id,
                "ok": result.ok,
                "feedback": result.reason,
                "attempt": attempts,
            },
        )
        new_obs = driver.snapshot()
        if result.ok:
            return ActionOutcome(
                applied=action,
                success=True,
                feedback=feedback,
                attempts=attempts,
                new_observation=new_obs,
            )
        feedback = result.reason
        obs = new_obs
    raise ActionFailedError(feedback or "action kept failing", attempts)


def extract(
    question: str,
    content: PageContent,
    bundles: BundleBuilder,
    reasoner,
) -> tuple[str, list[str]]:
    """Answer a question from PageContent only; returns (answer, citations)."""
    if not content.markdown.strip():
        raise NotOnPageError("page has no content")
    bundle = bundles.next(
        agent="extraction_agent.extract",
        role_preamble="You answer questions about the current page from its markdown.",
        instructions=f"Question: {question}\nPage ({content.url}):\n{content.markdown}",
        output_schema=schemas.EXTRACT_SCHEMA,
    )
    value = reasoner.complete(bundle).structured_value
    if not value.get("found") or not value.get("answer"):
        raise NotOnPageError(f"no answer on page for {question!r}")
    citations = [c for c in value.get("citations", []) if c in content.markdown]
    return value["answer"], citations


def is_risky(stm: deque, decision: BrowserDecision) -> bool:
    if decision.kind == "act" and decision.instruction:
        failures = sum(
            1
            for d, o in stm
            if d == f"act: {decision.instruction}" and o.startswith("failed")
        )
        if failures >= 1:
            return True
    if decision.kind == "finish" and decision.success:
        has_evidence = any(d.startswith("extract:") and o.startswith("answer") for d, o in stm)
        if not has_evidence:
            return True
    return False


def judge(
    stm: deque,
    proposed: BrowserDecision,
    bundles: BundleBuilder,
    reasoner,
) -> JudgeVerdict:
    history = "\n".join(f"- {d} => {o}" for d, o in stm) or "(empty)"
    bundle = bundles.next(
        agent="judge.browser",
        role_preamble="You vet risky browser decisions before they run.",
        instructions=(
            f"Proposed: {proposed.kind} "
            f"{proposed.instruction or proposed.question or proposed.answer or ''}\n"
            f"History:\n{history}\n"
            "Approve, or revise with a hint."
        ),
        output_schema=schemas.JUDGE_SCHEMA,
    )
    value = reasoner.complete(bundle).structured_value
    return JudgeVerdict(kind=value["verdict"], hint=value.get("hint"))


class BrowserAgent:
    """Drives browser-executor sub-tasks against a driver session."""

    def __init__(
        self,
        driver: BrowserDriver,
        reasoner,
        bundles: BundleBuilder,
        events: EventRecorder | None = None,
        step_cap: int = DEFAULT_STEP_CAP,
        stm_cap: int = DEFAULT_STM_CAP,
    ):
        self.driver = driver
        self.reasoner = reasoner
        self.bundles = bundles
        self.events = events or null_recorder()
        self.step_cap = step_cap
        self.stm_cap = stm_cap

    def run_subtask(self, subtask: SubTask, inputs: VariableStore) -> SubTaskResult:
        stm: deque = deque(maxlen=self.stm_cap)
        steps = 0
        answer: Optional[str] = None
        while True:
            if steps >= self.step_cap:
                return self._failed(subtask, steps, "step cap reached")
            obs = self.driver.snapshot()
            self.events.emit(
                "browser_planner",
                "observation",
                {
                    "type": "page_observation",
                    "url": obs.url,
                    "screenshot_ref": obs.screenshot_ref,
                    "overlay_present": obs.overlay_present,
                    "ax_tree": [n.to_dict() for n in obs.ax_tree],
                },
            )
            decision = plan_browser_step(subtask, obs, stm, self.bundles, self.reasoner)
            self.events.emit(
                "browser_planner",
                "decision",
                {
                    "type": "browser_decision",
                    "decision": decision.kind,
                    "instruction": decision.instruction,
                    "question": decision.question,
                    "answer": decision.answer,
                },
            )
            if is_risky(stm, decision):
                verdict = judge(stm, decision, self.bundles, self.reasoner)
                self.events.emit(
                    "judge",
                    "reflection",
                    {"type": "judge", "verdict": verdict.kind, "hint": verdict.hint},
                )
                if verdict.kind == "revise":
                    stm.append((f"judge: {decision.kind}", f"revise: {verdict.hint}"))
                    steps += 1
                    continue
            if decision.kind == "act":
                steps += 1
                try:
                    outcome = act(
                        decision.instruction,
                        obs,
                        self.driver,
                        self.bundles,
                        self.reasoner,
                        events=self.events,
                    )
                    stm.append(
                        (
                            f"act: {decision.instruction}",
                            f"ok after {outcome.attempts} attempt(s)",
                        )
                    )
                except ActionFailedError as exc:
                    stm.append((f"act: {decision.instruction}", f"failed: {exc.feedback}"))
                    self.events.emit(
                        "action_agent",
                        "result",
                        {
                            "type": "action_failed",
                            "instruction": decision.instruction,
                            "feedback": exc.feedback,
                            "attempts": exc.attempts,
                        },
                    )
            elif decision.kind == "extract":
                steps += 1
                content = to_page_content(self.driver)
                try:
                    answer, citations = extract(
                        decision.question, content, self.bundles, self.reasoner
                    )
                    stm.append((f"extract: {decision.question}", f"answer: {answer}"))
                    self.events.emit(
                        "extraction_agent",
                        "result",
                        {
                            "type": "extraction",
                            "question": decision.question,
                            "answer": answer,
                            "citations": citations,
                            "url": content.url,
                        },
                    )
                except NotOnPageError as exc:
                    stm.append((f"extract: {decision.question}", f"not on page: {exc}"))
                    self.events.emit(
                        "extraction_agent",
                        "result",
                        {
                            "type": "extraction_miss",
                            "question": decision.question,
                            "reason": str(exc),
                        },
                    )
            else:  # finish
                if decision.success:
                    final = decision.answer or answer or "done"
                    produced = tuple(
                        Variable(name, final, producer=subtask.id)
                        for name in subtask.produces
                    )
                    return SubTaskResult(
                        subtask_id=subtask.id,
                        status="succeeded",
                        produced=produced,
                        answer=final,
                        step_count=steps,
                    )
                return self._failed(subtask, steps, decision.answer or "planner reported failure")

    @staticmethod
    def _failed(subtask: SubTask, steps: int, reason: str) -> SubTaskResult:
        return SubTaskResult(
            subtask_id=subtask.id,
            status="failed",
            step_count=steps,
            failure_reason=reason,
        )

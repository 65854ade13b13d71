"""Browser sub-task agent, deterministic page-graph simulator, and the
adapter contract for real browsers."""

from .model import (
    ActionOutcome,
    AxNode,
    BrowserAction,
    Observation,
    PageContent,
    SessionClosedError,
)
from .sim import BrowserDriver, SimulatedBrowser, SitePlan, load_site, save_site
from .agent import (
    ActionFailedError,
    AmbiguousTargetError,
    BrowserAgent,
    BrowserDecision,
    NotOnPageError,
    TargetNotFoundError,
    act,
    extract,
    ground,
    judge,
    plan_browser_step,
    snapshot,
    to_page_content,
)

__all__ = [
    "ActionFailedError",
    "ActionOutcome",
    "AmbiguousTargetError",
    "AxNode",
    "BrowserAction",
    "BrowserAgent",
    "BrowserDecision",
    "BrowserDriver",
    "NotOnPageError",
    "Observation",
    "PageContent",
    "SessionClosedError",
    "SimulatedBrowser",
    "SitePlan",
    "TargetNotFoundError",
    "act",
    "extract",
    "ground",
    "judge",
    "load_site",
    "plan_browser_step",
    "save_site",
    "snapshot",
    "to_page_content",
]

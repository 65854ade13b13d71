"""API sub-task plan-execute agent and its constrained step-program language."""

from .stepprogram import (
    ProgramParseError,
    StaticCheckError,
    StepProgram,
    parse_program,
    static_check,
)
from .interpreter import evaluate_expr, ProgramRuntimeError
from .agent import (
    ApiAgent,
    ApiPlannerState,
    ExecutionResult,
    NoCandidateError,
    StepCapExceeded,
    execute_program,
)

__all__ = [
    "ApiAgent",
    "ApiPlannerState",
    "ExecutionResult",
    "NoCandidateError",
    "ProgramParseError",
    "ProgramRuntimeError",
    "StaticCheckError",
    "StepCapExceeded",
    "StepProgram",
    "evaluate_expr",
    "execute_program",
    "parse_program",
    "static_check",
]

"""Step-program expression evaluation."""

from __future__ import annotations

from typing import Any

from ..jsonutil import canonical_json
from .stepprogram import (
    BinOp,
    BuiltinCall,
    Field,
    FilterExpr,
    Index,
    ListLit,
    Lit,
    MapExpr,
    Name,
    Predicate,
)


class ProgramRuntimeError(Exception):
    """An expression failed at evaluation time (missing field, bad types...)."""


def _num(value: Any, what: str) -> float | int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProgramRuntimeError(f"{what} requires a number, got {value!r}")
    return value


def _as_list(value: Any, what: str) -> list:
    if not isinstance(value, list):
        raise ProgramRuntimeError(f"{what} requires a list, got {value!r}")
    return value


def _render_scalar(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def _builtin(fn: str, args: list[Any]) -> Any:
    if fn == "len":
        v = args[0]
        if isinstance(v, (list, str, dict)):
            return len(v)
        raise ProgramRuntimeError(f"len over {type(v).__name__}")
    if fn == "sum":
        xs = _as_list(args[0], "sum")
        total: float | int = 0
        for x in xs:
            total = total + _num(x, "sum element")
        return total
    if fn in ("min", "max"):
        xs = args if len(args) > 1 else _as_list(args[0], fn)
        if not xs:
            raise ProgramRuntimeError(f"{fn} of an empty list")
        kinds = {type(x) for x in xs}
        if kinds <= {int, float} or kinds == {str}:
            return min(xs) if fn == "min" else max(xs)
        raise ProgramRuntimeError(f"{fn} over mixed or unordered types")
    if fn == "sort":
        xs = _as_list(args[0], "sort")
        kinds = {type(x) for x in xs}
        if xs and not (kinds <= {int, float} or kinds == {str}):
            raise ProgramRuntimeError("sort over mixed or unordered types")
        return sorted(xs)
    if fn == "unique":
        xs = _as_list(args[0], "unique")
        seen: set[str] = set()
        out = []
        for x in xs:
            key = canonical_json(x)
            if key not in seen:
                seen.add(key)
                out.append(x)
        return out
    if fn == "concat":
        if args and all(isinstance(a, list) for a in args):
            out = []
            for a in args:
                out.extend(a)
            return out
        return "".join(_render_scalar(a) if not isinstance(a, str) else a for a in args)
    if fn == "count":
        if len(args) != 2:
            raise ProgramRuntimeError("count takes (list, value)")
        xs = _as_list(args[0], "count")
        target = canonical_json(args[1])
        return sum(1 for x in xs if canonical_json(x) == target)
    raise ProgramRuntimeError(f"unknown builtin {fn!r}")


def _compare(op: str, left: Any, right: Any) -> bool:
    if op == "==":
        return canonical_json(left) == canonical_json(right)
    if op == "!=":
        return canonical_json(left) != canonical_json(right)
    lnum = isinstance(left, (int, float)) and not isinstance(left, bool)
    rnum = isinstance(right, (int, float)) and not isinstance(right, bool)
    if lnum and rnum or (isinstance(left, str) and isinstance(right, str)):
        if op == "<":
            return left < right
        if op == "<=":
            return left <= right
        if op == ">":
            return left > right
        if op == ">=":
            return left >= right
    raise ProgramRuntimeError(f"cannot order {left!r} {op} {right!r}")


def evaluate_expr(node: Any, env: dict[str, Any]) -> Any:
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, ListLit):
        return [evaluate_expr(item, env) for item in node.items]
    if isinstance(node, Name):
        if node.ident not in env:
            raise ProgramRuntimeError(f"unbound name {node.ident!r}")
        return env[node.ident]
    if isinstance(node, Field):
        base = evaluate_expr(node.base, env)
        if not isinstance(base, dict) or node.name not in base:
            raise ProgramRuntimeError(f"no field {node.name!r} on {base!r}")
        return base[node.name]
    if isinstance(node, Index):
        base = evaluate_expr(node.base, env)
        xs = _as_list(base, "indexing")
        if not 0 <= node.index < len(xs):
            raise ProgramRuntimeError(f"index {node.index} out of range (len {len(xs)})")
        return xs[node.index]
    if isinstance(node, BuiltinCall):
        args = [evaluate_expr(a, env) for a in node.args]
        return _builtin(node.fn, args)
    if isinstance(node, FilterExpr):
        xs = _as_list(evaluate_expr(node.base, env), "filter")
        out = []
        for item in xs:
            scoped = dict(env)
            scoped["item"] = item
            if _compare(
                node.predicate.op,
                evaluate_expr(node.predicate.left, scoped),
                evaluate_expr(node.predicate.right, scoped),
            ):
                out.append(item)
        return out
    if isinstance(node, MapExpr):
        xs = _as_list(evaluate_expr(node.base, env), "map")
        out = []
        for item in xs:
            scoped = dict(env)
            scoped["item"] = item
            out.append(evaluate_expr(node.body, scoped))
        return out
    if isinstance(node, BinOp):
        left = _num(evaluate_expr(node.left, env), f"operator {node.op}")
        right = _num(evaluate_expr(node.right, env), f"operator {node.op}")
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            if right == 0:
                raise ProgramRuntimeError("division by zero")
            return left / right
    raise ProgramRuntimeError(f"cannot evaluate node {node!r}")

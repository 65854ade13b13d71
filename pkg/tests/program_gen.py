"""Random step-program generator with construction-time expected values.

Every generated expression carries its value, computed here with plain
Python operations while the expression source is being assembled. Nothing
from the interpreter under test is imported. Arithmetic is generated as
flat chains and evaluated with the documented precedence (* / before + -,
left associative), since the surface grammar has no parentheses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any

WORDS = ("alpha", "bravo", "delta", "echo", "foxtrot", "lima", "oscar", "tango")


@dataclass
class ProgramCase:
    source: str
    ambient: dict[str, Any]
    expected: dict[str, Any]


def _render_num(x) -> str:
    return repr(x)


def _chain_value(tokens: list) -> Any:
    """Evaluate [v0, op1, v1, op2, v2...] with * / binding tighter than + -."""
    values = [tokens[0]]
    ops = []
    i = 1
    while i < len(tokens):
        op, val = tokens[i], tokens[i + 1]
        if op in ("*", "/"):
            left = values.pop()
            values.append(left * val if op == "*" else left / val)
        else:
            ops.append(op)
            values.append(val)
        i += 2
    result = values[0]
    for op, val in zip(ops, values[1:]):
        result = result + val if op == "+" else result - val
    return result


class _Gen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.env: dict[str, Any] = {}

    # ------------------------------------------------- value constructors

    def _num(self):
        if self.rng.random() < 0.5:
            return self.rng.randint(0, 30)
        return self.rng.choice((0.5, 1.5, 2.5, 3.25, 7.75, 12.5))

    def make_ambient(self) -> dict[str, Any]:
        rng = self.rng
        recs = [
            {
                "id": f"r{i}",
                "amount": self._num(),
                "qty": rng.randint(0, 9),
            }
            for i in range(rng.randint(1, 8))
        ]
        ambient = {
            "nums": [self._num() for _ in range(rng.randint(0, 8))],
            "recs": recs,
            "rec": {"label": rng.choice(WORDS), "weight": self._num()},
            "s1": rng.choice(WORDS),
            "n1": self._num(),
        }
        self.env = dict(ambient)
        return ambient

    # -------------------------------------------------------- expressions

    def num_atom(self, depth: int) -> tuple[str, Any]:
        rng = self.rng
        choices = ["lit", "name", "len", "field"]
        if depth < 2:
            choices += ["sum", "minmax", "index", "count"]
        kind = rng.choice(choices)
        if kind == "name":
            numeric = [k for k, v in self.env.items() if _is_num(v)]
            if numeric:
                name = rng.choice(numeric)
                return name, self.env[name]
            kind = "lit"
        if kind == "lit":
            v = self._num()
            return _render_num(v), v
        if kind == "len":
            src, val = self.num_list_expr(depth + 1)
            return f"len({src})", len(val)
        if kind == "field":
            if rng.random() < 0.5:
                return "rec.weight", self.env["rec"]["weight"]
            recs = self.env["recs"]
            if recs:
                i = rng.randrange(len(recs))
                field = rng.choice(("amount", "qty"))
                return f"recs[{i}].{field}", recs[i][field]
            return "rec.weight", self.env["rec"]["weight"]
        if kind == "sum":
            src, val = self.num_list_expr(depth + 1)
            return f"sum({src})", sum(val)
        if kind == "minmax":
            src, val = self.num_list_expr(depth + 1)
            if not val:
                return f"len({src})", 0
            fn = rng.choice(("min", "max"))
            return f"{fn}({src})", min(val) if fn == "min" else max(val)
        if kind == "index":
            src, val = self.num_list_expr(depth + 1)
            if not val:
                return f"len({src})", 0
            i = rng.randrange(len(val))
            return f"{src}[{i}]", val[i]
        if kind == "count":
            src, val = self.num_list_expr(depth + 1)
            target = rng.choice(val) if val and rng.random() < 0.7 else self._num()
            if target < 0:  # the grammar has no negative literals
                target = self._num()
            return f"count({src}, {_render_num(target)})", sum(
                1 for x in val if _canon(x) == _canon(target)
            )
        raise AssertionError(kind)

    def num_expr(self, depth: int) -> tuple[str, Any]:
        rng = self.rng
        src, val = self.num_atom(depth)
        if depth >= 2 or rng.random() < 0.5:
            return src, val
        parts_src = [src]
        tokens: list = [val]
        for _ in range(rng.randint(1, 3)):
            op = rng.choice(("+", "-", "*", "/"))
            nsrc, nval = self.num_atom(depth + 1)
            if op == "/" and (not _is_num(nval) or nval == 0):
                nval = rng.randint(1, 9)
                nsrc = _render_num(nval)
            parts_src += [op, nsrc]
            tokens += [op, nval]
        return " ".join(str(p) for p in parts_src), _chain_value(tokens)

    def num_list_expr(self, depth: int) -> tuple[str, list]:
        rng = self.rng
        kinds = ["nums", "lit"]
        if depth < 3:
            kinds += ["filter", "map_amount", "map_arith", "sort", "unique", "concat"]
        kind = rng.choice(kinds)
        if kind == "nums":
            return "nums", self.env["nums"]
        if kind == "lit":
            vals = [self._num() for _ in range(rng.randint(0, 5))]
            return "[" + ", ".join(_render_num(v) for v in vals) + "]", vals
        if kind == "filter":
            src, val = self.num_list_expr(depth + 1)
            pivot = self._num()
            op = rng.choice((">", "<", ">=", "<=", "!=", "=="))
            out = [x for x in val if _compare(op, x, pivot)]
            return f"filter({src}, item {op} {_render_num(pivot)})", out
        if kind == "map_amount":
            return "map(recs, item.amount)", [r["amount"] for r in self.env["recs"]]
        if kind == "map_arith":
            src, val = self.num_list_expr(depth + 1)
            k = rng.randint(1, 5)
            op = rng.choice(("+", "*", "-"))
            fn = {"+": lambda x: x + k, "*": lambda x: x * k, "-": lambda x: x - k}[op]
            return f"map({src}, item {op} {k})", [fn(x) for x in val]
        if kind == "sort":
            src, val = self.num_list_expr(depth + 1)
            return f"sort({src})", sorted(val)
        if kind == "unique":
            src, val = self.num_list_expr(depth + 1)
            seen, out = set(), []
            for x in val:
                if _canon(x) not in seen:
                    seen.add(_canon(x))
                    out.append(x)
            return f"unique({src})", out
        if kind == "concat":
            a_src, a = self.num_list_expr(depth + 1)
            b_src, b = self.num_list_expr(depth + 1)
            return f"concat({a_src}, {b_src})", list(a) + list(b)
        raise AssertionError(kind)

    def str_expr(self, depth: int) -> tuple[str, str]:
        rng = self.rng
        kind = rng.choice(("lit", "s1", "label", "rec_id", "concat"))
        if kind == "lit":
            w = rng.choice(WORDS)
            return f'"{w}"', w
        if kind == "s1":
            return "s1", self.env["s1"]
        if kind == "label":
            return "rec.label", self.env["rec"]["label"]
        if kind == "rec_id":
            recs = self.env["recs"]
            if recs:
                i = rng.randrange(len(recs))
                return f"recs[{i}].id", recs[i]["id"]
            return "s1", self.env["s1"]
        a_src, a = self.str_expr(min(depth + 1, 3)) if depth < 3 else ('"x"', "x")
        b_src, b = ('"-"', "-")
        return f"concat({a_src}, {b_src})", a + b

    def rec_list_expr(self, depth: int) -> tuple[str, list]:
        rng = self.rng
        if depth < 2 and rng.random() < 0.4:
            pivot = self._num()
            op = rng.choice((">", "<", ">=", "<="))
            out = [r for r in self.env["recs"] if _compare(op, r["amount"], pivot)]
            return f"filter(recs, item.amount {op} {_render_num(pivot)})", out
        return "recs", self.env["recs"]

    def any_expr(self, depth: int) -> tuple[str, Any]:
        roll = self.rng.random()
        if roll < 0.45:
            return self.num_expr(depth)
        if roll < 0.65:
            return self.num_list_expr(depth)
        if roll < 0.8:
            return self.str_expr(depth)
        if roll < 0.9:
            return self.rec_list_expr(depth)
        if roll < 0.95:
            recs = self.rec_list_expr(depth)
            src, val = recs
            return f"len({src})", len(val)
        lit = self.rng.choice((True, False, None))
        return {True: "true", False: "false", None: "null"}[lit], lit


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _canon(v):
    return ("f", float(v)) if _is_num(v) else ("o", v)


def _compare(op: str, a, b) -> bool:
    return {
        ">": a > b,
        "<": a < b,
        ">=": a >= b,
        "<=": a <= b,
        "==": _canon(a) == _canon(b),
        "!=": _canon(a) != _canon(b),
    }[op]


def generate_case(rng: random.Random) -> ProgramCase:
    gen = _Gen(rng)
    ambient = gen.make_ambient()
    lines = []
    for i in range(rng.randint(0, 3)):
        name = f"v{i}"
        src, val = gen.any_expr(0)
        lines.append(f"let {name} = {src}")
        gen.env[name] = val
    expected = {}
    entries = []
    for j in range(rng.randint(1, 3)):
        src, val = gen.any_expr(0)
        entries.append(f"out{j}: {src}")
        expected[f"out{j}"] = val
    lines.append("return {" + ", ".join(entries) + "}")
    return ProgramCase("\n".join(lines), ambient, expected)

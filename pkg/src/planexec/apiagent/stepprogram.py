"""The step-program language: lexer, parser, AST, and static checks.

Surface syntax, one statement per line:

    let evens = filter(xs, item > 2)
    call r = shop-api.list_orders(user: user_id)
    return {order_count: len(r.items)}

A program is a sequence of let/call bindings ending in exactly one return.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Optional

BUILTINS = ("len", "sum", "min", "max", "sort", "unique", "concat", "count")
SPECIAL_FORMS = ("filter", "map")
KEYWORDS = ("let", "call", "return", "true", "false", "null")
COMPARISONS = ("==", "!=", "<=", ">=", "<", ">")


class ProgramParseError(Exception):
    """The source text does not follow the grammar."""


class StaticCheckError(Exception):
    """The program parses but breaks a static rule."""

    def __init__(self, statement_index: int, message: str):
        super().__init__(f"statement {statement_index + 1}: {message}")
        self.statement_index = statement_index


# ---------------------------------------------------------------- tokens

_TOKEN_SPEC = [
    ("NUMBER", r"\d+(?:\.\d+)?"),
    ("STRING", r'"(?:[^"\\]|\\.)*"'),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("CMP", r"==|!=|<=|>=|<|>"),
    ("SYM", r"[()\[\]{}.,:=+\-*/]"),
    ("WS", r"[ \t]+"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int

    @property
    def end(self) -> int:
        return self.col + len(self.text)


def _lex_line(text: str, line_no: int) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ProgramParseError(f"line {line_no}: bad character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "WS":
            tokens.append(Token(kind, m.group(), line_no, pos))
        pos = m.end()
    return tokens


# ------------------------------------------------------------------- AST


@dataclass(frozen=True)
class Lit:
    value: Any


@dataclass(frozen=True)
class ListLit:
    items: tuple


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Field:
    base: Any
    name: str


@dataclass(frozen=True)
class Index:
    base: Any
    index: int


@dataclass(frozen=True)
class BuiltinCall:
    fn: str
    args: tuple


@dataclass(frozen=True)
class FilterExpr:
    base: Any
    predicate: "Predicate"


@dataclass(frozen=True)
class MapExpr:
    base: Any
    body: Any  # expr over `item`


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Any
    right: Any


@dataclass(frozen=True)
class Predicate:
    left: Any  # expr over `item`
    op: str
    right: Any


@dataclass(frozen=True)
class LetStmt:
    name: str
    expr: Any


@dataclass(frozen=True)
class CallStmt:
    name: str
    tool_id: str
    args: tuple[tuple[str, Any], ...]


@dataclass(frozen=True)
class ReturnStmt:
    entries: tuple[tuple[str, Any], ...]


@dataclass(frozen=True)
class StepProgram:
    statements: tuple
    source_text: str

    @property
    def returns(self) -> ReturnStmt:
        return self.statements[-1]

    def called_tools(self) -> list[str]:
        return [s.tool_id for s in self.statements if isinstance(s, CallStmt)]


# ---------------------------------------------------------------- parser


class _LineParser:
    def __init__(self, tokens: list[Token], line_no: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ProgramParseError(f"line {self.line_no}: unexpected end of line")
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ProgramParseError(
                f"line {self.line_no}: expected {text!r}, found {tok.text!r}"
            )
        return tok

    def expect_ident(self) -> str:
        tok = self.next()
        if tok.kind != "IDENT" or tok.text in KEYWORDS:
            raise ProgramParseError(
                f"line {self.line_no}: expected identifier, found {tok.text!r}"
            )
        return tok.text

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    # statement := let | call | return
    def statement(self):
        head = self.peek()
        if head is None:
            raise ProgramParseError(f"line {self.line_no}: empty statement")
        if head.text == "let":
            self.next()
            name = self.expect_ident()
            self.expect("=")
            expr = self.expr()
            self._require_end()
            return LetStmt(name, expr)
        if head.text == "call":
            self.next()
            name = self.expect_ident()
            self.expect("=")
            tool_id = self.tool_id()
            self.expect("(")
            args = []
            if self.peek() and self.peek().text != ")":
                while True:
                    pname = self.expect_ident()
                    self.expect(":")
                    args.append((pname, self.expr()))
                    if self.peek() and self.peek().text == ",":
                        self.next()
                        continue
                    break
            self.expect(")")
            self._require_end()
            return CallStmt(name, tool_id, tuple(args))
        if head.text == "return":
            self.next()
            self.expect("{")
            entries = []
            while True:
                name = self.expect_ident()
                self.expect(":")
                entries.append((name, self.expr()))
                if self.peek() and self.peek().text == ",":
                    self.next()
                    continue
                break
            self.expect("}")
            self._require_end()
            return ReturnStmt(tuple(entries))
        raise ProgramParseError(
            f"line {self.line_no}: statements start with let/call/return, found {head.text!r}"
        )

    def _require_end(self):
        if not self.at_end():
            raise ProgramParseError(
                f"line {self.line_no}: trailing tokens after statement: {self.peek().text!r}"
            )

    # TOOLID := IDENT (("-"|".") IDENT)* assembled from adjacent tokens
    def tool_id(self) -> str:
        first = self.next()
        if first.kind != "IDENT":
            raise ProgramParseError(
                f"line {self.line_no}: expected tool id, found {first.text!r}"
            )
        parts = [first.text]
        prev_end = first.end
        saw_dot = False
        while True:
            tok = self.peek()
            if tok is None or tok.text not in ("-", ".") or tok.col != prev_end:
                break
            sep = self.next()
            ident = self.next()
            if ident.kind != "IDENT" or ident.col != sep.end:
                raise ProgramParseError(
                    f"line {self.line_no}: malformed tool id near {ident.text!r}"
                )
            parts.append(sep.text)
            parts.append(ident.text)
            if sep.text == ".":
                saw_dot = True
            prev_end = ident.end
        if not saw_dot:
            raise ProgramParseError(
                f"line {self.line_no}: tool id must be app.operation, got {''.join(parts)!r}"
            )
        return "".join(parts)

    # expr with precedence: additive > multiplicative > postfix > atom
    def expr(self):
        return self.additive()

    def additive(self):
        node = self.multiplicative()
        while self.peek() and self.peek().text in ("+", "-"):
            op = self.next().text
            node = BinOp(op, node, self.multiplicative())
        return node

    def multiplicative(self):
        node = self.postfix()
        while self.peek() and self.peek().text in ("*", "/"):
            op = self.next().text
            node = BinOp(op, node, self.postfix())
        return node

    def postfix(self):
        node = self.atom()
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok.text == ".":
                self.next()
                node = Field(node, self.expect_ident())
            elif tok.text == "[":
                self.next()
                idx = self.next()
                if idx.kind != "NUMBER" or "." in idx.text:
                    raise ProgramParseError(
                        f"line {self.line_no}: index must be an integer literal"
                    )
                self.expect("]")
                node = Index(node, int(idx.text))
            else:
                break
        return node

    def atom(self):
        tok = self.next()
        if tok.kind == "NUMBER":
            return Lit(float(tok.text) if "." in tok.text else int(tok.text))
        if tok.kind == "STRING":
            body = tok.text[1:-1]
            return Lit(body.replace('\\"', '"').replace("\\\\", "\\"))
        if tok.text == "[":
            items = []
            if self.peek() and self.peek().text != "]":
                while True:
                    items.append(self.expr())
                    if self.peek() and self.peek().text == ",":
                        self.next()
                        continue
                    break
            self.expect("]")
            return ListLit(tuple(items))
        if tok.kind == "IDENT":
            if tok.text == "true":
                return Lit(True)
            if tok.text == "false":
                return Lit(False)
            if tok.text == "null":
                return Lit(None)
            if tok.text == "filter":
                self.expect("(")
                base = self.expr()
                self.expect(",")
                pred = self.predicate()
                self.expect(")")
                return FilterExpr(base, pred)
            if tok.text == "map":
                self.expect("(")
                base = self.expr()
                self.expect(",")
                body = self.expr()
                self.expect(")")
                return MapExpr(base, body)
            if tok.text in BUILTINS:
                self.expect("(")
                args = [self.expr()]
                while self.peek() and self.peek().text == ",":
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                return BuiltinCall(tok.text, tuple(args))
            if tok.text in KEYWORDS:
                raise ProgramParseError(
                    f"line {self.line_no}: keyword {tok.text!r} cannot start an expression"
                )
            return Name(tok.text)
        raise ProgramParseError(
            f"line {self.line_no}: unexpected token {tok.text!r} in expression"
        )

    def predicate(self) -> Predicate:
        left = self.expr()
        tok = self.next()
        if tok.kind != "CMP":
            raise ProgramParseError(
                f"line {self.line_no}: predicate needs a comparison, found {tok.text!r}"
            )
        right = self.expr()
        return Predicate(left, tok.text, right)


def parse_program(source_text: str) -> StepProgram:
    statements = []
    line_no = 0
    for raw_line in source_text.splitlines():
        line_no += 1
        stripped = raw_line.strip()
        if not stripped:
            continue
        tokens = _lex_line(stripped, line_no)
        statements.append(_LineParser(tokens, line_no).statement())
    if not statements:
        raise ProgramParseError("empty program")
    returns = [i for i, s in enumerate(statements) if isinstance(s, ReturnStmt)]
    if len(returns) != 1 or returns[0] != len(statements) - 1:
        raise ProgramParseError("exactly one return is required, in final position")
    return StepProgram(tuple(statements), source_text)


# --------------------------------------------------------- static checks


def _free_names(node: Any, bound_item: bool = False) -> set[str]:
    if isinstance(node, Name):
        if bound_item and node.ident == "item":
            return set()
        return {node.ident}
    if isinstance(node, Lit):
        return set()
    if isinstance(node, ListLit):
        out: set[str] = set()
        for item in node.items:
            out |= _free_names(item, bound_item)
        return out
    if isinstance(node, Field):
        return _free_names(node.base, bound_item)
    if isinstance(node, Index):
        return _free_names(node.base, bound_item)
    if isinstance(node, BuiltinCall):
        out = set()
        for a in node.args:
            out |= _free_names(a, bound_item)
        return out
    if isinstance(node, FilterExpr):
        out = _free_names(node.base, bound_item)
        out |= _free_names(node.predicate.left, True)
        out |= _free_names(node.predicate.right, True)
        return out
    if isinstance(node, MapExpr):
        return _free_names(node.base, bound_item) | _free_names(node.body, True)
    if isinstance(node, BinOp):
        return _free_names(node.left, bound_item) | _free_names(node.right, bound_item)
    raise TypeError(f"unknown AST node: {node!r}")


def static_check(
    program: StepProgram,
    ambient_names: set[str],
    shortlist: dict[str, Any] | None = None,
) -> None:
    """Binding-order, shortlist membership, and required-parameter checks.

    `shortlist` maps tool_id -> ToolSpec; None skips tool checks (used by
    the bare-interpreter tests).
    """
    bound = set(ambient_names)
    for i, stmt in enumerate(program.statements):
        if isinstance(stmt, LetStmt):
            free = _free_names(stmt.expr) - bound
            if free:
                raise StaticCheckError(i, f"unbound name(s): {sorted(free)}")
            bound.add(stmt.name)
        elif isinstance(stmt, CallStmt):
            if shortlist is not None:
                tool = shortlist.get(stmt.tool_id)
                if tool is None:
                    raise StaticCheckError(
                        i, f"tool {stmt.tool_id!r} is not in the shortlist"
                    )
                declared = {p.name for p in tool.params}
                given = {name for name, _ in stmt.args}
                unknown = given - declared
                if unknown:
                    raise StaticCheckError(
                        i, f"unknown parameter(s) for {stmt.tool_id}: {sorted(unknown)}"
                    )
                missing = {p.name for p in tool.required_params()} - given
                if missing:
                    raise StaticCheckError(
                        i, f"missing required parameter(s) for {stmt.tool_id}: {sorted(missing)}"
                    )
            for _, arg in stmt.args:
                free = _free_names(arg) - bound
                if free:
                    raise StaticCheckError(i, f"unbound name(s): {sorted(free)}")
            bound.add(stmt.name)
        elif isinstance(stmt, ReturnStmt):
            for _, expr in stmt.entries:
                free = _free_names(expr) - bound
                if free:
                    raise StaticCheckError(i, f"unbound name(s): {sorted(free)}")

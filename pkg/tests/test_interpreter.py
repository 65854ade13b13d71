import random

import pytest

from planexec.apiagent.interpreter import ProgramRuntimeError, evaluate_expr
from planexec.apiagent.stepprogram import LetStmt, ReturnStmt, parse_program, static_check
from planexec.jsonutil import canonical_json

from program_gen import generate_case


def run_pure(source: str, ambient: dict) -> dict:
    """Parse, statically check, and evaluate a call-free program."""
    program = parse_program(source)
    static_check(program, set(ambient), None)
    env = dict(ambient)
    for stmt in program.statements:
        if isinstance(stmt, LetStmt):
            env[stmt.name] = evaluate_expr(stmt.expr, env)
        elif isinstance(stmt, ReturnStmt):
            return {name: evaluate_expr(expr, env) for name, expr in stmt.entries}
    raise AssertionError("no return")


class TestBuiltins:
    def test_len_on_literal(self):
        assert run_pure("let n = len([1, 2, 3])\nreturn {n: n}", {}) == {"n": 3}

    def test_filter_matches_brute_force(self):
        xs = [1, 2, 3, 4]
        out = run_pure("let evens = filter(xs, item > 2)\nreturn {evens: evens}", {"xs": xs})
        assert out == {"evens": [x for x in xs if x > 2]}

    def test_map_field_access(self):
        recs = [{"amount": 3}, {"amount": 9}]
        out = run_pure("return {amounts: map(recs, item.amount)}", {"recs": recs})
        assert out == {"amounts": [3, 9]}

    def test_sum_sort_unique_concat_count(self):
        ambient = {"xs": [3, 1, 3, 2]}
        out = run_pure(
            "let s = sum(xs)\nlet o = sort(xs)\nlet u = unique(xs)\n"
            "return {s: s, o: o, u: u, c: count(xs, 3), j: concat(xs, [9])}",
            ambient,
        )
        assert out == {"s": 9, "o": [1, 2, 3, 3], "u": [3, 1, 2], "c": 2, "j": [3, 1, 3, 2, 9]}

    def test_concat_strings_coerces_scalars(self):
        out = run_pure('return {msg: concat("total ", 5, " items")}', {})
        assert out == {"msg": "total 5 items"}

    def test_division_true_and_by_zero(self):
        assert run_pure("return {q: 7 / 2}", {}) == {"q": 3.5}
        with pytest.raises(ProgramRuntimeError, match="zero"):
            run_pure("return {q: 7 / 0}", {})

    def test_missing_field_raises(self):
        with pytest.raises(ProgramRuntimeError, match="no field"):
            run_pure("return {x: rec.nope}", {"rec": {"a": 1}})

    def test_index_out_of_range(self):
        with pytest.raises(ProgramRuntimeError, match="out of range"):
            run_pure("return {x: xs[5]}", {"xs": [1]})


class TestGenerativeEquivalence:
    def test_thousand_random_programs_match_oracle(self):
        rng = random.Random(20260810)
        for i in range(1000):
            case = generate_case(rng)
            got = run_pure(case.source, case.ambient)
            assert canonical_json(got) == canonical_json(case.expected), (
                f"case {i} diverged:\n{case.source}\nambient={case.ambient}\n"
                f"got={got}\nexpected={case.expected}"
            )

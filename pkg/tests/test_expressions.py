"""Parser, evaluator, formatter and free-parameter tests.

The evaluator is cross-checked against two independent oracles: a naive
tree-walking interpreter written here from the node definitions alone,
and Python's own eval over the formatted source (the dialect is
Python-evaluable by construction).
"""

import random

import pytest

from tunespace.errors import (
    DivisionByZeroError,
    OverflowValueError,
    ParseError,
    TypeMismatchError,
    UnboundParameterError,
    UnsupportedSyntaxError,
)
from tunespace.expressions import (
    Binary,
    Comparison,
    Literal,
    ParamRef,
    Unary,
    evaluate,
    format_expression,
    free_parameters,
    infer_type,
    parse_expression,
)


# ---------------------------------------------------------------------------
# Independent oracle: naive recursive interpreter, no sharing with evaluate()


def naive_eval(expr, env):
    kind = type(expr).__name__
    if kind == "Literal":
        return expr.value
    if kind == "ParamRef":
        return env[expr.name]
    if kind == "Unary":
        if expr.op == "neg":
            return -naive_eval(expr.operand, env)
        return not naive_eval(expr.operand, env)
    if kind == "Binary":
        if expr.op == "and":
            return naive_eval(expr.left, env) and naive_eval(expr.right, env)
        if expr.op == "or":
            return naive_eval(expr.left, env) or naive_eval(expr.right, env)
        left = naive_eval(expr.left, env)
        right = naive_eval(expr.right, env)
        return {
            "+": lambda: left + right,
            "-": lambda: left - right,
            "*": lambda: left * right,
            "/": lambda: left / right,
            "//": lambda: left // right,
            "%": lambda: left % right,
            "**": lambda: left**right,
        }[expr.op]()
    # Comparison: conjunction of adjacent pairs
    ops = {"<": lambda a, b: a < b, "<=": lambda a, b: a <= b,
           ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
           "==": lambda a, b: a == b, "!=": lambda a, b: a != b}
    values = [naive_eval(op, env) for op in expr.operands]
    return all(ops[o](a, b) for o, a, b in zip(expr.ops, values, values[1:]))


# ---------------------------------------------------------------------------
# Parsing


def test_parse_thread_block_constraint():
    expr = parse_expression("32 <= thread_block_x * thread_block_y <= 1024")
    assert expr == Comparison(
        (
            Literal(32),
            Binary("*", ParamRef("thread_block_x"), ParamRef("thread_block_y")),
            Literal(1024),
        ),
        ("<=", "<="),
    )


def test_parse_true_literal():
    assert parse_expression("True") == Literal(True)


def test_parse_error_at_end_of_input():
    with pytest.raises(ParseError) as err:
        parse_expression("a <=")
    assert err.value.position == 4


def test_parse_error_offsets():
    with pytest.raises(ParseError) as err:
        parse_expression("a + $")
    assert err.value.position == 4
    with pytest.raises(ParseError) as err:
        parse_expression("(a + b")
    assert "')'" in str(err.value)


def test_parse_rejects_empty():
    with pytest.raises(ParseError):
        parse_expression("")
    with pytest.raises(ParseError):
        parse_expression("   ")


def test_parse_rejects_unsupported_syntax():
    with pytest.raises(UnsupportedSyntaxError):
        parse_expression("max(a, b) < 3")
    with pytest.raises(UnsupportedSyntaxError):
        parse_expression("a[0] < 3")
    with pytest.raises(UnsupportedSyntaxError):
        parse_expression("lambda a: a < 3")


def test_parse_rejects_reserved_words():
    with pytest.raises(ParseError):
        parse_expression("class + 1 > 0")


def test_parse_rejects_single_equals():
    with pytest.raises(ParseError):
        parse_expression("a = 3")


def test_precedence_shapes():
    assert parse_expression("1 + 2 * 3") == Binary(
        "+", Literal(1), Binary("*", Literal(2), Literal(3))
    )
    assert parse_expression("(1 + 2) * 3") == Binary(
        "*", Binary("+", Literal(1), Literal(2)), Literal(3)
    )
    # pow binds tighter than unary minus and is right-associative
    assert parse_expression("-2 ** 2") == Unary("neg", Binary("**", Literal(2), Literal(2)))
    assert parse_expression("2 ** 3 ** 2") == Binary(
        "**", Literal(2), Binary("**", Literal(3), Literal(2))
    )
    assert parse_expression("2 ** -3") == Binary("**", Literal(2), Unary("neg", Literal(3)))
    # not binds looser than comparisons, tighter than and/or
    assert parse_expression("not a == b") == Unary(
        "not", Comparison((ParamRef("a"), ParamRef("b")), ("==",))
    )
    assert parse_expression("a and b or c") == Binary(
        "or", Binary("and", ParamRef("a"), ParamRef("b")), ParamRef("c")
    )


def test_chained_comparison_is_one_node():
    expr = parse_expression("2 <= y <= 32 <= x*y <= 1024")
    assert isinstance(expr, Comparison)
    assert len(expr.operands) == 5
    assert expr.ops == ("<=", "<=", "<=", "<=")


def test_number_literals():
    assert parse_expression("1.5e3") == Literal(1500.0)
    assert parse_expression(".5") == Literal(0.5)
    assert parse_expression("10.") == Literal(10.0)
    with pytest.raises(ParseError):
        parse_expression(str(2**64))
    with pytest.raises(ParseError):
        parse_expression("1e999")


def test_string_literals():
    assert parse_expression("'abc'") == Literal("abc")
    assert parse_expression("\"a\\\"b\"") == Literal('a"b')
    assert parse_expression(r"'a\'b'") == Literal("a'b")
    with pytest.raises(ParseError):
        parse_expression("'unterminated")


def test_literal_tags_are_distinct():
    assert Literal(1) != Literal(True)
    assert Literal(1) != Literal(1.0)
    assert Literal(1.0) == Literal(1.0)


# ---------------------------------------------------------------------------
# Evaluation


def test_evaluate_examples():
    assert evaluate(parse_expression("x*y >= 32"), {"x": 8, "y": 4}) is True
    assert evaluate(parse_expression("x // y"), {"x": 7, "y": 2}) == 3
    assert evaluate(parse_expression("2 <= y <= 32"), {"y": 1}) is False


def test_floored_division_and_remainder():
    assert evaluate(parse_expression("-7 // 2"), {}) == -4
    assert evaluate(parse_expression("7 // -2"), {}) == -4
    # remainder sign follows the divisor
    assert evaluate(parse_expression("7 % -2"), {}) == -1
    assert evaluate(parse_expression("-7 % 2"), {}) == 1


def test_short_circuit():
    assert evaluate(parse_expression("False and 1 / 0 > 0"), {}) is False
    assert evaluate(parse_expression("True or 1 / 0 > 0"), {}) is True
    with pytest.raises(DivisionByZeroError):
        evaluate(parse_expression("True and 1 / 0 > 0"), {})


def test_boolean_context_requires_booleans():
    with pytest.raises(TypeMismatchError):
        evaluate(parse_expression("1 and True"), {})
    with pytest.raises(TypeMismatchError):
        evaluate(parse_expression("not 1"), {})
    with pytest.raises(TypeMismatchError):
        evaluate(parse_expression("True + 1"), {})


def test_unbound_parameter():
    with pytest.raises(UnboundParameterError):
        evaluate(parse_expression("x + 1"), {})


def test_integer_overflow_detection():
    big = 2**62
    with pytest.raises(OverflowValueError):
        evaluate(parse_expression("x * 4"), {"x": big})
    with pytest.raises(OverflowValueError):
        evaluate(parse_expression("2 ** 64"), {})
    with pytest.raises(OverflowValueError):
        evaluate(parse_expression("2 ** 10 ** 6"), {})  # guarded before computing
    assert evaluate(parse_expression("2 ** 62"), {}) == 2**62


def test_real_results_stay_finite():
    with pytest.raises(OverflowValueError):
        evaluate(parse_expression("1e308 * 10"), {})
    with pytest.raises(DivisionByZeroError):
        evaluate(parse_expression("1 / 0"), {})
    with pytest.raises(DivisionByZeroError):
        evaluate(parse_expression("1.0 % 0.0"), {})


def test_cross_tag_equality_is_never_equal():
    assert evaluate(parse_expression("x == 1"), {"x": "1"}) is False
    assert evaluate(parse_expression("x != 1"), {"x": "1"}) is True
    assert evaluate(parse_expression("x == 1"), {"x": True}) is False
    # int/real compare numerically after promotion
    assert evaluate(parse_expression("x == 1"), {"x": 1.0}) is True


def test_text_ordering_rejected():
    with pytest.raises(TypeMismatchError):
        evaluate(parse_expression("x < 'b'"), {"x": "a"})
    assert evaluate(parse_expression("x == 'a'"), {"x": "a"}) is True


def test_mixed_arithmetic_promotes_to_real():
    result = evaluate(parse_expression("x + 0.5"), {"x": 1})
    assert result == 1.5 and isinstance(result, float)
    result = evaluate(parse_expression("7 / 2"), {})
    assert result == 3.5


def test_negative_fractional_power_rejected():
    with pytest.raises(Exception):
        evaluate(parse_expression("x ** 0.5"), {"x": -2.0})


# ---------------------------------------------------------------------------
# Free parameters


def test_free_parameters():
    expr = parse_expression("x * y <= 1024")
    assert free_parameters(expr) == ["x", "y"]
    assert free_parameters(Literal(True)) == []
    # first-appearance order, deduplicated
    expr = parse_expression("2 <= y <= 32 <= x*y <= 1024")
    assert free_parameters(expr) == ["y", "x"]


# ---------------------------------------------------------------------------
# Formatting


def test_format_examples():
    expr = Comparison((Literal(32), Binary("*", ParamRef("x"), ParamRef("y"))), ("<=",))
    assert format_expression(expr) == "32 <= x * y"
    expr = Binary("*", Binary("+", ParamRef("a"), ParamRef("b")), ParamRef("c"))
    assert format_expression(expr) == "(a + b) * c"


def test_format_preserves_structure():
    cases = [
        "a - (b - c)",
        "a - b - c",
        "(a ** b) ** c",
        "a ** b ** c",
        "-(a * b)",
        "-a * b",
        "not (a and b)",
        "not a and b",
        "2 ** -3",
        "a % b // c",
        "(x == y) == z",
    ]
    for source in cases:
        expr = parse_expression(source)
        assert parse_expression(format_expression(expr)) == expr, source


def test_format_round_trip_chained_input():
    source = "2 <= block_size_y <= 32 <= block_size_x * block_size_y <= 1024"
    expr = parse_expression(source)
    assert parse_expression(format_expression(expr)) == expr


# ---------------------------------------------------------------------------
# Random round-trip and oracle-agreement properties


def random_expr(rng, names, depth, want):
    """Random well-typed expression tree ('numeric' or 'bool')."""
    if depth <= 0:
        if want == "numeric":
            if names and rng.random() < 0.6:
                return ParamRef(rng.choice(names))
            if rng.random() < 0.25:
                return Literal(round(rng.uniform(0, 8), 2))
            return Literal(rng.randrange(0, 9))
        return Literal(rng.random() < 0.5)
    if want == "numeric":
        which = rng.random()
        if which < 0.15:
            return Unary("neg", random_expr(rng, names, depth - 1, "numeric"))
        op = rng.choice(["+", "-", "*"])
        return Binary(op, random_expr(rng, names, depth - 1, "numeric"),
                      random_expr(rng, names, depth - 1, "numeric"))
    which = rng.random()
    if which < 0.2:
        return Unary("not", random_expr(rng, names, depth - 1, "bool"))
    if which < 0.5:
        op = rng.choice(["and", "or"])
        return Binary(op, random_expr(rng, names, depth - 1, "bool"),
                      random_expr(rng, names, depth - 1, "bool"))
    count = rng.choice([2, 2, 3])
    operands = tuple(random_expr(rng, names, depth - 1, "numeric") for _ in range(count))
    ops = tuple(rng.choice(["<", "<=", ">", ">=", "==", "!="]) for _ in range(count - 1))
    return Comparison(operands, ops)


def test_random_round_trip():
    rng = random.Random(2024)
    names = ["alpha", "b2", "c_c"]
    for i in range(400):
        expr = random_expr(rng, names, rng.randrange(1, 5), rng.choice(["numeric", "bool"]))
        text = format_expression(expr)
        assert parse_expression(text) == expr, f"case {i}: {text}"


def test_random_evaluation_matches_oracles():
    rng = random.Random(77)
    names = ["x", "y", "z"]
    checked = 0
    for i in range(400):
        expr = random_expr(rng, names, rng.randrange(1, 4), "bool")
        env = {name: rng.randrange(0, 7) for name in names}
        got = evaluate(expr, env)
        expected = naive_eval(expr, env)
        assert got == expected, f"case {i}: {format_expression(expr)} with {env}"
        # Second oracle: the dialect is Python-evaluable text.
        via_python = eval(format_expression(expr), {"__builtins__": {}}, dict(env))
        assert got == via_python
        checked += 1
    assert checked == 400


def test_chained_comparison_equals_conjunction_exhaustively():
    domain = [0, 1, 2, 3, 4]
    chain = parse_expression("x <= y <= z")
    split = parse_expression("x <= y and y <= z")
    for x in domain:
        for y in domain:
            for z in domain:
                env = {"x": x, "y": y, "z": z}
                assert evaluate(chain, env) == evaluate(split, env)


# ---------------------------------------------------------------------------
# Static typing


def test_infer_type():
    tags = {"x": "int", "flag": "bool", "name": "text"}
    assert infer_type(parse_expression("x * 2 > 3"), tags) == "bool"
    assert infer_type(parse_expression("x + 1"), tags) == "numeric"
    with pytest.raises(TypeMismatchError):
        infer_type(parse_expression("flag + 1"), tags)
    with pytest.raises(TypeMismatchError):
        infer_type(parse_expression("name < 3"), tags)
    with pytest.raises(TypeMismatchError):
        infer_type(parse_expression("x and flag"), tags)
    with pytest.raises(UnboundParameterError):
        infer_type(parse_expression("missing > 1"), tags)

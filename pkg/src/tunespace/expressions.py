"""The constraint expression dialect.

Constraints are written as Python-style boolean/arithmetic expressions
over named parameters, e.g. ``"32 <= block_size_x * block_size_y <= 1024"``.
This module tokenizes and parses that dialect into an immutable tree,
evaluates trees against assignments, renders them back to canonical
source text, and statically types them against parameter tags.

Operator precedence (loosest to tightest):
``or`` < ``and`` < ``not`` < comparisons < ``+ -`` < ``* / // %`` <
unary ``-`` < ``**`` (right-associative).  Chained comparisons such as
``2 <= y <= 32`` parse to a single ``Comparison`` node.  Function calls,
indexing and lambdas are recognized and rejected as unsupported.
"""

from __future__ import annotations

import keyword
import math
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import (
    DivisionByZeroError,
    EvaluationError,
    OverflowValueError,
    ParseError,
    TypeMismatchError,
    UnboundParameterError,
    UnsupportedSyntaxError,
)
from .values import BOOL, INT_MAX, INT_MIN, format_value, tag_of, validate_value

Value = Union[int, float, bool, str]

ARITH_OPS = ("+", "-", "*", "/", "//", "%", "**")
BOOL_OPS = ("and", "or")
COMPARISON_OPS = ("<", "<=", ">", ">=", "==", "!=")
UNARY_OPS = ("neg", "not")


@dataclass(frozen=True, eq=False)
class Literal:
    value: Value

    def __post_init__(self):
        try:
            validate_value(self.value)
        except ValueError as exc:
            raise ValueError(f"invalid literal: {exc}") from None

    # Tag-aware equality: Literal(True) != Literal(1), Literal(1) != Literal(1.0).
    def __eq__(self, other):
        if type(other) is not Literal:
            return NotImplemented
        return tag_of(self.value) == tag_of(other.value) and self.value == other.value

    def __hash__(self):
        return hash((Literal, tag_of(self.value), self.value))


@dataclass(frozen=True)
class ParamRef:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" | "not"
    operand: "Expr"

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"unknown unary operator {self.op!r}")


@dataclass(frozen=True)
class Binary:
    op: str  # arithmetic or "and"/"or"
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in ARITH_OPS and self.op not in BOOL_OPS:
            raise ValueError(f"unknown binary operator {self.op!r}")


@dataclass(frozen=True)
class Comparison:
    """A (possibly chained) comparison: ``operands[0] ops[0] operands[1] ...``."""

    operands: tuple["Expr", ...]
    ops: tuple[str, ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("comparison needs at least two operands")
        if len(self.ops) != len(self.operands) - 1:
            raise ValueError("comparison needs exactly len(operands) - 1 operators")
        for op in self.ops:
            if op not in COMPARISON_OPS:
                raise ValueError(f"unknown comparison operator {op!r}")


Expr = Union[Literal, ParamRef, Unary, Binary, Comparison]


# ---------------------------------------------------------------------------
# Tokenizer

_TWO_CHAR_OPS = ("**", "//", "<=", ">=", "==", "!=")
_ONE_CHAR_OPS = "+-*/%<>()[],"
_KEYWORDS = ("True", "False", "and", "or", "not", "lambda")


def _tokenize(source: str) -> list[tuple[str, object, int]]:
    """Yield (kind, value, position) tokens; kinds are
    number/string/name/op/end."""
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            i += 1
            is_real = c == "."
            while i < n and source[i].isdigit():
                i += 1
            if not is_real and i < n and source[i] == ".":
                is_real = True
                i += 1
                while i < n and source[i].isdigit():
                    i += 1
            if i < n and source[i] in "eE":
                j = i + 1
                if j < n and source[j] in "+-":
                    j += 1
                if j < n and source[j].isdigit():
                    is_real = True
                    i = j + 1
                    while i < n and source[i].isdigit():
                        i += 1
            text = source[start:i]
            if is_real:
                number: Value = float(text)
                if not math.isfinite(number):
                    raise ParseError(f"real literal {text!r} is out of range", start)
            else:
                number = int(text)
                if not INT_MIN <= number <= INT_MAX:
                    raise ParseError(
                        f"integer literal {text} exceeds the signed 64-bit range", start
                    )
            tokens.append(("number", number, start))
            continue
        if c.isalpha() or c == "_":
            i += 1
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            name = source[start:i]
            if name == "lambda":
                raise UnsupportedSyntaxError("lambda expressions are not supported", start)
            tokens.append(("name", name, start))
            continue
        if c in ("'", '"'):
            quote = c
            i += 1
            parts = []
            while True:
                if i >= n:
                    raise ParseError("unterminated string literal", start)
                ch = source[i]
                if ch == "\\":
                    if i + 1 >= n:
                        raise ParseError("unterminated string literal", start)
                    esc = source[i + 1]
                    mapped = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"'}.get(esc)
                    if mapped is None:
                        raise ParseError(f"unknown escape sequence \\{esc}", i)
                    parts.append(mapped)
                    i += 2
                    continue
                if ch == quote:
                    i += 1
                    break
                parts.append(ch)
                i += 1
            tokens.append(("string", "".join(parts), start))
            continue
        two = source[i : i + 2]
        if two in _TWO_CHAR_OPS:
            tokens.append(("op", two, start))
            i += 2
            continue
        if c in _ONE_CHAR_OPS:
            tokens.append(("op", c, start))
            i += 1
            continue
        if c == "=":
            raise ParseError("single '=' is not an operator; use '=='", start)
        if c == "!":
            raise ParseError("'!' is not an operator; use '!=' or 'not'", start)
        raise ParseError(f"unexpected character {c!r}", start)
    tokens.append(("end", None, n))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent following the precedence ladder)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_op(self, *ops) -> bool:
        kind, value, _ = self.peek()
        return kind == "op" and value in ops

    def at_name(self, *names) -> bool:
        kind, value, _ = self.peek()
        return kind == "name" and value in names

    def error(self, expected: str):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "end" else f"{value!r}"
        raise ParseError(f"expected {expected}, found {found}", pos)

    def parse(self) -> Expr:
        expr = self.parse_or()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(
                f"expected an operator or end of input, found {value!r}", pos
            )
        return expr

    def parse_or(self) -> Expr:
        left = self.parse_and()
        while self.at_name("or"):
            self.advance()
            left = Binary("or", left, self.parse_and())
        return left

    def parse_and(self) -> Expr:
        left = self.parse_not()
        while self.at_name("and"):
            self.advance()
            left = Binary("and", left, self.parse_not())
        return left

    def parse_not(self) -> Expr:
        if self.at_name("not"):
            self.advance()
            return Unary("not", self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> Expr:
        first = self.parse_add()
        if not self.at_op(*COMPARISON_OPS):
            return first
        operands = [first]
        ops = []
        while self.at_op(*COMPARISON_OPS):
            ops.append(self.advance()[1])
            operands.append(self.parse_add())
        return Comparison(tuple(operands), tuple(ops))

    def parse_add(self) -> Expr:
        left = self.parse_mul()
        while self.at_op("+", "-"):
            op = self.advance()[1]
            left = Binary(op, left, self.parse_mul())
        return left

    def parse_mul(self) -> Expr:
        left = self.parse_unary()
        while self.at_op("*", "/", "//", "%"):
            op = self.advance()[1]
            left = Binary(op, left, self.parse_unary())
        return left

    def parse_unary(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Unary("neg", self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        if self.at_op("**"):
            self.advance()
            # The exponent may start with a unary minus: 2 ** -3.
            return Binary("**", base, self.parse_unary())
        return base

    def parse_atom(self) -> Expr:
        kind, value, pos = self.peek()
        if kind == "number":
            self.advance()
            expr: Expr = Literal(value)
        elif kind == "string":
            self.advance()
            expr = Literal(value)
        elif kind == "name":
            if value == "lambda":
                raise UnsupportedSyntaxError("lambda expressions are not supported", pos)
            self.advance()
            if value == "True":
                expr = Literal(True)
            elif value == "False":
                expr = Literal(False)
            elif value in ("and", "or", "not"):
                raise ParseError(f"expected an expression, found {value!r}", pos)
            elif keyword.iskeyword(value):
                raise ParseError(f"{value!r} is a reserved word", pos)
            else:
                expr = ParamRef(value)
        elif kind == "op" and value == "(":
            self.advance()
            expr = self.parse_or()
            if not self.at_op(")"):
                self.error("a closing ')'")
            self.advance()
        else:
            self.error("an expression")
        return self.check_postfix(expr)

    def check_postfix(self, expr: Expr) -> Expr:
        kind, value, pos = self.peek()
        if kind == "op" and value == "(":
            raise UnsupportedSyntaxError("function calls are not supported", pos)
        if kind == "op" and value == "[":
            raise UnsupportedSyntaxError("indexing is not supported", pos)
        return expr


def parse_expression(source: str) -> Expr:
    """Parse dialect source text into an expression tree."""
    if not isinstance(source, str) or not source.strip():
        raise ParseError("empty expression", 0)
    return _Parser(_tokenize(source)).parse()


# ---------------------------------------------------------------------------
# Evaluation


def _type_name(v) -> str:
    return tag_of(v)


def _require_numeric(op: str, v):
    t = type(v)
    if t is int or t is float:
        return
    raise TypeMismatchError(f"operator {op!r} needs numeric operands, got {_type_name(v)}")


def _check_int(result: int) -> int:
    if INT_MIN <= result <= INT_MAX:
        return result
    raise OverflowValueError(f"integer result {result} exceeds the signed 64-bit range")


def _check_real(result: float) -> float:
    if math.isfinite(result):
        return result
    raise OverflowValueError("real result is out of range")


def _arith(op: str, lv, rv):
    _require_numeric(op, lv)
    _require_numeric(op, rv)
    both_int = type(lv) is int and type(rv) is int
    if op == "+":
        r = lv + rv
    elif op == "-":
        r = lv - rv
    elif op == "*":
        r = lv * rv
    elif op == "/":
        if rv == 0:
            raise DivisionByZeroError(f"division by zero: {lv} / {rv}")
        return _check_real(lv / rv)
    elif op == "//":
        if rv == 0:
            raise DivisionByZeroError(f"division by zero: {lv} // {rv}")
        r = lv // rv
    elif op == "%":
        if rv == 0:
            raise DivisionByZeroError(f"division by zero: {lv} % {rv}")
        r = lv % rv
    elif op == "**":
        return _power(lv, rv, both_int)
    else:  # pragma: no cover - guarded by node validation
        raise EvaluationError(f"unknown operator {op!r}")
    return _check_int(r) if both_int else _check_real(r)


def _power(lv, rv, both_int):
    if both_int:
        if rv < 0:
            if lv == 0:
                raise DivisionByZeroError("zero to a negative power")
            return _check_real(lv**rv)
        if (lv > 1 or lv < -1) and rv > 63:
            raise OverflowValueError(
                f"integer result {lv} ** {rv} exceeds the signed 64-bit range"
            )
        return _check_int(lv**rv)
    if lv == 0 and rv < 0:
        raise DivisionByZeroError("zero to a negative power")
    try:
        r = lv**rv
    except OverflowError:
        raise OverflowValueError("real result is out of range") from None
    if isinstance(r, complex):
        raise EvaluationError("fractional power of a negative number")
    return _check_real(r)


def _compare(op: str, lv, rv) -> bool:
    lt, rt = type(lv), type(rv)
    l_num = lt is int or lt is float
    r_num = rt is int or rt is float
    if op == "==" or op == "!=":
        if l_num and r_num:
            eq = lv == rv
        elif lt is rt:
            eq = lv == rv
        else:
            eq = False  # values of different tags are never equal
        return eq if op == "==" else not eq
    if not (l_num and r_num):
        raise TypeMismatchError(
            f"ordering {op!r} needs numeric operands, "
            f"got {_type_name(lv)} and {_type_name(rv)}"
        )
    if op == "<":
        return lv < rv
    if op == "<=":
        return lv <= rv
    if op == ">":
        return lv > rv
    return lv >= rv


def evaluate(expr: Expr, assignment: Mapping[str, Value]) -> Value:
    """Evaluate ``expr`` with every free parameter bound in ``assignment``.

    Division-like operators floor (remainder sign follows the divisor),
    chained comparisons are the conjunction of adjacent pairs, and/or
    short-circuit, and boolean context requires boolean operands.
    """
    t = type(expr)
    if t is Literal:
        return expr.value
    if t is ParamRef:
        try:
            return assignment[expr.name]
        except KeyError:
            raise UnboundParameterError(expr.name) from None
    if t is Binary:
        op = expr.op
        if op == "and" or op == "or":
            lv = evaluate(expr.left, assignment)
            if type(lv) is not bool:
                raise TypeMismatchError(
                    f"operator {op!r} needs boolean operands, got {_type_name(lv)}"
                )
            if (op == "and") != lv:  # short-circuit: False and _, True or _
                return lv
            rv = evaluate(expr.right, assignment)
            if type(rv) is not bool:
                raise TypeMismatchError(
                    f"operator {op!r} needs boolean operands, got {_type_name(rv)}"
                )
            return rv
        return _arith(op, evaluate(expr.left, assignment), evaluate(expr.right, assignment))
    if t is Comparison:
        left = evaluate(expr.operands[0], assignment)
        for op, operand in zip(expr.ops, expr.operands[1:]):
            right = evaluate(operand, assignment)
            if not _compare(op, left, right):
                return False
            left = right
        return True
    if t is Unary:
        v = evaluate(expr.operand, assignment)
        if expr.op == "neg":
            _require_numeric("-", v)
            return _check_int(-v) if type(v) is int else _check_real(-v)
        if type(v) is not bool:
            raise TypeMismatchError(f"operator 'not' needs a boolean operand, got {_type_name(v)}")
        return not v
    raise EvaluationError(f"cannot evaluate {expr!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Free parameters


def free_parameters(expr: Expr) -> list[str]:
    """Names referenced by ``expr``, deduplicated, in first-appearance order."""
    seen: dict[str, None] = {}

    def walk(e):
        t = type(e)
        if t is ParamRef:
            seen.setdefault(e.name, None)
        elif t is Unary:
            walk(e.operand)
        elif t is Binary:
            walk(e.left)
            walk(e.right)
        elif t is Comparison:
            for operand in e.operands:
                walk(operand)

    walk(expr)
    return list(seen)


# ---------------------------------------------------------------------------
# Formatting

# Precedence levels used for minimal parenthesization.
_PREC_OR = 1
_PREC_AND = 2
_PREC_NOT = 3
_PREC_CMP = 4
_PREC_ADD = 5
_PREC_MUL = 6
_PREC_NEG = 7
_PREC_POW = 8
_PREC_ATOM = 9

_BINARY_PREC = {"or": _PREC_OR, "and": _PREC_AND, "+": _PREC_ADD, "-": _PREC_ADD,
                "*": _PREC_MUL, "/": _PREC_MUL, "//": _PREC_MUL, "%": _PREC_MUL,
                "**": _PREC_POW}


def _node_prec(expr: Expr) -> int:
    t = type(expr)
    if t is Binary:
        return _BINARY_PREC[expr.op]
    if t is Comparison:
        return _PREC_CMP
    if t is Unary:
        return _PREC_NEG if expr.op == "neg" else _PREC_NOT
    if t is Literal and type(expr.value) in (int, float) and expr.value < 0:
        # Negative literals render with a leading '-', binding like unary minus.
        return _PREC_NEG
    return _PREC_ATOM


def _fmt(expr: Expr, min_prec: int) -> str:
    prec = _node_prec(expr)
    t = type(expr)
    if t is Literal:
        text = format_value(expr.value)
    elif t is ParamRef:
        text = expr.name
    elif t is Unary:
        if expr.op == "neg":
            text = "-" + _fmt(expr.operand, _PREC_NEG)
        else:
            text = "not " + _fmt(expr.operand, _PREC_NOT)
    elif t is Binary:
        if expr.op == "**":
            text = f"{_fmt(expr.left, _PREC_ATOM)} ** {_fmt(expr.right, _PREC_NEG)}"
        else:
            text = f"{_fmt(expr.left, prec)} {expr.op} {_fmt(expr.right, prec + 1)}"
    else:  # Comparison
        parts = [_fmt(expr.operands[0], _PREC_CMP + 1)]
        for op, operand in zip(expr.ops, expr.operands[1:]):
            parts.append(op)
            parts.append(_fmt(operand, _PREC_CMP + 1))
        text = " ".join(parts)
    if prec < min_prec:
        return f"({text})"
    return text


def format_expression(expr: Expr) -> str:
    """Canonical source text; ``parse_expression(format_expression(e))``
    is structurally equal to ``e``.

    One carve-out: negative literals cannot be produced by the parser
    (it yields unary minus), so programmatically built trees containing
    them re-parse to the equivalent unary-minus form.
    """
    return _fmt(expr, 0)


# ---------------------------------------------------------------------------
# Static typing against parameter tags

NUMERIC = "numeric"
BOOLEAN = "bool"
STRING = "text"


def _coarse(tag: str) -> str:
    if tag in ("int", "real"):
        return NUMERIC
    return BOOLEAN if tag == BOOL else STRING


def infer_type(expr: Expr, tags: Mapping[str, str]) -> str:
    """Check ``expr`` against parameter tags and return its coarse type
    (numeric / bool / text).

    Raises ``UnboundParameterError`` for parameters missing from ``tags``
    and ``TypeMismatchError`` for operations guaranteed to fail at
    evaluation time (arithmetic on booleans, ordering text, non-boolean
    and/or operands).
    """
    t = type(expr)
    if t is Literal:
        return _coarse(tag_of(expr.value))
    if t is ParamRef:
        try:
            return _coarse(tags[expr.name])
        except KeyError:
            raise UnboundParameterError(expr.name) from None
    if t is Unary:
        inner = infer_type(expr.operand, tags)
        if expr.op == "neg":
            if inner != NUMERIC:
                raise TypeMismatchError(f"operator '-' needs a numeric operand, got {inner}")
            return NUMERIC
        if inner != BOOLEAN:
            raise TypeMismatchError(f"operator 'not' needs a boolean operand, got {inner}")
        return BOOLEAN
    if t is Binary:
        left = infer_type(expr.left, tags)
        right = infer_type(expr.right, tags)
        if expr.op in ("and", "or"):
            if left != BOOLEAN or right != BOOLEAN:
                raise TypeMismatchError(
                    f"operator {expr.op!r} needs boolean operands, got {left} and {right}"
                )
            return BOOLEAN
        if left != NUMERIC or right != NUMERIC:
            raise TypeMismatchError(
                f"operator {expr.op!r} needs numeric operands, got {left} and {right}"
            )
        return NUMERIC
    # Comparison
    left = infer_type(expr.operands[0], tags)
    for op, operand in zip(expr.ops, expr.operands[1:]):
        right = infer_type(operand, tags)
        if op not in ("==", "!=") and (left != NUMERIC or right != NUMERIC):
            raise TypeMismatchError(
                f"ordering {op!r} needs numeric operands, got {left} and {right}"
            )
        left = right
    return BOOLEAN

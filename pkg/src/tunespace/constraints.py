"""Rewriting user constraints into small-scope, specific forms.

The pipeline runs in three steps: parse the expression text, split
top-level conjunctions and comparison chains into parts with fewer
variables, then classify each part into the most specific constraint
kind available.  Single-parameter predicates are applied to the
parameter's domain right away (node consistency) and disappear from the
constraint list; unweighted products/sums of distinct parameters
compared against a constant become dedicated product/sum constraints
that the solver can prune with; everything else is kept as a compiled
generic predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .errors import (
    CompileError,
    ParseError,
    TypeMismatchError,
    UnknownParameterError,
    UnsatisfiableConstraintError,
)
from .expressions import (
    BOOLEAN,
    Binary,
    Comparison,
    Expr,
    Literal,
    ParamRef,
    Value,
    evaluate,
    format_expression,
    free_parameters,
    infer_type,
    parse_expression,
)
from .values import is_numeric, tag_of


def _check_aggregate(limit, scope):
    if not is_numeric(limit):
        raise ValueError(f"aggregate limit must be numeric, got {tag_of(limit)}")
    if len(scope) < 2:
        raise ValueError("product/sum constraints need at least two parameters")
    if len(set(scope)) != len(scope):
        raise ValueError("product/sum constraint scope must not repeat parameters")


def _fold(op: str, names: Sequence[str]) -> Expr:
    expr: Expr = ParamRef(names[0])
    for name in names[1:]:
        expr = Binary(op, expr, ParamRef(name))
    return expr


@dataclass(frozen=True)
class MaxProduct:
    """product(scope) <= limit (or < limit when strict)."""

    limit: Value
    scope: tuple[str, ...]
    strict: bool = False
    origin: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        _check_aggregate(self.limit, self.scope)

    def expression(self) -> Expr:
        return Comparison((_fold("*", self.scope), Literal(self.limit)),
                          ("<" if self.strict else "<=",))


@dataclass(frozen=True)
class MinProduct:
    """product(scope) >= limit (or > limit when strict)."""

    limit: Value
    scope: tuple[str, ...]
    strict: bool = False
    origin: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        _check_aggregate(self.limit, self.scope)

    def expression(self) -> Expr:
        return Comparison((_fold("*", self.scope), Literal(self.limit)),
                          (">" if self.strict else ">=",))


@dataclass(frozen=True)
class ExactProduct:
    """product(scope) == limit."""

    limit: Value
    scope: tuple[str, ...]
    origin: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        _check_aggregate(self.limit, self.scope)

    def expression(self) -> Expr:
        return Comparison((_fold("*", self.scope), Literal(self.limit)), ("==",))


@dataclass(frozen=True)
class MaxSum:
    """sum(scope) <= limit (or < limit when strict)."""

    limit: Value
    scope: tuple[str, ...]
    strict: bool = False
    origin: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        _check_aggregate(self.limit, self.scope)

    def expression(self) -> Expr:
        return Comparison((_fold("+", self.scope), Literal(self.limit)),
                          ("<" if self.strict else "<=",))


@dataclass(frozen=True)
class MinSum:
    """sum(scope) >= limit (or > limit when strict)."""

    limit: Value
    scope: tuple[str, ...]
    strict: bool = False
    origin: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        _check_aggregate(self.limit, self.scope)

    def expression(self) -> Expr:
        return Comparison((_fold("+", self.scope), Literal(self.limit)),
                          (">" if self.strict else ">=",))


@dataclass(frozen=True)
class ExactSum:
    """sum(scope) == limit."""

    limit: Value
    scope: tuple[str, ...]
    origin: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        _check_aggregate(self.limit, self.scope)

    def expression(self) -> Expr:
        return Comparison((_fold("+", self.scope), Literal(self.limit)), ("==",))


@dataclass(frozen=True)
class UnaryRestriction:
    """Arbitrary predicate over a single parameter."""

    predicate: Expr
    scope: tuple[str, ...]
    origin: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.scope) != 1:
            raise ValueError("unary restrictions cover exactly one parameter")

    def expression(self) -> Expr:
        return self.predicate


@dataclass(frozen=True)
class Generic:
    """A compiled predicate with no recognized special structure."""

    predicate: Expr
    scope: tuple[str, ...]
    origin: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.scope:
            raise ValueError("generic constraints need a non-empty scope")

    def expression(self) -> Expr:
        return self.predicate


CompiledConstraint = Union[
    MaxProduct, MinProduct, ExactProduct, MaxSum, MinSum, ExactSum,
    UnaryRestriction, Generic,
]

PRODUCT_KINDS = (MaxProduct, MinProduct, ExactProduct)
SUM_KINDS = (MaxSum, MinSum, ExactSum)
AGGREGATE_KINDS = PRODUCT_KINDS + SUM_KINDS


def origin_text(constraint: CompiledConstraint) -> str:
    """The user source the constraint came from, or its canonical
    rendering when it was constructed programmatically."""
    if constraint.origin is not None:
        return constraint.origin
    return format_expression(constraint.expression())


# ---------------------------------------------------------------------------
# Splitting


def split_conjunctions(expr: Expr) -> list[Expr]:
    """Split top-level ``and`` nodes and break comparison chains of n
    operands into n - 1 binary comparisons.

    The conjunction of the returned parts is logically equivalent to the
    input; ``or`` is never split.
    """
    if type(expr) is Binary and expr.op == "and":
        return split_conjunctions(expr.left) + split_conjunctions(expr.right)
    if type(expr) is Comparison and len(expr.operands) > 2:
        return [
            Comparison((left, right), (op,))
            for left, op, right in zip(expr.operands, expr.ops, expr.operands[1:])
        ]
    return [expr]


# ---------------------------------------------------------------------------
# Classification


def _aggregate_members(expr: Expr, op: str) -> Optional[list[str]]:
    """Parameter names when ``expr`` is a pure op-chain of >= 2 distinct
    bare references, else None."""

    def flatten(e) -> Optional[list[str]]:
        if type(e) is Binary and e.op == op:
            left = flatten(e.left)
            if left is None:
                return None
            right = flatten(e.right)
            if right is None:
                return None
            return left + right
        if type(e) is ParamRef:
            return [e.name]
        return None

    names = flatten(expr)
    if names is None or len(names) < 2 or len(set(names)) != len(names):
        return None
    return names


def _constant_value(expr: Expr) -> Optional[Value]:
    if free_parameters(expr):
        return None
    return evaluate(expr, {})


_PRODUCT_BY_OP = {
    "<=": lambda limit, scope, origin: MaxProduct(limit, scope, False, origin),
    "<": lambda limit, scope, origin: MaxProduct(limit, scope, True, origin),
    ">=": lambda limit, scope, origin: MinProduct(limit, scope, False, origin),
    ">": lambda limit, scope, origin: MinProduct(limit, scope, True, origin),
    "==": lambda limit, scope, origin: ExactProduct(limit, scope, origin),
}
_SUM_BY_OP = {
    "<=": lambda limit, scope, origin: MaxSum(limit, scope, False, origin),
    "<": lambda limit, scope, origin: MaxSum(limit, scope, True, origin),
    ">=": lambda limit, scope, origin: MinSum(limit, scope, False, origin),
    ">": lambda limit, scope, origin: MinSum(limit, scope, True, origin),
    "==": lambda limit, scope, origin: ExactSum(limit, scope, origin),
}
_FLIPPED = {"<=": ">=", "<": ">", ">=": "<=", ">": "<", "==": "=="}


def _classify_comparison(expr: Comparison, origin) -> Optional[CompiledConstraint]:
    left, right = expr.operands
    op = expr.ops[0]
    if op == "!=":
        return None
    for agg_side, const_side, effective_op in ((left, right, op), (right, left, _FLIPPED[op])):
        for chain_op, factory in (("*", _PRODUCT_BY_OP), ("+", _SUM_BY_OP)):
            names = _aggregate_members(agg_side, chain_op)
            if names is None:
                continue
            limit = _constant_value(const_side)
            if limit is None or not is_numeric(limit):
                continue
            return factory[effective_op](limit, tuple(names), origin)
    return None


def classify(expr: Expr, origin: Optional[str] = None) -> Optional[CompiledConstraint]:
    """Classify a boolean expression into the most specific constraint kind.

    Returns None for a constant-true expression (it compiles away);
    raises ``UnsatisfiableConstraintError`` for a constant-false one.
    """
    params = free_parameters(expr)
    if not params:
        if evaluate(expr, {}) is True:
            return None
        raise UnsatisfiableConstraintError(
            f"constraint is constant false: {origin or format_expression(expr)!r}"
        )
    if type(expr) is Comparison and len(expr.operands) == 2:
        specific = _classify_comparison(expr, origin)
        if specific is not None:
            return specific
    if len(params) == 1:
        return UnaryRestriction(expr, (params[0],), origin)
    return Generic(expr, tuple(params), origin)


# ---------------------------------------------------------------------------
# Compilation


def compile_constraints(
    sources: Sequence[str],
    parameters: Mapping[str, Sequence[Value]],
) -> tuple[list[CompiledConstraint], dict[str, tuple[Value, ...]]]:
    """Run parse -> split -> classify over ``sources`` and apply every
    unary restriction to its parameter's domain.

    Returns the remaining (non-unary) constraints and the pruned domains,
    in the original parameter order.  A pruned-empty domain is allowed
    and simply means the problem has no solutions.
    """
    pruned = {name: tuple(values) for name, values in parameters.items()}
    tags = {}
    for name, values in pruned.items():
        if not values:
            raise CompileError(f"parameter {name!r} has an empty domain")
        tags[name] = tag_of(values[0])
    compiled: list[CompiledConstraint] = []
    for index, source in enumerate(sources):
        try:
            expr = parse_expression(source)
        except ParseError as exc:
            raise ParseError(f"in constraint {index} ({source!r}): {exc.args[0]}",
                             exc.position) from None
        for name in free_parameters(expr):
            if name not in pruned:
                raise UnknownParameterError(name, f"constraint {index} ({source!r})")
        try:
            result_type = infer_type(expr, tags)
        except TypeMismatchError as exc:
            raise CompileError(f"constraint {index} ({source!r}): {exc}") from None
        if result_type != BOOLEAN:
            raise CompileError(
                f"constraint {index} ({source!r}) is not boolean-valued"
            )
        for part in split_conjunctions(expr):
            constraint = classify(part, origin=source)
            if constraint is None:
                continue
            if type(constraint) is UnaryRestriction:
                name = constraint.scope[0]
                predicate = constraint.predicate
                pruned[name] = tuple(
                    v for v in pruned[name] if evaluate(predicate, {name: v}) is True
                )
            else:
                compiled.append(constraint)
    return compiled, pruned

"""All-solutions constraint solver over finite discrete domains.

The problem is the classic triple (parameters, domains, constraints).
Solving is an iterative depth-first search with an explicit backtrack
stack: variables are visited most-constrained-first, each assignment is
checked against every constraint whose scope just completed plus
monotone partial checks for product/sum constraints, and configurations
are emitted in deterministic search order, re-expressed in declaration
order.

Product and sum constraints additionally get:

* preprocessing: domain values that cannot appear in any solution of a
  single constraint are pruned up front, iterated to a fixed point;
* windowed enumeration: over ascending numeric domains the admissible
  values for the variable being assigned form a contiguous index window,
  located by exact integer arithmetic or predicate bisection instead of
  per-value checks.

Generic constraints are compiled once into Python bytecode and called
positionally, which matches the strict evaluator on every problem that
passes compile-time type checking (the strict evaluator additionally
enforces the 64-bit integer envelope).
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from operator import itemgetter
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .constraints import (
    AGGREGATE_KINDS,
    CompiledConstraint,
    MaxProduct,
    MaxSum,
    MinProduct,
    MinSum,
    PRODUCT_KINDS,
    compile_constraints,
    origin_text,
)
from .errors import EvaluationError, UnknownParameterError
from .expressions import (
    BOOLEAN,
    Comparison,
    Expr,
    NUMERIC,
    Value,
    evaluate,
    format_expression,
    infer_type,
)
from .values import INT, REAL, tag_of, validate_value, value_key

_SAFE_GLOBALS = {"__builtins__": {}}


class Domain:
    """Ordered list of distinct same-tag values, in user-given order.

    Empty domains are representable (a pruned-empty domain means zero
    solutions); the user-facing loaders reject empty lists up front.
    """

    __slots__ = ("values", "tag", "ascending", "_keys")

    def __init__(self, values: Iterable[Value]):
        vals = tuple(values)
        tag = None
        keys = set()
        for v in vals:
            try:
                validate_value(v)
            except (ValueError, TypeError) as exc:
                raise ValueError(f"invalid domain value: {exc}") from None
            t = tag_of(v)
            if tag is None:
                tag = t
            elif t != tag:
                raise ValueError(
                    f"domain mixes {tag} and {t} values; domains must be homogeneous"
                )
            key = (t, v)
            if key in keys:
                raise ValueError(f"duplicate domain value {v!r}")
            keys.add(key)
        self.values = vals
        self.tag = tag
        self.ascending = (
            tag in (INT, REAL)
            and all(a < b for a, b in zip(vals, vals[1:]))
        )
        self._keys = keys

    def __len__(self):
        return len(self.values)

    def __iter__(self) -> Iterator[Value]:
        return iter(self.values)

    def __contains__(self, value) -> bool:
        try:
            return value_key(value) in self._keys
        except TypeError:
            return False

    def __eq__(self, other):
        if not isinstance(other, Domain):
            return NotImplemented
        return self.tag == other.tag and self.values == other.values

    def __hash__(self):
        return hash((self.tag, self.values))

    def __repr__(self):
        return f"Domain({list(self.values)!r})"

    @property
    def is_numeric(self) -> bool:
        return self.tag in (INT, REAL)

    def minimum(self) -> Value:
        return min(self.values)

    def maximum(self) -> Value:
        return max(self.values)


class Problem:
    """A constraint satisfaction problem over named finite domains.

    ``parameters`` are the domains the solver enumerates.  For problems
    built by :func:`compile_problem` these are already node-consistent
    (unary restrictions applied); ``declared`` keeps the original
    user-declared domains and ``sources`` the original constraint texts,
    which is what the brute-force oracle evaluates.
    """

    __slots__ = ("parameters", "constraints", "sources", "declared")

    def __init__(
        self,
        parameters,
        constraints: Sequence[CompiledConstraint] = (),
        sources: Optional[Sequence[str]] = None,
        declared=None,
    ):
        if isinstance(parameters, Mapping):
            items = list(parameters.items())
        else:
            items = list(parameters)
        params = []
        names = set()
        for name, domain in items:
            if not isinstance(name, str) or not name:
                raise ValueError(f"parameter names must be non-empty strings, got {name!r}")
            if name in names:
                raise ValueError(f"duplicate parameter {name!r}")
            names.add(name)
            if not isinstance(domain, Domain):
                domain = Domain(domain)
            params.append((name, domain))
        self.parameters = tuple(params)
        self.constraints = tuple(constraints)
        for c in self.constraints:
            for p in c.scope:
                if p not in names:
                    raise UnknownParameterError(p, f"constraint {origin_text(c)!r}")
        if sources is None:
            self.sources = tuple(origin_text(c) for c in self.constraints)
        else:
            self.sources = tuple(sources)
        if declared is None:
            self.declared = self.parameters
        else:
            if isinstance(declared, Mapping):
                declared = list(declared.items())
            self.declared = tuple(
                (name, dom if isinstance(dom, Domain) else Domain(dom))
                for name, dom in declared
            )
            if tuple(n for n, _ in self.declared) != tuple(n for n, _ in self.parameters):
                raise ValueError("declared parameters must match parameter order")

    @property
    def parameter_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.parameters)

    def domain(self, name: str) -> Domain:
        for n, d in self.parameters:
            if n == name:
                return d
        raise UnknownParameterError(name)

    def declared_domain(self, name: str) -> Domain:
        for n, d in self.declared:
            if n == name:
                return d
        raise UnknownParameterError(name)

    @property
    def cartesian_size(self) -> int:
        size = 1
        for _, dom in self.declared:
            size *= len(dom)
        return size

    def __repr__(self):
        return (
            f"Problem({len(self.parameters)} parameters, "
            f"{len(self.constraints)} constraints)"
        )


def compile_problem(parameters, sources: Sequence[str]) -> Problem:
    """Build a solver-ready Problem from raw domains and constraint texts.

    Runs the full parse -> split -> classify pipeline and applies unary
    restrictions to the domains; the declared domains and original texts
    are retained for the oracle and for reporting.
    """
    if isinstance(parameters, Mapping):
        items = list(parameters.items())
    else:
        items = list(parameters)
    declared = [(name, dom if isinstance(dom, Domain) else Domain(dom))
                for name, dom in items]
    raw = {name: dom.values for name, dom in declared}
    constraints, pruned = compile_constraints(sources, raw)
    params = [(name, Domain(pruned[name])) for name, _ in declared]
    return Problem(params, constraints, sources=sources, declared=declared)


@dataclass(frozen=True)
class SolutionSet:
    """All valid configurations of a problem, in deterministic search
    order, with values positionally aligned to ``parameter_names``."""

    parameter_names: tuple[str, ...]
    configurations: tuple[tuple[Value, ...], ...]

    def __len__(self):
        return len(self.configurations)

    def __iter__(self):
        return iter(self.configurations)

    def as_set(self) -> set:
        return set(self.configurations)


# ---------------------------------------------------------------------------
# Variable ordering


def order_variables(problem: Problem) -> list[str]:
    """Parameters sorted by descending constraint degree, then ascending
    domain size, then declaration order."""
    degree = {name: 0 for name, _ in problem.parameters}
    for c in problem.constraints:
        for p in c.scope:
            degree[p] += 1
    indexed = list(enumerate(problem.parameters))
    indexed.sort(key=lambda item: (-degree[item[1][0]], len(item[1][1]), item[0]))
    return [name for _, (name, _) in indexed]


# ---------------------------------------------------------------------------
# Aggregate helpers


def _is_product(c) -> bool:
    return isinstance(c, PRODUCT_KINDS)


def _sides(c) -> tuple[bool, bool, bool]:
    """(has_upper_bound, has_lower_bound, strict)."""
    if isinstance(c, (MaxProduct, MaxSum)):
        return True, False, c.strict
    if isinstance(c, (MinProduct, MinSum)):
        return False, True, c.strict
    return True, True, False  # Exact kinds


def _combine(is_product: bool, values) -> Value:
    if is_product:
        acc = 1
        for v in values:
            acc *= v
    else:
        acc = 0
        for v in values:
            acc += v
    return acc


def _gate_ok(c, scope_domains: Sequence[Domain]) -> bool:
    """Monotonicity precondition: strictly positive domains for products,
    non-negative for sums; numeric values throughout."""
    for dom in scope_domains:
        if not dom.is_numeric:
            return False
        if _is_product(c):
            if any(v <= 0 for v in dom.values):
                return False
        elif any(v < 0 for v in dom.values):
            return False
    return True


# ---------------------------------------------------------------------------
# Preprocessing (single-constraint domain pruning to a fixed point)


def preprocess(problem: Problem) -> Problem:
    """Prune domain values that no solution of a single product/sum
    constraint can use; iterates to a fixed point.  Never prunes a value
    that occurs in any solution of the whole problem."""
    aggregates = [c for c in problem.constraints if isinstance(c, AGGREGATE_KINDS)]
    if not aggregates:
        return problem
    domains = {name: list(dom.values) for name, dom in problem.parameters}
    changed = True
    any_change = False
    while changed:
        changed = False
        for c in aggregates:
            scope_domains = [Domain(domains[p]) for p in c.scope]
            if not _gate_ok(c, scope_domains):
                continue
            is_prod = _is_product(c)
            upper, lower, strict = _sides(c)
            for i, p in enumerate(c.scope):
                others = [domains[q] for j, q in enumerate(c.scope) if j != i]
                if any(not o for o in others):
                    # An empty sibling domain: no extension exists at all.
                    if domains[p]:
                        domains[p] = []
                        changed = True
                    continue
                rest_min = _combine(is_prod, (min(o) for o in others))
                rest_max = _combine(is_prod, (max(o) for o in others))
                kept = []
                for v in domains[p]:
                    low = v * rest_min if is_prod else v + rest_min
                    high = v * rest_max if is_prod else v + rest_max
                    if upper and (low >= c.limit if strict else low > c.limit):
                        continue
                    if lower and (high <= c.limit if strict else high < c.limit):
                        continue
                    kept.append(v)
                if len(kept) != len(domains[p]):
                    domains[p] = kept
                    changed = True
        any_change = any_change or changed
    if not any_change:
        return problem
    params = [
        (name, dom if len(domains[name]) == len(dom) else Domain(domains[name]))
        for name, dom in problem.parameters
    ]
    return Problem(params, problem.constraints, sources=problem.sources,
                   declared=problem.declared)


# ---------------------------------------------------------------------------
# Tri-state constraint check


@dataclass(frozen=True)
class CheckResult:
    status: str  # "satisfied" | "violated" | "undecided"
    diagnostic: Optional[str] = None

    @property
    def is_satisfied(self):
        return self.status == "satisfied"

    @property
    def is_violated(self):
        return self.status == "violated"


SATISFIED = CheckResult("satisfied")
VIOLATED = CheckResult("violated")
UNDECIDED = CheckResult("undecided")


def check(
    constraint: CompiledConstraint,
    partial: Mapping[str, Value],
    domains: Optional[Mapping[str, Domain]] = None,
) -> CheckResult:
    """Check a constraint against a partial assignment.

    With the full scope bound the result is satisfied/violated per the
    predicate.  With a partial binding, product/sum constraints are
    refuted early when the bound part combined with the best attainable
    remainder (from ``domains``) cannot satisfy the bound; this never
    refutes a partial assignment that extends to a solution of the
    constraint.  Generic constraints stay undecided until fully bound;
    their evaluation errors are reported as violated with a diagnostic.
    """
    unbound = [p for p in constraint.scope if p not in partial]
    if isinstance(constraint, AGGREGATE_KINDS):
        is_prod = _is_product(constraint)
        upper, lower, strict = _sides(constraint)
        limit = constraint.limit
        bound_values = [partial[p] for p in constraint.scope if p in partial]
        acc = _combine(is_prod, bound_values)
        if not unbound:
            if upper and (acc >= limit if strict else acc > limit):
                return VIOLATED
            if lower and (acc <= limit if strict else acc < limit):
                return VIOLATED
            return SATISFIED
        if domains is None:
            return UNDECIDED
        scope_domains = []
        for p in constraint.scope:
            dom = domains.get(p)
            if dom is None or len(dom) == 0:
                return UNDECIDED
            scope_domains.append(dom)
        if not _gate_ok(constraint, scope_domains):
            return UNDECIDED
        if is_prod and any(v <= 0 for v in bound_values):
            return UNDECIDED
        if not is_prod and any(v < 0 for v in bound_values):
            return UNDECIDED
        rest_min = _combine(is_prod, (domains[p].minimum() for p in unbound))
        rest_max = _combine(is_prod, (domains[p].maximum() for p in unbound))
        best_low = acc * rest_min if is_prod else acc + rest_min
        best_high = acc * rest_max if is_prod else acc + rest_max
        if upper and (best_low >= limit if strict else best_low > limit):
            return VIOLATED
        if lower and (best_high <= limit if strict else best_high < limit):
            return VIOLATED
        return UNDECIDED
    # Unary / generic predicates.
    if unbound:
        return UNDECIDED
    try:
        result = evaluate(constraint.expression(), partial)
    except EvaluationError as exc:
        return CheckResult("violated", diagnostic=str(exc))
    return SATISFIED if result is True else VIOLATED


# ---------------------------------------------------------------------------
# Search plan: per-depth windows and predicates compiled from constraints


class SolverEvaluationError(EvaluationError):
    """A generic constraint failed to evaluate during search; carries the
    offending (partial) configuration."""

    def __init__(self, origin: str, assignment: dict, cause: Exception):
        self.origin = origin
        self.assignment = assignment
        super().__init__(
            f"constraint {origin!r} failed on {assignment!r}: {cause}"
        )


def _compile_callable(expr: Expr, scope: Sequence[str]):
    source = f"lambda {', '.join(scope)}: ({format_expression(expr)})"
    return eval(compile(source, "<constraint>", "eval"), dict(_SAFE_GLOBALS))


def _python_exact(expr: Expr, tags: Mapping[str, str]) -> bool:
    """True when compiled-bytecode evaluation agrees with the strict
    evaluator for every type-correct input: the only divergence is
    equality between booleans and numbers (Python: True == 1)."""

    def walk(e) -> bool:
        t = type(e)
        if t is Comparison:
            kinds = [infer_type(op, tags) for op in e.operands]
            for op, left_k, right_k in zip(e.ops, kinds, kinds[1:]):
                if op in ("==", "!=") and {left_k, right_k} == {BOOLEAN, NUMERIC}:
                    return False
            return all(walk(op) for op in e.operands)
        if hasattr(e, "operand"):
            return walk(e.operand)
        if hasattr(e, "left"):
            return walk(e.left) and walk(e.right)
        return True

    return walk(expr)


def _predicate_runner(constraint, order: Sequence[str], tags: Mapping[str, str]):
    """Build g(vals, v) -> bool evaluating a unary/generic constraint when
    the variable at its completion depth is assigned value ``v``."""
    expr = constraint.expression()
    scope = constraint.scope
    position = {name: k for k, name in enumerate(order)}
    positions = [position[p] for p in scope]
    last = max(positions)
    origin = origin_text(constraint)

    if _python_exact(expr, tags):
        fn = _compile_callable(expr, scope)
    else:
        names = list(scope)

        def fn(*args, _names=names, _expr=expr):
            return evaluate(_expr, dict(zip(_names, args)))

    def describe(vals, v):
        env = {}
        for name, k in position.items():
            if k < last:
                env[name] = vals[k]
        env[order[last]] = v
        return {p: env[p] for p in scope if p in env}

    if len(positions) == 1:

        def g(vals, v, _fn=fn):
            try:
                return _fn(v)
            except Exception as exc:
                raise SolverEvaluationError(origin, describe(vals, v), exc) from None

        return g, last

    if len(positions) == 2:
        a, b = positions
        if a == last:
            def g(vals, v, _fn=fn, _b=b):
                try:
                    return _fn(v, vals[_b])
                except Exception as exc:
                    raise SolverEvaluationError(origin, describe(vals, v), exc) from None
        else:
            def g(vals, v, _fn=fn, _a=a):
                try:
                    return _fn(vals[_a], v)
                except Exception as exc:
                    raise SolverEvaluationError(origin, describe(vals, v), exc) from None
        return g, last

    def g(vals, v, _fn=fn, _positions=tuple(positions), _last=last):
        try:
            return _fn(*[v if k == _last else vals[k] for k in _positions])
        except Exception as exc:
            raise SolverEvaluationError(origin, describe(vals, v), exc) from None

    return g, last


def _window_step(dom, before, rest, limit, *, is_prod, side, strict, all_int):
    """Build f(vals, lo, hi) -> (lo, hi) narrowing the admissible index
    window of an ascending domain for one side of an aggregate bound.

    ``side`` is "upper" (aggregate <= / < limit) or "lower" (>= / >).
    ``rest`` folds the best attainable contribution of scope variables
    assigned later; ``before`` are stack positions of those assigned
    earlier.  Exactness: integer bounds use exact floor/ceil division,
    everything else uses predicate bisection with exact comparisons.
    """
    before = tuple(before)
    if all_int and is_prod:
        if side == "upper":
            eff = limit - 1 if strict else limit

            def step(vals, lo, hi, _dom=dom, _before=before, _rest=rest, _eff=eff):
                m = _rest
                for q in _before:
                    m *= vals[q]
                return lo, bisect_right(_dom, _eff // m, lo, hi)

        else:
            def step(vals, lo, hi, _dom=dom, _before=before, _rest=rest,
                     _limit=limit, _strict=strict):
                m = _rest
                for q in _before:
                    m *= vals[q]
                if _strict:
                    bound = _limit // m + 1
                else:
                    bound = -((-_limit) // m)
                return bisect_left(_dom, bound, lo, hi), hi

        return step
    if all_int and not is_prod:
        if side == "upper":
            eff = limit - 1 if strict else limit

            def step(vals, lo, hi, _dom=dom, _before=before, _rest=rest, _eff=eff):
                m = _rest
                for q in _before:
                    m += vals[q]
                return lo, bisect_right(_dom, _eff - m, lo, hi)

        else:
            def step(vals, lo, hi, _dom=dom, _before=before, _rest=rest,
                     _limit=limit, _strict=strict):
                m = _rest
                for q in _before:
                    m += vals[q]
                bound = _limit - m + 1 if _strict else _limit - m
                return bisect_left(_dom, bound, lo, hi), hi

        return step

    # General exact path: predicate bisection.
    def step(vals, lo, hi, _dom=dom, _before=before, _rest=rest, _limit=limit,
             _is_prod=is_prod, _side=side, _strict=strict):
        m = _rest
        if _is_prod:
            for q in _before:
                m *= vals[q]
        else:
            for q in _before:
                m += vals[q]
        a, b = lo, hi
        if _side == "upper":
            while a < b:
                mid = (a + b) // 2
                agg = _dom[mid] * m if _is_prod else _dom[mid] + m
                ok = agg < _limit if _strict else agg <= _limit
                if ok:
                    a = mid + 1
                else:
                    b = mid
            return lo, a
        while a < b:
            mid = (a + b) // 2
            agg = _dom[mid] * m if _is_prod else _dom[mid] + m
            ok = agg > _limit if _strict else agg >= _limit
            if ok:
                b = mid
            else:
                a = mid + 1
        return a, hi

    return step


def _aggregate_pred(before, rest, limit, *, is_prod, side, strict):
    """Per-value admissibility predicate, for non-ascending domains or
    failed sign gates (full checks only in the latter case)."""
    before = tuple(before)

    def g(vals, v, _before=before, _rest=rest, _limit=limit,
          _is_prod=is_prod, _side=side, _strict=strict):
        m = _rest
        if _is_prod:
            for q in _before:
                m *= vals[q]
            agg = v * m
        else:
            for q in _before:
                m += vals[q]
            agg = v + m
        if _side == "upper":
            return agg < _limit if _strict else agg <= _limit
        return agg > _limit if _strict else agg >= _limit

    return g


class _SearchPlan:
    def __init__(self, problem: Problem, use_partial_checks: bool):
        order = order_variables(problem)
        self.order = order
        self.problem = problem
        n = len(order)
        position = {name: k for k, name in enumerate(order)}
        domain_by_name = dict(problem.parameters)
        doms = [list(domain_by_name[name].values) for name in order]
        ascending = [domain_by_name[name].ascending for name in order]
        all_int_depth = [domain_by_name[name].tag == INT for name in order]
        self.doms = doms
        self.range_steps = [[] for _ in range(n)]
        self.pred_steps = [[] for _ in range(n)]
        self.dead = any(len(d) == 0 for d in doms)
        decl_names = [name for name, _ in problem.parameters]
        self.perm = [position[name] for name in decl_names]
        if self.dead:
            return  # zero solutions; no per-constraint machinery needed
        tags = {name: dom.tag for name, dom in problem.parameters}

        for c in problem.constraints:
            if isinstance(c, AGGREGATE_KINDS):
                self._add_aggregate(
                    c, position, domain_by_name, doms, ascending,
                    all_int_depth, use_partial_checks,
                )
            else:
                g, depth = _predicate_runner(c, order, tags)
                self.pred_steps[depth].append(g)

    def _add_aggregate(self, c, position, domain_by_name, doms, ascending,
                       all_int_depth, use_partial_checks):
        is_prod = _is_product(c)
        upper, lower, strict = _sides(c)
        positions = sorted(position[p] for p in c.scope)
        scope_domains = [domain_by_name[p] for p in c.scope]
        if any(len(d) == 0 for d in scope_domains):
            return  # zero solutions regardless; search dies at the empty depth
        gate = _gate_ok(c, scope_domains)
        limit_is_int = type(c.limit) is int
        identity = 1 if is_prod else 0
        for i, p in enumerate(positions):
            after = positions[i + 1:]
            before = positions[:i]
            full = not after
            if not full and not (use_partial_checks and gate):
                continue
            rest_min = _combine(is_prod, (min(doms[q]) for q in after)) if after else identity
            rest_max = _combine(is_prod, (max(doms[q]) for q in after)) if after else identity
            all_int = (
                limit_is_int
                and all_int_depth[p]
                and all(all_int_depth[q] for q in before)
                and all(all_int_depth[q] for q in after)
            )
            can_range = ascending[p] and (gate if is_prod else (full or gate))
            contributions = []
            if upper:
                contributions.append(("upper", rest_min))
            if lower:
                contributions.append(("lower", rest_max))
            for side, rest in contributions:
                if can_range:
                    self.range_steps[p].append(_window_step(
                        doms[p], before, rest, c.limit,
                        is_prod=is_prod, side=side, strict=strict, all_int=all_int,
                    ))
                elif full or gate:
                    self.pred_steps[p].append(_aggregate_pred(
                        before, rest, c.limit,
                        is_prod=is_prod, side=side, strict=strict,
                    ))

    # -- search ------------------------------------------------------------

    def run(self, collect: bool):
        doms = self.doms
        n = len(doms)
        if n == 0:
            return [()] if collect else 1
        if self.dead:
            return [] if collect else 0
        range_steps = self.range_steps
        pred_steps = self.pred_steps
        vals: list = [None] * n
        out: list = []
        out_append = out.append
        count = 0
        if collect:
            getter = itemgetter(*self.perm) if n > 1 else None

        def window(k, lo, hi):
            for step in range_steps[k]:
                lo, hi = step(vals, lo, hi)
                if lo >= hi:
                    return lo, lo
            return lo, hi

        if n == 1:
            dom = doms[0]
            preds = pred_steps[0]
            lo, hi = window(0, 0, len(dom))
            for idx in range(lo, hi):
                v = dom[idx]
                ok = True
                for g in preds:
                    if not g(vals, v):
                        ok = False
                        break
                if ok:
                    if collect:
                        vals[0] = v
                        out_append((v,))
                    else:
                        count += 1
            return out if collect else count

        last = n - 1
        parent = last - 1
        last_dom = doms[last]
        last_preds = pred_steps[last]
        lo0, hi0 = window(0, 0, len(doms[0]))
        stack = [[0, lo0, hi0]]
        while stack:
            frame = stack[-1]
            k = frame[0]
            idx = frame[1]
            hi = frame[2]
            dom = doms[k]
            preds = pred_steps[k]
            v = None
            found = False
            while idx < hi:
                v = dom[idx]
                idx += 1
                ok = True
                for g in preds:
                    if not g(vals, v):
                        ok = False
                        break
                if ok:
                    found = True
                    break
            frame[1] = idx
            if not found:
                stack.pop()
                continue
            vals[k] = v
            if k == parent:
                llo, lhi = window(last, 0, len(last_dom))
                if llo >= lhi:
                    continue
                if not last_preds:
                    if collect:
                        for j in range(llo, lhi):
                            vals[last] = last_dom[j]
                            out_append(getter(vals))
                    else:
                        count += lhi - llo
                else:
                    if collect:
                        for j in range(llo, lhi):
                            lv = last_dom[j]
                            ok = True
                            for g in last_preds:
                                if not g(vals, lv):
                                    ok = False
                                    break
                            if ok:
                                vals[last] = lv
                                out_append(getter(vals))
                    else:
                        for j in range(llo, lhi):
                            lv = last_dom[j]
                            ok = True
                            for g in last_preds:
                                if not g(vals, lv):
                                    ok = False
                                    break
                            if ok:
                                count += 1
                continue
            clo, chi = window(k + 1, 0, len(doms[k + 1]))
            if clo < chi:
                stack.append([k + 1, clo, chi])
        return out if collect else count


# ---------------------------------------------------------------------------
# Public solving entry points


def solve_all(
    problem: Problem,
    *,
    use_preprocessing: bool = True,
    use_partial_checks: bool = True,
) -> SolutionSet:
    """Enumerate every configuration satisfying all constraints.

    Deterministic: solutions come out in the depth-first order induced by
    the variable ordering and domain order, re-expressed in declaration
    order.  The two keyword toggles disable the preprocessing and
    partial-check optimizations; they never change the result set.
    """
    prepped = preprocess(problem) if use_preprocessing else problem
    plan = _SearchPlan(prepped, use_partial_checks)
    configs = plan.run(collect=True)
    return SolutionSet(problem.parameter_names, tuple(configs))


def count_solutions(
    problem: Problem,
    *,
    use_preprocessing: bool = True,
    use_partial_checks: bool = True,
) -> int:
    """|solve_all(problem)| without materializing configurations."""
    prepped = preprocess(problem) if use_preprocessing else problem
    plan = _SearchPlan(prepped, use_partial_checks)
    return plan.run(collect=False)


__all__ = [
    "CheckResult",
    "Domain",
    "Problem",
    "SATISFIED",
    "SolutionSet",
    "SolverEvaluationError",
    "UNDECIDED",
    "VIOLATED",
    "check",
    "compile_problem",
    "count_solutions",
    "order_variables",
    "preprocess",
    "solve_all",
]

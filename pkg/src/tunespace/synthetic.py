"""Seeded generation of synthetic constrained search spaces.

Spaces are shaped by a target Cartesian size, a dimension count and a
constraint count.  The per-dimension value count v is the d-th root of
the target size: all but the last dimension round v to the nearest
integer, the last rounds in the opposite direction (e.g. 5.8 -> 5,
5.2 -> 6) so the realized product lands nearer the target.  Constraints
are drawn from a template pool (product/sum bounds plus generic mixed
arithmetic) with limits placed at an empirical quantile of the
aggregate so each constraint keeps roughly 20-90 % of configurations.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from .constraints import Generic, MaxProduct, MaxSum, MinProduct, MinSum
from .expressions import Binary, Comparison, Literal, ParamRef, evaluate
from .solver import Problem, SolutionSet

_TEMPLATES = (
    "max_product", "min_product", "max_sum", "min_sum",
    "generic_linear", "generic_mixed",
)
_QUANTILE_SAMPLES = 1024
_MIN_CONDITIONAL_SAMPLES = 24


@dataclass(frozen=True)
class SyntheticSpec:
    """Shape of one synthetic space; generation is a pure function of it."""

    target_size: int
    dimensions: int
    num_constraints: int
    seed: int = 0

    def __post_init__(self):
        if self.dimensions < 2:
            raise ValueError("synthetic spaces need at least 2 dimensions")
        if self.num_constraints < 0:
            raise ValueError("constraint count must be >= 0")
        if self.target_size < 2**self.dimensions:
            raise ValueError(
                f"target size {self.target_size} cannot give every one of "
                f"{self.dimensions} dimensions at least 2 values"
            )


@dataclass(frozen=True)
class SpaceStats:
    cartesian_size: int
    valid_count: int
    invalid_count: int
    num_constraints: int
    sparsity_fraction: float


def dims_for(target_size: int, dimensions: int) -> list[int]:
    """Per-dimension value counts approximating ``target_size`` as evenly
    as possible (contradictory rounding of the last dimension)."""
    if dimensions < 1:
        raise ValueError("need at least one dimension")
    if target_size < 2**dimensions:
        raise ValueError(f"target size {target_size} is infeasible for "
                         f"{dimensions} dimensions")
    root = round(target_size ** (1.0 / dimensions))
    for candidate in (root - 1, root, root + 1):
        if candidate >= 2 and candidate**dimensions == target_size:
            return [candidate] * dimensions
    v = target_size ** (1.0 / dimensions)
    nearest = math.floor(v + 0.5)  # round half away from zero (v > 0)
    last = math.floor(v) if nearest > v else math.ceil(v)
    counts = [nearest] * (dimensions - 1) + [last]
    if any(c < 2 for c in counts):
        raise ValueError(f"target size {target_size} is infeasible for "
                         f"{dimensions} dimensions")
    return counts


def _quantile_limit(lhs, points, fraction) -> int:
    """Empirical ``fraction``-quantile of the aggregate expression over
    sample points; always between its attainable min and max."""
    samples = sorted(evaluate(lhs, env) for env in points)
    index = round(fraction * (len(samples) - 1))
    return samples[index]


def _linear_lhs(subset, weights):
    terms = [Binary("*", Literal(w), ParamRef(p)) for w, p in zip(weights, subset)]
    lhs = terms[0]
    for term in terms[1:]:
        lhs = Binary("+", lhs, term)
    return lhs


def _mixed_lhs(subset):
    lhs = Binary("*", ParamRef(subset[0]), ParamRef(subset[1]))
    if len(subset) > 2:
        for name in subset[2:]:
            lhs = Binary("+", lhs, ParamRef(name))
    else:
        lhs = Binary("+", lhs, ParamRef(subset[1]))
    return lhs


def _chain(op, subset):
    agg = ParamRef(subset[0])
    for name in subset[1:]:
        agg = Binary(op, agg, ParamRef(name))
    return agg


def _make_constraint(template, subset, points, rng):
    fraction = rng.uniform(0.2, 0.9)
    scope = tuple(subset)
    if template == "max_product":
        return MaxProduct(_quantile_limit(_chain("*", subset), points, fraction), scope)
    if template == "min_product":
        return MinProduct(_quantile_limit(_chain("*", subset), points, 1 - fraction), scope)
    if template == "max_sum":
        return MaxSum(_quantile_limit(_chain("+", subset), points, fraction), scope)
    if template == "min_sum":
        return MinSum(_quantile_limit(_chain("+", subset), points, 1 - fraction), scope)
    if template == "generic_linear":
        weights = [rng.randint(1, 3) for _ in subset]
        weights[rng.randrange(len(subset))] = rng.randint(2, 3)
        lhs = _linear_lhs(subset, weights)
    else:  # generic_mixed
        lhs = _mixed_lhs(subset)
    op = rng.choice(("<=", ">="))
    limit = _quantile_limit(lhs, points, fraction if op == "<=" else 1 - fraction)
    predicate = Comparison((lhs, Literal(limit)), (op,))
    return Generic(predicate, scope)


def generate_space(spec: SyntheticSpec) -> Problem:
    """Deterministically generate the Problem described by ``spec``.

    Dimension i gets the linear integer domain 1..count_i; constraints
    are drawn over random dimension subsets of size >= 2.  Each limit is
    the fraction-quantile of its aggregate over sample points that
    survive the constraints drawn so far, so constraints compound
    instead of contradicting each other outright.
    """
    counts = dims_for(spec.target_size, spec.dimensions)
    names = [f"p{i}" for i in range(spec.dimensions)]
    domains = {name: list(range(1, count + 1)) for name, count in zip(names, counts)}
    rng = random.Random(
        f"{spec.seed}:{spec.target_size}:{spec.dimensions}:{spec.num_constraints}"
    )
    all_points = [
        {name: rng.choice(domains[name]) for name in names}
        for _ in range(_QUANTILE_SAMPLES)
    ]
    surviving = list(all_points)
    constraints = []
    for _ in range(spec.num_constraints):
        size = rng.randint(2, spec.dimensions)
        subset = rng.sample(names, size)
        template = rng.choice(_TEMPLATES)
        points = surviving if len(surviving) >= _MIN_CONDITIONAL_SAMPLES else all_points
        constraint = _make_constraint(template, subset, points, rng)
        constraints.append(constraint)
        predicate = constraint.expression()
        surviving = [env for env in surviving if evaluate(predicate, env) is True]
    return Problem(domains, constraints)


def characterize(problem: Problem, solutions: SolutionSet) -> SpaceStats:
    """Counts and sparsity of a resolved space."""
    if solutions.parameter_names != problem.parameter_names:
        raise ValueError("solutions do not belong to this problem")
    cartesian = problem.cartesian_size
    valid = len(solutions)
    if valid > cartesian:
        raise ValueError("solutions do not belong to this problem")
    invalid = cartesian - valid
    sparsity = invalid / cartesian if cartesian else 0.0
    return SpaceStats(
        cartesian_size=cartesian,
        valid_count=valid,
        invalid_count=invalid,
        num_constraints=len(problem.sources),
        sparsity_fraction=sparsity,
    )


DEFAULT_DIMENSIONS = (2, 3, 4, 5)
DEFAULT_TARGET_SIZES = (10**4, 10**5, 10**6)
DEFAULT_CONSTRAINT_COUNTS = (2, 4, 6)


def default_suite(seed: int = 0) -> list[SyntheticSpec]:
    """The desk-scale benchmark grid: d x s x m, one spec per cell.

    Every cell mixes ``seed`` with its own shape, so one seed yields 36
    distinct deterministic spaces.
    """
    return [
        SyntheticSpec(target_size=s, dimensions=d, num_constraints=m, seed=seed)
        for d in DEFAULT_DIMENSIONS
        for s in DEFAULT_TARGET_SIZES
        for m in DEFAULT_CONSTRAINT_COUNTS
    ]

"""Brute-force oracle, problem file I/O, and the benchmark harness.

The oracle iterates the full Cartesian product of the declared domains
and evaluates the original constraint expression texts with the strict
tree-walking evaluator; it shares no machinery with the optimized
solver's classification or search, which is what makes the equivalence
check meaningful.

Benchmark timing wraps construction only (parse + compile + solve +
index for the optimized method, parse + enumerate for brute force) with
a monotonic clock; file I/O stays outside.  The minimum over
repetitions is reported.
"""

from __future__ import annotations

import csv
import itertools
import json
import keyword
import math
import re
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    EvaluationError,
    SchemaError,
    TunespaceError,
    TypeMismatchError,
    ValidationFailure,
)
from .expressions import evaluate, parse_expression
from .solver import Domain, Problem, SolutionSet, compile_problem, solve_all
from .space import build_search_space
from .synthetic import SyntheticSpec, generate_space

BRUTE_FORCE_GUARD = 10**8

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


# ---------------------------------------------------------------------------
# Problem JSON schema


def _reject_constant(text):
    raise SchemaError(f"{text} is not a legal JSON value")


def _checked_pairs(pairs):
    record = {}
    for key, value in pairs:
        if key in record:
            raise SchemaError(f"duplicate key {key!r}")
        record[key] = value
    return record


def _load_json(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(
            handle, object_pairs_hook=_checked_pairs, parse_constant=_reject_constant
        )


def parse_problem_payload(payload) -> tuple[dict[str, list], list[str]]:
    """Validate the problem JSON schema; returns (domains, constraint texts)."""
    if not isinstance(payload, dict):
        raise SchemaError("expected a JSON object", "$")
    for key in payload:
        if key not in ("parameters", "constraints"):
            raise SchemaError(f"unknown key {key!r}", "$")
    if "parameters" not in payload:
        raise SchemaError('missing key "parameters"', "$")
    if "constraints" not in payload:
        raise SchemaError('missing key "constraints"', "$")
    raw_params = payload["parameters"]
    if not isinstance(raw_params, dict) or not raw_params:
        raise SchemaError("expected a non-empty object of parameter domains",
                          "$.parameters")
    domains: dict[str, list] = {}
    for name, values in raw_params.items():
        where = f"$.parameters.{name}"
        if not _NAME_RE.match(name) or keyword.iskeyword(name):
            raise SchemaError(f"invalid parameter name {name!r}", "$.parameters")
        if not isinstance(values, list) or not values:
            raise SchemaError("expected a non-empty array of values", where)
        tag = None
        seen = set()
        for i, v in enumerate(values):
            t = type(v)
            if t is bool:
                kind = "bool"
            elif t is int:
                kind = "int"
            elif t is float:
                kind = "real"
                if not math.isfinite(v):
                    raise SchemaError("values must be finite", f"{where}[{i}]")
            elif t is str:
                kind = "text"
            else:
                raise SchemaError(
                    f"values must be scalars, got {type(v).__name__}", f"{where}[{i}]"
                )
            if tag is None:
                tag = kind
            elif kind != tag:
                raise SchemaError(
                    f"heterogeneous domain: mixes {tag} and {kind}", f"{where}[{i}]"
                )
            key = (kind, v)
            if key in seen:
                raise SchemaError(f"duplicate domain value {v!r}", f"{where}[{i}]")
            seen.add(key)
        try:
            Domain(values)
        except ValueError as exc:
            raise SchemaError(str(exc), where) from None
        domains[name] = list(values)
    raw_constraints = payload["constraints"]
    if not isinstance(raw_constraints, list):
        raise SchemaError("expected an array of constraint strings", "$.constraints")
    for i, text in enumerate(raw_constraints):
        if not isinstance(text, str):
            raise SchemaError("constraints must be strings", f"$.constraints[{i}]")
    return domains, list(raw_constraints)


def load_problem(path) -> Problem:
    """Load and compile a problem JSON file."""
    domains, sources = parse_problem_payload(_load_json(path))
    return compile_problem(domains, sources)


def problem_payload(problem: Problem) -> dict:
    """The JSON payload for a problem: declared domains plus the original
    constraint texts."""
    return {
        "parameters": {name: list(dom.values) for name, dom in problem.declared},
        "constraints": list(problem.sources),
    }


def save_problem(problem: Problem, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(problem_payload(problem), handle, indent=2)
        handle.write("\n")


# ---------------------------------------------------------------------------
# Brute-force oracle


def _enumerate_brute_force(names, domains, sources):
    exprs = [parse_expression(s) for s in sources]
    solutions = []
    append = solutions.append
    for combo in itertools.product(*domains):
        env = dict(zip(names, combo))
        ok = True
        for expr, source in zip(exprs, sources):
            try:
                result = evaluate(expr, env)
            except EvaluationError as exc:
                raise EvaluationError(
                    f"constraint {source!r} failed at {env!r}: {exc}"
                ) from None
            if result is True:
                continue
            if result is False:
                ok = False
                break
            raise TypeMismatchError(
                f"constraint {source!r} is not boolean-valued at {env!r}"
            )
        if ok:
            append(combo)
    return solutions


def brute_force_solve(problem: Problem, *, force: bool = False) -> SolutionSet:
    """Ground-truth enumeration: iterate the declared Cartesian product
    and evaluate the original constraint texts per combination.

    Refuses Cartesian sizes above 10^8 unless ``force`` is set.
    """
    size = problem.cartesian_size
    if size > BRUTE_FORCE_GUARD and not force:
        raise TunespaceError(
            f"brute force over {size} combinations refused; pass force=True "
            "to override"
        )
    names = tuple(name for name, _ in problem.declared)
    domains = [dom.values for _, dom in problem.declared]
    return SolutionSet(names, tuple(_enumerate_brute_force(names, domains, problem.sources)))


# ---------------------------------------------------------------------------
# Table-style statistics


def avg_constraint_evaluations(cartesian: int, valid: int, num_constraints: int):
    """Average constraint evaluations brute force needs per full pass:
    (|invalid| + |invalid| * |constraints|) / 2 + |valid|.

    Exact; returns an int when whole, otherwise a Fraction.
    """
    if valid < 0 or valid > cartesian:
        raise ValueError("need 0 <= valid <= cartesian")
    if num_constraints < 1:
        raise ValueError("need at least one constraint")
    invalid = cartesian - valid
    total = Fraction(invalid + invalid * num_constraints, 2) + valid
    return int(total) if total.denominator == 1 else total


# ---------------------------------------------------------------------------
# Benchmark harness


METHODS = ("optimized", "bruteforce")
TIME_BOUNDARIES = ("solve", "solve+index")


@dataclass
class SpaceRecord:
    space_id: str
    method: str
    wall_time_seconds: float
    valid_count: int
    cartesian_size: int
    validation: str  # "pass" | "skipped"
    repetitions: int


@dataclass
class BenchReport:
    spaces: list[SpaceRecord]
    aggregates: dict

    def to_payload(self) -> dict:
        return {
            "spaces": [asdict(r) for r in self.spaces],
            "aggregates": self.aggregates,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "BenchReport":
        return cls(
            spaces=[SpaceRecord(**r) for r in payload["spaces"]],
            aggregates=payload["aggregates"],
        )


def save_report_json(report: BenchReport, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(report.to_payload(), handle, indent=2)
        handle.write("\n")


def load_report(path) -> BenchReport:
    return BenchReport.from_payload(_load_json(path))


CSV_COLUMNS = ("space_id", "method", "wall_time_seconds", "valid_count",
               "cartesian_size", "validation", "repetitions")


def save_report_csv(report: BenchReport, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for record in report.spaces:
            row = asdict(record)
            writer.writerow([row[column] for column in CSV_COLUMNS])


SuiteEntry = Union[str, Path, SyntheticSpec, tuple]


def _suite_case(entry: SuiteEntry, seed: int):
    """Normalize a suite entry to (space_id, domains, sources).

    Entries may be problem-file paths, ready SyntheticSpecs, or bare
    (target_size, dimensions, num_constraints) tuples seeded with the
    run-level ``seed``.
    """
    if isinstance(entry, tuple):
        size, dimensions, constraints = entry
        entry = SyntheticSpec(target_size=size, dimensions=dimensions,
                              num_constraints=constraints, seed=seed)
    if isinstance(entry, SyntheticSpec):
        space_id = (f"d{entry.dimensions}_s{entry.target_size}"
                    f"_m{entry.num_constraints}_seed{entry.seed}")
        problem = generate_space(entry)
        domains = {name: list(dom.values) for name, dom in problem.declared}
        return space_id, domains, list(problem.sources)
    path = Path(entry)
    domains, sources = parse_problem_payload(_load_json(path))
    return path.stem, domains, sources


def _diff_sample(expected: set, got: set, limit: int = 10):
    missing = sorted(expected - got)[:limit]
    unexpected = sorted(got - expected)[:limit]
    return missing, unexpected


def run_benchmark(
    suite: Sequence[SuiteEntry],
    methods: Sequence[str] = METHODS,
    repetitions: int = 1,
    seed: int = 0,
    *,
    time_boundary: str = "solve+index",
    force: bool = False,
) -> BenchReport:
    """Time each method on each space, validate the optimized solver
    against the oracle when both run, and aggregate totals, speedup and
    the log-log time-vs-valid-count slope.

    A validation mismatch aborts with a sample of up to ten differing
    configurations on each side.
    """
    methods = tuple(methods)
    if not methods or any(m not in METHODS for m in methods):
        raise ValueError(f"methods must be a non-empty subset of {METHODS}")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    if time_boundary not in TIME_BOUNDARIES:
        raise ValueError(f"time_boundary must be one of {TIME_BOUNDARIES}")
    records: list[SpaceRecord] = []
    for entry in suite:
        space_id, domains, sources = _suite_case(entry, seed)
        cartesian = 1
        for values in domains.values():
            cartesian *= len(values)
        if cartesian > BRUTE_FORCE_GUARD and "bruteforce" in methods and not force:
            raise TunespaceError(
                f"suite space {space_id} has Cartesian size {cartesian}; "
                "pass force=True to brute-force it"
            )
        names = tuple(domains)
        results: dict[str, set] = {}
        valid_counts: dict[str, int] = {}
        times: dict[str, float] = {}
        for method in methods:
            best = math.inf
            outcome = None
            for _rep in range(repetitions):
                if method == "optimized":
                    start = time.perf_counter()
                    problem = compile_problem(domains, sources)
                    if time_boundary == "solve+index":
                        space = build_search_space(problem)
                        elapsed = time.perf_counter() - start
                        outcome = space.configurations
                    else:
                        solutions = solve_all(problem)
                        elapsed = time.perf_counter() - start
                        outcome = solutions.configurations
                else:
                    domain_values = [tuple(domains[name]) for name in names]
                    start = time.perf_counter()
                    outcome = _enumerate_brute_force(names, domain_values, sources)
                    elapsed = time.perf_counter() - start
                best = min(best, elapsed)
            results[method] = set(outcome)
            valid_counts[method] = len(outcome)
            times[method] = best
        if "optimized" in results and "bruteforce" in results:
            if results["optimized"] != results["bruteforce"]:
                missing, unexpected = _diff_sample(
                    results["bruteforce"], results["optimized"]
                )
                raise ValidationFailure(space_id, missing, unexpected)
            validation = "pass"
        else:
            validation = "skipped"
        for method in methods:
            records.append(SpaceRecord(
                space_id=space_id,
                method=method,
                wall_time_seconds=times[method],
                valid_count=valid_counts[method],
                cartesian_size=cartesian,
                validation=validation,
                repetitions=repetitions,
            ))
    return BenchReport(spaces=records, aggregates=_aggregate(records, methods))


def _aggregate(records: Sequence[SpaceRecord], methods: Sequence[str]) -> dict:
    totals = {
        method: sum(r.wall_time_seconds for r in records if r.method == method)
        for method in methods
    }
    speedup = None
    if "optimized" in totals and "bruteforce" in totals and totals["optimized"] > 0:
        speedup = totals["bruteforce"] / totals["optimized"]
    slopes = {method: _loglog_slope(records, method) for method in methods}
    return {
        "total_time_seconds": totals,
        "speedup": speedup,
        "slope": slopes,
    }


def _loglog_slope(records: Sequence[SpaceRecord], method: str) -> Optional[float]:
    """Slope of log10(time) against log10(valid count)."""
    points = [
        (r.valid_count, r.wall_time_seconds)
        for r in records
        if r.method == method and r.valid_count > 0 and r.wall_time_seconds > 0
    ]
    if len(points) < 2:
        return None
    x = np.log10([p[0] for p in points])
    y = np.log10([p[1] for p in points])
    if np.all(x == x[0]):
        return None
    slope, _intercept = np.polyfit(x, y, 1)
    return float(slope)

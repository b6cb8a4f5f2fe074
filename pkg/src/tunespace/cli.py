"""Command-line front end.

Subcommands: solve, generate, bench, validate, stats.  Exit codes:
0 success, 1 validation failure, 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import (
    METHODS,
    TIME_BOUNDARIES,
    avg_constraint_evaluations,
    brute_force_solve,
    load_problem,
    parse_problem_payload,
    problem_payload,
    run_benchmark,
    save_problem,
    save_report_csv,
    save_report_json,
    _load_json,
)
from .errors import TunespaceError, ValidationFailure
from .solver import compile_problem, count_solutions, solve_all
from .space import build_search_space
from .synthetic import SyntheticSpec, characterize, generate_space


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tunespace",
        description="Construct, query and benchmark constraint-valid "
                    "auto-tuning search spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="resolve a problem file to its search space")
    p_solve.add_argument("--input", required=True, help="problem JSON file")
    p_solve.add_argument("--output", help="write the space payload here (default stdout)")
    p_solve.add_argument("--format", choices=("rows", "columns", "maps"), default="rows")
    p_solve.add_argument("--count-only", action="store_true",
                         help="print only the number of valid configurations")

    p_gen = sub.add_parser("generate", help="generate a synthetic problem file")
    p_gen.add_argument("--size", required=True, type=int, help="target Cartesian size")
    p_gen.add_argument("--dims", required=True, type=int, help="number of parameters")
    p_gen.add_argument("--constraints", required=True, type=int)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--output", help="problem JSON path (default stdout)")

    p_bench = sub.add_parser("bench", help="time solvers over a suite of spaces")
    group = p_bench.add_mutually_exclusive_group(required=True)
    group.add_argument("--suite", help="directory of problem JSON files")
    group.add_argument("--grid", help="synthetic grid, e.g. 'd=2,3;s=1e4,1e5;m=2,4'")
    p_bench.add_argument("--methods", default="optimized,bruteforce",
                         help="comma-separated subset of: optimized, bruteforce")
    p_bench.add_argument("--reps", type=int, default=1)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--output", help="report JSON path (a .csv sibling is "
                                          "written next to it)")
    p_bench.add_argument("--time-boundary", choices=TIME_BOUNDARIES,
                         default="solve+index")
    p_bench.add_argument("--force", action="store_true",
                         help="lift the brute-force size guard")

    p_val = sub.add_parser("validate",
                           help="check the optimized solver against brute force")
    p_val.add_argument("--input", required=True)
    p_val.add_argument("--force", action="store_true")

    p_stats = sub.add_parser("stats", help="space statistics and the average "
                                           "constraint-evaluation count")
    p_stats.add_argument("--input", required=True,
                         help="problem JSON, or a counts file with "
                              "cartesian_size/valid_count/num_constraints")
    return parser


def _cmd_solve(args) -> int:
    problem = load_problem(args.input)
    if args.count_only:
        print(count_solutions(problem))
        return 0
    space = build_search_space(problem)
    payload = space.export(args.format)
    text = json.dumps(payload, indent=2)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def _cmd_generate(args) -> int:
    spec = SyntheticSpec(target_size=args.size, dimensions=args.dims,
                         num_constraints=args.constraints, seed=args.seed)
    problem = generate_space(spec)
    if args.output:
        save_problem(problem, args.output)
    else:
        print(json.dumps(problem_payload(problem), indent=2))
    return 0


def _parse_grid(text: str, seed: int) -> list[SyntheticSpec]:
    """Grid syntax: 'd=2,3;s=1e4,1e5;m=2,4' -> one spec per (d, s, m)."""
    fields = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"malformed grid component {part!r}")
        key, _, values = part.partition("=")
        key = key.strip()
        if key not in ("d", "s", "m"):
            raise ValueError(f"unknown grid key {key!r} (expected d, s, m)")
        fields[key] = [int(float(v)) for v in values.split(",") if v.strip()]
    missing = {"d", "s", "m"} - set(fields)
    if missing:
        raise ValueError(f"grid is missing {sorted(missing)}")
    return [
        SyntheticSpec(target_size=s, dimensions=d, num_constraints=m, seed=seed)
        for d in fields["d"] for s in fields["s"] for m in fields["m"]
    ]


def _cmd_bench(args) -> int:
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if any(m not in METHODS for m in methods) or not methods:
        print(f"error: --methods must be a subset of {METHODS}", file=sys.stderr)
        return 2
    if args.suite:
        suite_dir = Path(args.suite)
        entries = sorted(suite_dir.glob("*.json"))
        if not entries:
            print(f"error: no problem files in {suite_dir}", file=sys.stderr)
            return 2
        suite = list(entries)
    else:
        suite = _parse_grid(args.grid, args.seed)
    report = run_benchmark(
        suite, methods=methods, repetitions=args.reps, seed=args.seed,
        time_boundary=args.time_boundary, force=args.force,
    )
    if args.output:
        out = Path(args.output)
        save_report_json(report, out)
        save_report_csv(report, out.with_suffix(".csv"))
    else:
        print(json.dumps(report.to_payload(), indent=2))
    aggregates = report.aggregates
    summary = ", ".join(
        f"{method}={seconds:.3f}s"
        for method, seconds in aggregates["total_time_seconds"].items()
    )
    print(f"total construction time: {summary}", file=sys.stderr)
    if aggregates["speedup"] is not None:
        print(f"speedup: {aggregates['speedup']:.1f}x", file=sys.stderr)
    return 0


def _cmd_validate(args) -> int:
    problem = load_problem(args.input)
    oracle = brute_force_solve(problem, force=args.force)
    optimized = solve_all(problem)
    if optimized.as_set() != oracle.as_set():
        missing = sorted(oracle.as_set() - optimized.as_set())[:10]
        unexpected = sorted(optimized.as_set() - oracle.as_set())[:10]
        raise ValidationFailure(str(args.input), missing, unexpected)
    print(f"PASS: {len(optimized)} configurations match the brute-force oracle")
    return 0


def _cmd_stats(args) -> int:
    payload = _load_json(args.input)
    if isinstance(payload, dict) and "parameters" in payload:
        domains, sources = parse_problem_payload(payload)
        problem = compile_problem(domains, sources)
        stats = characterize(problem, solve_all(problem))
        cartesian, valid = stats.cartesian_size, stats.valid_count
        constraints = stats.num_constraints
        sparsity = stats.sparsity_fraction
    else:
        try:
            cartesian = payload["cartesian_size"]
            valid = payload["valid_count"]
            constraints = payload["num_constraints"]
        except (TypeError, KeyError):
            print("error: input must be a problem file or a counts file with "
                  "cartesian_size, valid_count and num_constraints",
                  file=sys.stderr)
            return 2
        sparsity = (cartesian - valid) / cartesian if cartesian else 0.0
    print(f"cartesian_size: {cartesian}")
    print(f"valid_count: {valid}")
    print(f"invalid_count: {cartesian - valid}")
    print(f"num_constraints: {constraints}")
    print(f"sparsity_fraction: {sparsity:.6g}")
    if constraints >= 1:
        print(f"avg_constraint_evaluations: "
              f"{avg_constraint_evaluations(cartesian, valid, constraints)}")
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "generate": _cmd_generate,
    "bench": _cmd_bench,
    "validate": _cmd_validate,
    "stats": _cmd_stats,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except ValidationFailure as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    except (TunespaceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Constraint-valid auto-tuning search space construction.

Build a problem from parameter domains and constraint expression texts,
enumerate every valid configuration with the optimized solver, and query
the resulting search space (bounds, neighbors, sampling, export), with a
brute-force oracle and benchmark harness for validation.
"""

from .constraints import (
    CompiledConstraint,
    ExactProduct,
    ExactSum,
    Generic,
    MaxProduct,
    MaxSum,
    MinProduct,
    MinSum,
    UnaryRestriction,
    classify,
    compile_constraints,
    origin_text,
    split_conjunctions,
)
from .errors import (
    CompileError,
    DivisionByZeroError,
    EvaluationError,
    OverflowValueError,
    ParseError,
    SchemaError,
    SpaceError,
    TunespaceError,
    TypeMismatchError,
    UnboundParameterError,
    UnknownParameterError,
    UnsatisfiableConstraintError,
    UnsupportedSyntaxError,
    ValidationFailure,
)
from .expressions import (
    Binary,
    Comparison,
    Expr,
    Literal,
    ParamRef,
    Unary,
    evaluate,
    format_expression,
    free_parameters,
    parse_expression,
)
from .solver import (
    CheckResult,
    Domain,
    Problem,
    SATISFIED,
    SolutionSet,
    UNDECIDED,
    VIOLATED,
    check,
    compile_problem,
    count_solutions,
    order_variables,
    preprocess,
    solve_all,
)
from .space import SearchSpace, build_search_space, import_space, space_from_solutions
from .synthetic import (
    SpaceStats,
    SyntheticSpec,
    characterize,
    default_suite,
    dims_for,
    generate_space,
)
from .bench import (
    BenchReport,
    avg_constraint_evaluations,
    brute_force_solve,
    load_problem,
    load_report,
    run_benchmark,
    save_problem,
    save_report_csv,
    save_report_json,
)

__version__ = "0.1.0"

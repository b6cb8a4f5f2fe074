"""Exception types shared across the package."""


class TunespaceError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TunespaceError):
    """Malformed constraint expression text.

    ``position`` is the character offset into the source where the
    problem was detected (end-of-input errors point one past the end).
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnsupportedSyntaxError(ParseError):
    """Syntactically recognizable input outside the constraint dialect
    (function calls, indexing, lambdas)."""


class EvaluationError(TunespaceError):
    """Expression evaluation failed."""


class UnboundParameterError(EvaluationError):
    def __init__(self, name: str):
        super().__init__(f"parameter {name!r} is not bound")
        self.name = name


class DivisionByZeroError(EvaluationError):
    pass


class TypeMismatchError(EvaluationError):
    pass


class OverflowValueError(EvaluationError):
    """Arithmetic left the representable range (64-bit integers,
    finite reals)."""


class CompileError(TunespaceError):
    """Constraint compilation failed."""


class UnknownParameterError(CompileError):
    def __init__(self, name: str, context: str = ""):
        detail = f" in {context}" if context else ""
        super().__init__(f"unknown parameter {name!r}{detail}")
        self.name = name


class UnsatisfiableConstraintError(CompileError):
    """A constraint is constant false: the problem has no solutions by
    construction."""


class SchemaError(TunespaceError):
    """Problem or report file violates the JSON schema.

    ``path`` locates the offending element, e.g. ``$.parameters.x[3]``.
    """

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class SpaceError(TunespaceError):
    """Invalid query against a search space."""


class ValidationFailure(TunespaceError):
    """Optimized solver and brute-force oracle disagree.

    Carries up to ten mismatched configurations from either side.
    """

    def __init__(self, space_id: str, missing: list, unexpected: list):
        self.space_id = space_id
        self.missing = missing
        self.unexpected = unexpected
        super().__init__(
            f"validation failed for {space_id}: "
            f"{len(missing)} sample configurations missing from optimized output, "
            f"{len(unexpected)} unexpected; missing={missing!r} unexpected={unexpected!r}"
        )

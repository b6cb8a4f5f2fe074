"""Tagged scalar values used for parameters and literals.

Values are plain Python scalars with a strict tag discipline on top:
``bool`` is its own tag and never compares equal to ``int``, integers
must fit a signed 64-bit range, and reals must be finite.  Two values
are "the same" only when their tags match, so domain membership and
configuration identity are tag-aware even where Python's ``==`` is not
(``True == 1``, ``1 == 1.0``).
"""

import math

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

INT = "int"
REAL = "real"
BOOL = "bool"
TEXT = "text"


def tag_of(value) -> str:
    t = type(value)
    if t is bool:
        return BOOL
    if t is int:
        return INT
    if t is float:
        return REAL
    if t is str:
        return TEXT
    raise TypeError(f"unsupported value type: {type(value).__name__}")


def is_numeric(value) -> bool:
    t = type(value)
    return t is int or t is float


def validate_value(value):
    """Return ``value`` unchanged, or raise ``ValueError`` if it is not a
    legal tagged scalar (int out of 64-bit range, non-finite real)."""
    tag = tag_of(value)
    if tag == INT and not INT_MIN <= value <= INT_MAX:
        raise ValueError(f"integer {value} exceeds the signed 64-bit range")
    if tag == REAL and not math.isfinite(value):
        raise ValueError(f"real values must be finite, got {value!r}")
    return value


def value_key(value):
    """Hashable identity key; distinguishes 1, 1.0 and True."""
    return (tag_of(value), value)


def values_equal(a, b) -> bool:
    return tag_of(a) == tag_of(b) and a == b


def format_value(value) -> str:
    """Render a value as dialect source text."""
    tag = tag_of(value)
    if tag == BOOL:
        return "True" if value else "False"
    if tag == TEXT:
        escaped = value.replace("\\", "\\\\").replace("'", "\\'")
        return f"'{escaped}'"
    return repr(value)

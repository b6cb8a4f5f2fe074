# Walk through the constraint expression dialect: parsing, evaluation,
# canonical formatting, and the errors you get for malformed input.
#
# $ python demos/01_constraint_expressions.py

from tunespace import (
    ParseError,
    TypeMismatchError,
    evaluate,
    format_expression,
    free_parameters,
    parse_expression,
)

# Constraints are ordinary Python-style boolean expressions over named
# tunable parameters.  This one bounds the total threads in a 2D block:
expr = parse_expression("32 <= thread_block_x * thread_block_y <= 1024")
print("tree:", expr)

# A chained comparison is ONE node, not two; its free parameters come out
# in first-appearance order.
print("free parameters:", free_parameters(expr))

# Evaluation needs a value for every free parameter.
for x, y in [(8, 4), (1, 1), (64, 32)]:
    ok = evaluate(expr, {"thread_block_x": x, "thread_block_y": y})
    print(f"  {x:>3} x {y:<3} threads -> {'valid' if ok else 'invalid'}")

# Division is floored and the remainder follows the divisor's sign,
# so published constraint strings keep their meaning.
print("7 // 2 =", evaluate(parse_expression("7 // 2"), {}))
print("-7 % 2 =", evaluate(parse_expression("-7 % 2"), {}))

# format_expression renders a canonical text that parses back to the
# exact same tree, inserting parentheses only where precedence needs them.
tricky = parse_expression("-(a + b) * c ** 2")
text = format_expression(tricky)
print("canonical:", text)
assert parse_expression(text) == tricky

# Malformed input fails with a character offset and what was expected.
try:
    parse_expression("a <=")
except ParseError as err:
    print("parse error:", err)

# The dialect is deliberately small: no calls, indexing, or lambdas.
try:
    parse_expression("max(a, b) < 4")
except ParseError as err:
    print("unsupported:", err)

# Booleans are their own type; they do not quietly act as integers.
try:
    evaluate(parse_expression("flag + 1 > 0"), {"flag": True})
except TypeMismatchError as err:
    print("type error:", err)

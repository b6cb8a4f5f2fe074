# The constraint compiler rewrites one user-written compound constraint
# into small, specific constraints the solver can exploit, in three
# steps: parse, split, classify.  Single-parameter restrictions are
# applied to the domains immediately and disappear.
#
# $ python demos/02_compilation_pipeline.py

from tunespace import (
    classify,
    compile_constraints,
    format_expression,
    parse_expression,
    split_conjunctions,
)

source = "2 <= block_size_y <= 32 <= block_size_x * block_size_y <= 1024"
print("user constraint:", source)

# Step 1: parse to a tree (the whole chain is one comparison node).
expr = parse_expression(source)

# Step 2: split into binary comparisons with fewer variables each, so a
# partially resolved assignment can already rule configurations out.
parts = split_conjunctions(expr)
print("\nsplit into", len(parts), "parts:")
for part in parts:
    print("   ", format_expression(part))

# Step 3: classify each part into the most specific kind available.
print("\nclassified:")
for part in parts:
    print("   ", classify(part))

# compile_constraints runs all three steps and applies the unary parts
# (2 <= y, y <= 32) to the domain of block_size_y on the spot.
x_domain = [1, 2, 4, 8, 16] + [32 * i for i in range(1, 33)]
y_domain = [2**i for i in range(6)]
constraints, pruned = compile_constraints(
    [source], {"block_size_x": x_domain, "block_size_y": y_domain}
)
print("\nremaining constraints:")
for c in constraints:
    print("   ", c)
print("y-domain pruned from", y_domain, "to", list(pruned["block_size_y"]))

# Anything without special structure stays a generic compiled predicate:
print("\nweighted sums are generic:", classify(parse_expression("x*2 + y <= 10")))
# ... and a tautology simply compiles away:
print("tautology compiles to:", classify(parse_expression("True")))

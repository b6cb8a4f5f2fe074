# A resolved search space answers the questions optimization algorithms
# ask: true bounds, valid neighbors, uniform samples, fast membership.
#
# $ python demos/04_search_space_queries.py

import json

from tunespace import build_search_space, compile_problem, import_space

problem = compile_problem(
    {"x": [1, 2, 4, 8], "y": [1, 2, 4, 8], "unroll": [0, 1, 2]},
    ["x * y <= 16", "not (unroll == 2 and x == 1)"],
)
space = build_search_space(problem)
print(space)

# True bounds come from the valid configurations, not the declared
# domains: x = 8 only survives in combination with y <= 2.
print("declared x:", [1, 2, 4, 8], "-> true bounds:", space.bounds("x"))

# Hamming neighbors: valid configurations differing in at most d
# positions.  The query point may even be an invalid configuration,
# which is exactly what a mutation step needs.
config = (2, 4, 1)
print(f"\nhamming-1 neighbors of {config}:")
for neighbor in space.neighbors(config, "hamming", 1):
    print("   ", neighbor)

# adjacent-index neighbors move at most one step in each parameter's
# sorted unique value list - ordinal locality for hill climbers.
print(f"adjacent-index neighbors of {config}:")
for neighbor in space.neighbors(config, "adjacent-index"):
    print("   ", neighbor)

# Uniform sampling without replacement, reproducible by seed.  Because
# the space is fully resolved, there is no bias toward any region.
print("\nthree samples (seed 7): ", space.sample(3, seed=7))
print("same seed, same result:", space.sample(3, seed=7))

# Membership lookups are hash-based.
print("\nindex of (2, 4, 1):", space.index_of((2, 4, 1)))
print("index of (1, 1, 2):", space.index_of((1, 1, 2)))  # violates a constraint

# Three export layouts carry identical content; pick whichever matches
# the consumer.  They all re-import to an equal space.
rows = space.export("rows")
columns = space.export("columns")
maps = space.export("maps")
print("\nrows payload:    ", json.dumps(rows)[:72], "...")
print("columns payload: ", json.dumps(columns)[:72], "...")
print("maps payload:    ", json.dumps(maps)[:72], "...")
assert import_space(rows) == import_space(columns) == import_space(maps) == space
print("all three formats re-import to the same space")

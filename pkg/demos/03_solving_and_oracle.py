# Resolve a constrained parameter space to ALL of its valid
# configurations, and cross-check the optimized solver against the
# brute-force oracle.
#
# $ python demos/03_solving_and_oracle.py

import time

from tunespace import (
    brute_force_solve,
    compile_problem,
    count_solutions,
    order_variables,
    preprocess,
    solve_all,
)

# The thread-block example: 37 x 6 = 222 raw combinations.
x_domain = [1, 2, 4, 8, 16] + [32 * i for i in range(1, 33)]
y_domain = [2**i for i in range(6)]
problem = compile_problem(
    {"block_size_x": x_domain, "block_size_y": y_domain},
    ["32 <= block_size_x*block_size_y <= 1024"],
)
print("Cartesian size:", problem.cartesian_size)

# The solver visits the most constrained variable first; ties break
# toward the smaller domain, so block_size_y leads here.
print("search order:", order_variables(problem))

# Preprocessing prunes values no single constraint can ever accept:
# block_size_x > 512 cannot meet the 1024 bound even with the smallest y.
pruned = preprocess(problem)
print("x-domain after preprocessing:",
      len(pruned.domain("block_size_x")), "of", len(x_domain), "values")

solutions = solve_all(problem)
print("valid configurations:", len(solutions))
print("first five:", list(solutions)[:5])

# count_solutions avoids materializing configurations entirely.
assert count_solutions(problem) == len(solutions)

# The oracle enumerates all 222 combinations and evaluates the original
# expression text for each; both must agree exactly.
oracle = brute_force_solve(problem)
assert solutions.as_set() == oracle.as_set()
print("oracle agrees on all", len(oracle), "configurations")

# On a bigger space the difference in approach starts to show.
big = compile_problem(
    {"x": list(range(1, 1001)), "y": list(range(1, 1001))},
    ["x * y <= 250000", "x + y >= 100"],
)
t0 = time.perf_counter()
fast = solve_all(big)
t_fast = time.perf_counter() - t0
t0 = time.perf_counter()
slow = brute_force_solve(big)
t_slow = time.perf_counter() - t0
assert fast.as_set() == slow.as_set()
print(f"\n1e6-combination space: {len(fast)} valid")
print(f"  optimized:   {t_fast * 1000:8.1f} ms")
print(f"  brute force: {t_slow * 1000:8.1f} ms  ({t_slow / t_fast:.0f}x slower)")
# Counting alone is cheaper still: product/sum bounds turn whole runs of
# the innermost variable into arithmetic.
t0 = time.perf_counter()
count_solutions(big)
print(f"  count only:  {(time.perf_counter() - t0) * 1000:8.1f} ms")

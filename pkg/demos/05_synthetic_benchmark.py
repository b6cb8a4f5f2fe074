# Generate seeded synthetic search spaces and benchmark the optimized
# solver against brute force on a small grid.  The full desk-scale grid
# (up to 10^6 combinations) lives in `tunespace.default_suite`; this demo
# keeps sizes small so it finishes in seconds.
#
# $ python demos/05_synthetic_benchmark.py

from tunespace import (
    SyntheticSpec,
    characterize,
    dims_for,
    generate_space,
    run_benchmark,
    solve_all,
)

# Value counts per dimension approximate the d-th root of the target
# size; the last dimension rounds the other way to land nearer the
# target (e.g. 10^4 over 3 dims -> 22 * 22 * 21 = 10164).
print("dims_for(10^4, 3) =", dims_for(10**4, 3))
print("dims_for(10^6, 4) =", dims_for(10**6, 4))

# A spec fully determines the generated problem: same seed, same space.
spec = SyntheticSpec(target_size=10**4, dimensions=3, num_constraints=4, seed=11)
problem = generate_space(spec)
print("\ngenerated constraints:")
for source in problem.sources:
    print("   ", source)

stats = characterize(problem, solve_all(problem))
print(f"cartesian={stats.cartesian_size} valid={stats.valid_count} "
      f"sparsity={stats.sparsity_fraction:.2f}")

# Benchmark a small grid with both methods.  Each optimized run is
# timed over parse + compile + solve + index construction; validation
# compares the solution sets configuration-for-configuration.
suite = [
    SyntheticSpec(target_size=s, dimensions=d, num_constraints=m, seed=0)
    for d in (2, 3)
    for s in (10**4, 5 * 10**4)
    for m in (2, 4)
]
report = run_benchmark(suite, methods=("optimized", "bruteforce"), repetitions=1)

print(f"\n{'space':26} {'method':10} {'time':>9} {'valid':>8}")
for record in report.spaces:
    print(f"{record.space_id:26} {record.method:10} "
          f"{record.wall_time_seconds * 1000:7.1f}ms {record.valid_count:>8}")

aggregates = report.aggregates
totals = aggregates["total_time_seconds"]
print(f"\nsummed: optimized={totals['optimized']:.3f}s "
      f"bruteforce={totals['bruteforce']:.3f}s "
      f"-> speedup {aggregates['speedup']:.1f}x")
print("log-log slope (time vs valid count):",
      {k: (f"{v:.3f}" if v is not None else "n/a")
       for k, v in aggregates["slope"].items()})

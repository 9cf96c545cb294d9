"""A small benchmark table over dataset families and k values.

Reports the usual performance measures per cell: explored nodes, where the
optimum was found, dual iterations per node, and wall time, averaged over
repetitions. Heavier sweeps belong to the CLI (`kball bench`), which writes
per-run and aggregate CSVs with these same columns.
"""

from kball import DatasetSpec, SolveOptions, generate, solve_mkeb

M, N, REPS = 80, 2, 3
KS = (8, 20, 60, 72)

print(f"m={M}, n={N}, {REPS} repetitions per cell, spherical ordering seed")
header = f"{'dataset':<12} {'k':>4} {'EN':>8} {'%EN opt':>8} {'it/node':>8} {'time(s)':>8}"
print(header)
print("-" * len(header))
for kind in ("ball", "ring", "normal", "exponential"):
    for k in KS:
        en = pct = ipn = sec = 0.0
        for rep in range(REPS):
            points = generate(DatasetSpec(kind=kind, m=M, n=N, seed=100 + rep))
            r = solve_mkeb(points, k, SolveOptions(strategy="spherical_ordering"))
            en += r.explored_nodes / REPS
            pct += r.pct_en_at_optimum / REPS
            ipn += r.dual_iters_per_node / REPS
            sec += r.wall_time_s / REPS
        print(f"{kind:<12} {k:>4} {en:>8.0f} {pct:>7.0f}% {ipn:>8.2f} {sec:>8.3f}")

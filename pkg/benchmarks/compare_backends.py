"""Time the two search kernels against each other.

The numba backend compiles on first use (cached on disk afterwards); a
warmup run per backend keeps compilation out of the timings. Results are
checked for exact agreement before any number is printed.

Usage:
    python3 benchmarks/compare_backends.py --n 500 --edge-prob 0.01 --seeds 5
"""

import argparse
import statistics
import time

from slbsearch import (
    NUMBA_AVAILABLE,
    EstimationCache,
    a_beauty,
    beauty,
    ei_ucs,
    gen_random_graph,
    synth_estimators,
)

ALGORITHMS = {
    "beauty": lambda p, b: beauty(p, EstimationCache(p.graph), backend=b),
    "eiucs": lambda p, b: ei_ucs(p, EstimationCache(p.graph), backend=b),
    "abeauty-10": lambda p, b: a_beauty(p, max_iterations=10, backend=b),
}


def summarize(result):
    if hasattr(result, "l_star"):
        return (result.path.edges if result.path else None, result.l_star)
    return (result.path.edges if result.path else None, result.l_under, result.l_over)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=500)
    parser.add_argument("--edge-prob", type=float, default=0.01)
    parser.add_argument("--cost-min", type=int, default=1)
    parser.add_argument("--cost-max", type=int, default=20)
    parser.add_argument("--seeds", type=int, default=5, help="number of instances")
    parser.add_argument("--repeats", type=int, default=5, help="timed runs per cell")
    args = parser.parse_args()

    if not NUMBA_AVAILABLE:
        print("numba is not installed; nothing to compare")
        return 1

    problems = []
    for seed in range(args.seeds):
        wg = gen_random_graph(
            args.n, args.edge_prob, (args.cost_min, args.cost_max), seed
        )
        problems.append(synth_estimators(wg, seed))

    backends = ("numpy", "numba")
    for backend in backends:
        beauty(problems[0], EstimationCache(problems[0].graph), backend=backend)

    print(f"{args.seeds} instances, n={args.n}, p={args.edge_prob}, "
          f"{args.repeats} repeats; times in ms per run")
    print(f"{'algorithm':<12} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name, run in ALGORITHMS.items():
        timings = {}
        for backend in backends:
            samples = []
            for problem in problems:
                t0 = time.perf_counter()
                for _ in range(args.repeats):
                    run(problem, backend)
                samples.append((time.perf_counter() - t0) / args.repeats)
            timings[backend] = statistics.mean(samples) * 1e3
        disagreements = sum(
            summarize(run(p, "numpy")) != summarize(run(p, "numba"))
            for p in problems
        )
        if disagreements:
            print(f"{name}: backends disagree on {disagreements} instances")
            return 1
        ratio = timings["numpy"] / timings["numba"]
        print(f"{name:<12} {timings['numpy']:>10.3f} {timings['numba']:>10.3f} {ratio:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

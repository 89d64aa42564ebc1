"""Benchmark the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--size N] [--repeats R]

Both implementations are imported directly, so the result does not depend
on which one the dispatcher selected.
"""

from __future__ import annotations

import argparse
import random
import time

from valuerank.kernels import _pykernels

try:
    from valuerank.kernels import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def make_inputs(size: int, seed: int = 13):
    rng = random.Random(seed)
    columns = [[rng.random() for _ in range(size)] for _ in range(4)]
    relevance = [float(rng.randint(0, 4)) for _ in range(size)]
    # coarse scores force plenty of tie groups
    scores = [round(rng.random(), 3) for _ in range(size)]
    return columns, relevance, scores


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=100_000, help="elements per input")
    parser.add_argument("--repeats", type=int, default=5, help="repeats (best time wins)")
    args = parser.parse_args()

    columns, relevance, scores = make_inputs(args.size)
    u, s, c, o = columns
    k = args.size // 10

    cases = {
        "weighted_sums": lambda mod: mod.weighted_sums(u, s, c, o, 0.25, 0.25, 0.25, 0.25),
        "tie_averaged_dcg": lambda mod: mod.tie_averaged_dcg(relevance, scores, k),
        "plain_dcg": lambda mod: mod.plain_dcg(relevance, k),
    }

    print(f"size={args.size} repeats={args.repeats}")
    print(f"{'kernel':<20} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}")
    for name, call in cases.items():
        pure = timeit(lambda: call(_pykernels), args.repeats)
        if _ckernels is None:
            print(f"{name:<20} {pure * 1e3:>12.3f} {'n/a':>14} {'n/a':>9}")
            continue
        compiled = timeit(lambda: call(_ckernels), args.repeats)
        check_pure = call(_pykernels)
        check_compiled = call(_ckernels)
        assert check_pure == check_compiled, f"{name}: implementations disagree"
        print(
            f"{name:<20} {pure * 1e3:>12.3f} {compiled * 1e3:>14.3f} "
            f"{pure / compiled:>8.1f}x"
        )
    if _ckernels is None:
        print("compiled kernels not built; run pip install -e . --no-build-isolation")


if __name__ == "__main__":
    main()

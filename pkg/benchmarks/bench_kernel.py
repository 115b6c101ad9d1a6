#!/usr/bin/env python3
"""Benchmark the compiled arithmetic kernel against the pure-Python twin.

Times exact Gauss-Jordan elimination (rref) and dense products (matmul) on
random Gaussian-rational matrices, plus one end-to-end pipeline run.  Run
from the repository root:

    python3 benchmarks/bench_kernel.py [--sizes 20,40,60] [--trials 3]
"""

import argparse
import random
import time

from acdol import _kernel_py

BACKENDS = [("python", _kernel_py)]
try:
    from acdol import _speedups
    BACKENDS.append(("cython", _speedups))
except ImportError:
    _speedups = None


def random_entries(rng, rows, cols):
    return [[(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(1, 9))
             for _ in range(cols)] for _ in range(rows)]


def sparse_entries(rng, rows, cols):
    """The workload profile of the pipeline: sparse blocks, tiny entries."""
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < 0.15:
                row.append((rng.choice([-1, 1]), rng.choice([-1, 0, 1]),
                            rng.choice([1, 2])))
            else:
                row.append((0, 0, 1))
        out.append(row)
    return out


def lift(kern, data):
    return [[kern.Scalar(*t) for t in row] for row in data]


def time_op(fn, trials):
    best = None
    for _ in range(trials):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_sizes(sizes, trials, seed):
    print("%-12s %-8s %12s %12s %10s" % ("op", "size", "python[s]",
                                         "cython[s]", "speedup"))
    for size in sizes:
        for label, gen in (("rref/dense", random_entries),
                           ("rref/sparse", sparse_entries)):
            rng = random.Random(seed)
            data = gen(rng, size, size)
            times = {}
            for name, kern in BACKENDS:
                rows = lift(kern, data)
                times[name] = time_op(lambda: kern.rref(rows, size), trials)
            _print_row(label, size, times)
        rng = random.Random(seed + 1)
        a = random_entries(rng, size, size)
        b = random_entries(rng, size, size)
        times = {}
        for name, kern in BACKENDS:
            ka, kb = lift(kern, a), lift(kern, b)
            times[name] = time_op(lambda: kern.matmul(ka, kb, size), trials)
        _print_row("matmul", size, times)


def _print_row(op, size, times):
    py = times.get("python")
    cy = times.get("cython")
    if cy is None:
        print("%-12s %-8d %12.4f %12s %10s" % (op, size, py, "n/a", "n/a"))
    else:
        print("%-12s %-8d %12.4f %12.4f %9.1fx"
              % (op, size, py, cy, py / cy))


def bench_pipeline(trials):
    # full su2su2 analysis exercised through whichever backend is active
    from acdol import catalog, kernel, pipeline
    doc = catalog.builtin("su2su2-nk")
    best = time_op(lambda: pipeline.analyze_document(doc), trials)
    print("\nfull su2su2-nk analysis (%s backend): %.3f s"
          % (kernel.BACKEND, best))
    print("note: rerun with ACDOL_PURE=1 to time the pure-Python backend "
          "end to end")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="20,40,60")
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    if _speedups is None:
        print("compiled kernel not built; only the pure backend is timed")
    bench_sizes(sizes, args.trials, args.seed)
    bench_pipeline(max(1, args.trials - 1))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Time the compiled numeric kernels against the pure-Python fallback.

Both backends implement ``smo_optimize`` (SVM dual working-set solver) and
``best_split`` (exhaustive Gini split search) with identical arithmetic, so
besides timing them this script double-checks that their outputs are
bit-for-bit equal on every generated problem.

Run from a checkout with the package installed::

    python3 benchmarks/bench_core.py
"""

import argparse
import sys
import time

import numpy as np

from maiclass._core import _pyfallback

try:
    from maiclass._core import _speedups
except ImportError:
    _speedups = None


def make_smo_problems(rng, count, n):
    problems = []
    for _ in range(count):
        X = rng.normal(size=(n, 6))
        y = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        if np.all(y == y[0]):
            y[0] = -y[0]
        d2 = ((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2)
        K = np.exp(-0.2 * d2)
        Q = (y[:, None] * y[None, :]) * K
        problems.append((Q, y, 1.0, 1e-3, 20000))
    return problems


def make_split_problems(rng, count, rows, cols, n_classes=4):
    problems = []
    for _ in range(count):
        # Half-integer grid values so many duplicates exercise the tie paths.
        X = np.round(rng.normal(size=(rows, cols)) * 4.0) / 2.0
        y = rng.integers(0, n_classes, size=rows)
        problems.append((X, y, n_classes))
    return problems


def time_backend(fn, problems, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for args in problems:
            fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def check_agreement(name, fn_a, fn_b, problems):
    for args in problems:
        out_a = fn_a(*args)
        out_b = fn_b(*args)
        for a, b in zip(out_a, out_b):
            same = np.array_equal(a, b) if isinstance(a, np.ndarray) \
                else a == b
            if not same:
                raise SystemExit(f"{name}: backends disagree on {args!r}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--smo-problems", type=int, default=20)
    parser.add_argument("--smo-size", type=int, default=120,
                        help="training points per SMO problem")
    parser.add_argument("--split-problems", type=int, default=20)
    parser.add_argument("--split-rows", type=int, default=1500)
    parser.add_argument("--split-cols", type=int, default=25)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats; best is reported")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    workloads = [
        ("smo_optimize", "smo_optimize",
         make_smo_problems(rng, args.smo_problems, args.smo_size)),
        ("best_split", "best_split",
         make_split_problems(rng, args.split_problems, args.split_rows,
                             args.split_cols)),
    ]

    if _speedups is None:
        print("compiled extension not available; timing the fallback only",
              file=sys.stderr)

    print(f"{'workload':<14} {'python':>10} {'cython':>10} {'speedup':>9}")
    for name, attr, problems in workloads:
        py_fn = getattr(_pyfallback, attr)
        py_t = time_backend(py_fn, problems, args.repeats)
        if _speedups is None:
            print(f"{name:<14} {py_t:>9.3f}s {'-':>10} {'-':>9}")
            continue
        cy_fn = getattr(_speedups, attr)
        check_agreement(name, py_fn, cy_fn, problems)
        cy_t = time_backend(cy_fn, problems, args.repeats)
        print(f"{name:<14} {py_t:>9.3f}s {cy_t:>9.3f}s "
              f"{py_t / cy_t:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

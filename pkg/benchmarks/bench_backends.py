#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot kernels on realistic workloads: oscillatory phase
quadrature (Weyl sums), batched BCH, and batched lattice reduction (the inner
loop of generic-function integration on the Heisenberg manifold).

Run:  python benchmarks/bench_backends.py [--panels N] [--points P]
"""

import argparse
import time

import numpy as np

from nildilate.kernels import numpy_impl
from nildilate.presets import filiform5, heisenberg3

try:
    from nildilate.kernels import numba_impl
except ImportError:
    numba_impl = None


def _tables(algebra):
    t = algebra.float_tables()
    return (t["bi"], t["bj"], t["bk"], t["bv"], t["words"], t["wlen"], t["coeffs"])


def timeit(fn, *args, repeat=5):
    fn(*args)  # warm-up (JIT compile on the numba side)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--panels", type=int, default=2_000_000)
    parser.add_argument("--points", type=int, default=200_000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    coeffs = np.array([0.125, 3.0, 700.0, 120.0])
    rows = []

    a = timeit(numpy_impl.phase_mean, coeffs, 0.0, 1.0, args.panels)
    b = timeit(numba_impl.phase_mean, coeffs, 0.0, 1.0, args.panels) if numba_impl else None
    rows.append((f"phase_mean ({args.panels} panels)", a, b))

    for algebra in (heisenberg3(), filiform5()):
        X = rng.normal(size=(args.points, algebra.dim))
        Y = rng.normal(size=(args.points, algebra.dim))
        a = timeit(numpy_impl.bch_batch, X, Y, *_tables(algebra))
        b = timeit(numba_impl.bch_batch, X, Y, *_tables(algebra)) if numba_impl else None
        rows.append((f"bch_batch {algebra.name} ({args.points} pts)", a, b))

        logs = rng.normal(scale=30.0, size=(args.points, algebra.dim))
        a = timeit(numpy_impl.reduce_batch, logs, *_tables(algebra), 1e-9, repeat=3)
        b = (timeit(numba_impl.reduce_batch, logs, *_tables(algebra), 1e-9, repeat=3)
             if numba_impl else None)
        rows.append((f"reduce_batch {algebra.name} ({args.points} pts)", a, b))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name, a, b in rows:
        if b is None:
            print(f"{name:<{width}}  {a:>9.4f}s  {'n/a':>10}  {'n/a':>8}")
        else:
            print(f"{name:<{width}}  {a:>9.4f}s  {b:>9.4f}s  {a / b:>7.1f}x")


if __name__ == "__main__":
    main()

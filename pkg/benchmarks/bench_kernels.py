#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Run after `pip install -e .`:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from fluxring import _kernels_py

try:
    from fluxring import _kernels as compiled
except ImportError:
    compiled = None


def timeit(fn, *args, repeat=5, inner=20):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / inner)
    return best


def bench_boltzmann():
    rng = np.random.default_rng(0)
    grid = rng.uniform(0.0, 1.0, size=2000)
    deltas = [
        np.ascontiguousarray(np.arange(-200, 201) - phi, dtype=float) for phi in grid
    ]

    def sweep(module):
        for delta in deltas:
            module.boltzmann_reduce(delta, 0.05)

    return "boltzmann_reduce (2000 pts x 401 states)", sweep


def bench_cycles():
    rng = np.random.default_rng(1)
    closed = rng.exponential(1e-6, size=200_000)
    opened = rng.exponential(1e-6, size=200_000)

    def sweep(module):
        module.decay_cycle_sums(closed, opened, -5e-7, 3e-7, 0.01)

    return "decay_cycle_sums (200k cycles)", sweep


def bench_sampling():
    rng = np.random.default_rng(2)
    durations = rng.exponential(1e-6, size=100_000)
    bounds = np.concatenate(([0.0], np.cumsum(durations)[:-1]))
    times = np.linspace(0.0, float(bounds[-1]), 200_000)

    def sweep(module):
        module.sample_piecewise_decay(times, bounds, -5e-7, 3e-7)

    return "sample_piecewise_decay (200k samples / 100k cycles)", sweep


def main():
    benches = [bench_boltzmann(), bench_cycles(), bench_sampling()]
    print(f"{'kernel':<55} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, sweep in benches:
        t_py = timeit(sweep, _kernels_py)
        if compiled is None:
            print(f"{name:<55} {t_py * 1e3:>9.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_c = timeit(sweep, compiled)
        print(
            f"{name:<55} {t_py * 1e3:>9.2f}ms {t_c * 1e3:>9.2f}ms"
            f" {t_py / t_c:>7.1f}x"
        )


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark the compiled tracing kernels against the pure-Python twin.

The closure scan (full-circle shooting search) is the hot loop of the orbit
classification workload; single-ray traces dominate the closure validation.

Run:  python benchmarks/bench_tracer.py [--resolution N] [--repeats K]
"""

import argparse
import math
import time

import numpy as np

from wedgecasimir import _scan_py

try:
    from wedgecasimir import _scan_cy
except ImportError:
    _scan_cy = None


def time_call(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_scan(kern, resolution, repeats):
    thetas = np.linspace(0.0, 2 * math.pi, resolution, endpoint=False)
    cases = [(0.9848, 0.1736, 0.30, 9), (0.5, 0.2, 0.45, 4), (2.0, 0.9, 1.1, 2)]

    def run():
        for ax, ay, gamma, n in cases:
            kern.closure_scan(ax, ay, gamma, n, thetas)

    return time_call(run, repeats)


def bench_trace(kern, repeats):
    rng = np.random.default_rng(0)
    rays = [(rng.uniform(0.5, 2), rng.uniform(0.01, 0.2),
             math.cos(t), math.sin(t))
            for t in rng.uniform(0, 2 * math.pi, 2000)]

    def run():
        for ax, ay, dx, dy in rays:
            kern.trace_path(ax, ay, dx, dy, 0.3, 13)

    return time_call(run, repeats)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--resolution", type=int, default=4096)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    rows = []
    t_py = bench_scan(_scan_py, args.resolution, args.repeats)
    rows.append(("closure_scan", "python", t_py, 1.0))
    if _scan_cy is not None:
        t_cy = bench_scan(_scan_cy, args.resolution, args.repeats)
        rows.append(("closure_scan", "cython", t_cy, t_py / t_cy))
    t_py = bench_trace(_scan_py, args.repeats)
    rows.append(("trace_path x2000", "python", t_py, 1.0))
    if _scan_cy is not None:
        t_cy = bench_trace(_scan_cy, args.repeats)
        rows.append(("trace_path x2000", "cython", t_cy, t_py / t_cy))

    print(f"{'workload':<20} {'backend':<8} {'best time':>12} {'speedup':>9}")
    for name, backend, t, speedup in rows:
        print(f"{name:<20} {backend:<8} {t * 1e3:>10.2f}ms {speedup:>8.1f}x")
    if _scan_cy is None:
        print("compiled kernel not built; showing pure-Python timings only")


if __name__ == "__main__":
    main()

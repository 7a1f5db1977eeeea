#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-numpy fallback.

Times the scaled eigenfunction recurrence on quadrature-sized grids and
an end-to-end tunnelling-probability table with each backend.

Usage: python benchmarks/bench_kernels.py [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qhotunnel._kernels._hermite_py import psi_scaled_grid as psi_python

try:
    from qhotunnel._kernels._hermite_cy import psi_scaled_grid as psi_cython
except ImportError:
    psi_cython = None

from qhotunnel import _kernels, oscillator
from qhotunnel.quadrature import tunnel_probability_exact
from qhotunnel.oscillator import OscillatorMode


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel(repeats):
    print(f"{'kernel grid (n, points)':<28} {'python':>12} {'cython':>12} {'speedup':>9}")
    for n, npts in ((50, 48), (200, 48), (800, 48), (800, 2000)):
        nu = (2 * n + 1) ** 0.5
        xs = np.linspace(nu, nu + 2.0, npts)
        tp = time_call(lambda: psi_python(n, xs), repeats)
        if psi_cython is None:
            print(f"n={n:<5} pts={npts:<12} {tp * 1e3:>10.3f}ms {'-':>12}")
            continue
        tc = time_call(lambda: psi_cython(n, xs), repeats)
        print(f"n={n:<5} pts={npts:<12} {tp * 1e3:>10.3f}ms {tc * 1e3:>10.3f}ms {tp / tc:>8.1f}x")


def bench_table(repeats):
    ns = (10, 100, 800)

    def run():
        for n in ns:
            tunnel_probability_exact(OscillatorMode(n), 1e-13)

    results = {}
    backends = [("python", psi_python)] + ([("cython", psi_cython)] if psi_cython else [])
    for name, fn in backends:
        _kernels.psi_scaled_grid = fn
        oscillator.psi_scaled_grid = fn
        results[name] = time_call(run, repeats)
    oscillator.psi_scaled_grid = _kernels.psi_scaled_grid = (
        psi_cython if psi_cython is not None else psi_python
    )

    line = f"exact P for n in {ns}:"
    print(f"\n{line:<28} " + "  ".join(f"{k}={v * 1e3:.1f}ms" for k, v in results.items()))
    if len(results) == 2:
        print(f"{'':<28} end-to-end speedup {results['python'] / results['cython']:.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    print(f"active backend: {_kernels.BACKEND}")
    if psi_cython is None:
        print("compiled kernel unavailable; showing fallback timings only")
    bench_kernel(args.repeats)
    bench_table(args.repeats)


if __name__ == "__main__":
    main()

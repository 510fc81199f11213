#!/usr/bin/env python3
"""Benchmark the numba-compiled witness sweep kernel against the pure-numpy
fallback on a dense (lambda, theta) grid.

Run: python3 benchmarks/bench_kernels.py [--size N] [--repeats R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qdiscern import kernels


def time_fn(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=600, help="grid points per axis")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    lams = np.linspace(0.0, 1.0, args.size)
    thetas = np.linspace(0.0, np.pi / 2, args.size)
    lg, tg = np.meshgrid(lams, thetas, indexing="ij")
    lf, tf = lg.ravel(), tg.ravel()
    phi = np.pi

    print(f"grid {args.size}x{args.size} ({lf.size} points), best of {args.repeats}")

    t_np = time_fn(kernels._td_qc_points_numpy, lf, tf, phi, repeats=args.repeats)
    print(f"numpy fallback : {t_np * 1e3:9.2f} ms")

    if not kernels.NUMBA_ENABLED:
        print("numba          : unavailable (QDISCERN_NO_NUMBA set or numba missing)")
        return

    t0 = time.perf_counter()
    out_nb = kernels._td_qc_points_numba(lf, tf, phi)
    t_first = time.perf_counter() - t0
    t_nb = time_fn(kernels._td_qc_points_numba, lf, tf, phi, repeats=args.repeats)
    print(f"numba kernel   : {t_nb * 1e3:9.2f} ms  (first call incl. compile: {t_first * 1e3:.1f} ms)")
    print(f"speedup        : {t_np / t_nb:9.2f}x")

    out_np = kernels._td_qc_points_numpy(lf, tf, phi)
    print(f"max |difference|: {np.abs(out_np - out_nb).max():.3e}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the pure-numpy fallback.

Three workloads modelled on real usage:
  scan      one lambda-batch RK4 pass (eigenvalue scan grid)
  bisect    many small-batch passes (bracket refinement pattern)
  transfer  complex transfer-matrix batch

Run: python benchmarks/bench_kernels.py [--n-steps 4000] [--repeats 3]
"""

import argparse
import time

import numpy as np

from apscyl.kernels import _core_py

try:
    from apscyl.kernels import _core
except ImportError:
    _core = None


def coefficient_arrays(n_steps, T=3.0, m=1.5):
    t = np.linspace(0.0, T, 2 * n_steps + 1)
    f = np.exp(t) + np.exp(-t)
    df = np.exp(t) - np.exp(-t)
    p = df / (2 * f)
    q = m / f
    b = np.zeros_like(t)
    return (np.ascontiguousarray(q - p), np.ascontiguousarray(p + q),
            np.ascontiguousarray(b))


def timeit(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-steps", type=int, default=4000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    a, c, b = coefficient_arrays(args.n_steps)
    h = 3.0 / args.n_steps
    scan_lams = np.linspace(-10, 10, 2001)
    small_lams = np.linspace(-1, 1, 16)
    transfer_lams = np.linspace(-6, 6, 101)

    backends = [("python", _core_py)]
    if _core is not None:
        backends.insert(0, ("cython", _core))
    else:
        print("compiled core unavailable; benchmarking the fallback only")

    workloads = {
        "scan (2001 lambdas)": lambda mod: mod.rk4_uw(
            a, c, b, 0.0, scan_lams, 0.0, 1.0, h, args.n_steps),
        "bisect (30 x 16 lambdas)": lambda mod: [
            mod.rk4_uw(a, c, b, 0.0, small_lams, 0.0, 1.0, h, args.n_steps)
            for _ in range(30)],
        "transfer (101 lambdas)": lambda mod: mod.rk4_transfer(
            a, c, transfer_lams, h, args.n_steps),
    }

    print(f"n_steps={args.n_steps}, best of {args.repeats}")
    print(f"{'workload':28s}" + "".join(f"{name:>12s}" for name, _ in backends)
          + ("       ratio" if len(backends) == 2 else ""))
    for label, work in workloads.items():
        times = [timeit(lambda mod=mod: work(mod), args.repeats)
                 for _, mod in backends]
        row = f"{label:28s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:11.1f}x"
        print(row)

    # correctness spot-check between backends
    if _core is not None:
        u1, w1, _ = _core.rk4_uw(a, c, b, 0.0, small_lams, 0.0, 1.0, h, 1000)
        u2, w2, _ = _core_py.rk4_uw(a, c, b, 0.0, small_lams, 0.0, 1.0, h, 1000)
        err = max(np.max(np.abs(u1 - u2)), np.max(np.abs(w1 - w2)))
        print(f"backend agreement: max |diff| = {err:.2e}")


if __name__ == "__main__":
    main()

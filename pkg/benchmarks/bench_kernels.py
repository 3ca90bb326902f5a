#!/usr/bin/env python3
"""Benchmark the numba-jitted hot kernels against their pure-numpy twins.

The three kernels dominate every pipeline run: the factorization-kernel log,
principal-branch complex log-gamma, and the batched Cauchy principal-value
rule. Run from the repo root:

    python benchmarks/bench_kernels.py [--n 20000] [--repeats 5]

Select the production backend globally with INTERFRAC_BACKEND=numpy|numba.
"""

import argparse
import time

import numpy as np

from interfrac import _kernels


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=20000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    impls = _kernels.implementations()
    if "numba" not in impls:
        print("numba not importable: only the numpy backend is available")

    rng = np.random.default_rng(11)
    t = rng.uniform(1e-4, 1e4, args.n)
    z = rng.uniform(0.3, 5.0, args.n) + 1j * rng.uniform(-1e3, 1e3, args.n)
    s = np.geomspace(1e-6, 1e6, max(32, args.n // 32))

    cases = [
        ("ln_xi_star", lambda impl: impl["ln_xi_star"](t, 1.0)),
        ("log_gamma", lambda impl: impl["log_gamma"](z)),
        ("pv_batch", lambda impl: impl["pv_batch"](s, 1.0)),
    ]

    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'kernel':<12} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for name, call in cases:
        if "numba" in impls:
            call(impls["numba"])  # compile before timing
        t_np = _time(lambda: call(impls["numpy"]), args.repeats)
        if "numba" in impls:
            t_nb = _time(lambda: call(impls["numba"]), args.repeats)
            # both backends must agree to roundoff before a timing is trusted
            a = np.asarray(call(impls["numpy"]))
            b = np.asarray(call(impls["numba"]))
            worst = float(np.max(np.abs(a - b) / (np.abs(a) + 1e-300)))
            if worst > 1e-12:
                raise AssertionError(f"{name}: backends disagree ({worst:.2e})")
            print(f"{name:<12} {1e3 * t_np:>12.3f} {1e3 * t_nb:>12.3f} "
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{name:<12} {1e3 * t_np:>12.3f} {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()

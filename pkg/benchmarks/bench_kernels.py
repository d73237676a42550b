#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-NumPy fallback.

Times the cyclic Jacobi eigensolver on distance-kernel Gram matrices and the
RK4 radial integrator, on both backends, and reports the worst numerical
deviation between them.  Run from the repo root:

    python3 benchmarks/bench_kernels.py [--sizes 40 120] [--repeat 3]

Setting HARMONIC_EMBED_PURE_NUMPY=1 would disable the numba path entirely;
this script imports both implementations explicitly, so run it without the
flag to see the comparison.
"""

import argparse
import time

import numpy as np

from harmonic_embed import backends
from harmonic_embed.gram import DistanceConfig, line_config_factory
from harmonic_embed.model_spaces import SeededSampler, random_points


def timeit(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def gram_matrix(m: int) -> np.ndarray:
    if m <= 60:
        config = line_config_factory(-5.0, 5.0)(m)
    else:
        config = DistanceConfig.from_points(random_points(SeededSampler(42), 3, m, 3.0))
    return np.cosh(config.dist) + 1.0 / 3.0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[20, 40, 80, 120])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--rk4-steps", type=int, default=7500)
    args = parser.parse_args()

    have_numba = True
    try:
        backends.jacobi_eigh_numba(np.array([[2.0, 1.0], [1.0, 2.0]]))  # warm the JIT
        backends.rk4_radial_numba(1.0, 0.0, 0.5, 1e-3, 8, 1.5, 0.5, -3.0)
    except RuntimeError:
        have_numba = False
        print("numba path unavailable; timing the NumPy fallback only\n")

    print(f"{'kernel':<24} {'numba':>12} {'numpy':>12} {'speedup':>9} {'max |delta|':>12}")
    for m in args.sizes:
        a = gram_matrix(m)
        t_np, (w_np, _, _) = timeit(lambda: backends.jacobi_eigh_numpy(a), args.repeat)
        if have_numba:
            t_nb, (w_nb, _, _) = timeit(lambda: backends.jacobi_eigh_numba(a), args.repeat)
            delta = float(np.max(np.abs(w_np - w_nb)))
            print(
                f"{f'jacobi m={m}':<24} {t_nb * 1e3:>10.2f}ms {t_np * 1e3:>10.2f}ms "
                f"{t_np / t_nb:>8.1f}x {delta:>12.3e}"
            )
        else:
            print(f"{f'jacobi m={m}':<24} {'-':>12} {t_np * 1e3:>10.2f}ms")

    rk4_args = (4.0 / 3.0, 0.0, 0.5, 1e-3, args.rk4_steps, 1.5, 0.5, -3.0)
    t_np, (f_np, _, _) = timeit(lambda: backends.rk4_radial_numpy(*rk4_args), args.repeat)
    if have_numba:
        t_nb, (f_nb, _, _) = timeit(lambda: backends.rk4_radial_numba(*rk4_args), args.repeat)
        delta = float(np.max(np.abs(f_np - f_nb)))
        print(
            f"{f'rk4 {args.rk4_steps} steps':<24} {t_nb * 1e3:>10.2f}ms {t_np * 1e3:>10.2f}ms "
            f"{t_np / t_nb:>8.1f}x {delta:>12.3e}"
        )
    else:
        print(f"{f'rk4 {args.rk4_steps} steps':<24} {'-':>12} {t_np * 1e3:>10.2f}ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

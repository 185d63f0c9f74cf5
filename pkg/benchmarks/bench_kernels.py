"""Benchmark the numba kernels against their pure-numpy fallbacks.

Usage:
    python benchmarks/bench_kernels.py [--size 200000] [--repeat 5]

Set TOEPLITZ_SPECTRA_NUMBA=0 to confirm the fallback wiring; this script
always times both paths explicitly regardless of the flag.
"""

import argparse
import time

import numpy as np

from toeplitz_spectra import _kernels as K


def timeit(fn, *args, repeat=5):
    fn(*args)  # warmup (includes JIT compilation for the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not K.NUMBA_ENABLED:
        print("numba unavailable or disabled; timing the numpy path against itself")

    rng = np.random.default_rng(0)
    p = np.linspace(-np.pi, np.pi, args.size)
    phases = np.angle(np.exp(1j * np.cumsum(rng.uniform(0, 0.5, args.size))))
    n_eigs = 2000
    curve = np.exp(1j * np.linspace(-np.pi, np.pi, 16 * n_eigs, endpoint=False))
    lams = np.exp(1j * rng.uniform(-np.pi, np.pi, n_eigs)) * rng.uniform(
        0.9, 1.0, n_eigs)
    targets = np.exp(1j * np.linspace(-3, 3, n_eigs))
    order = rng.permutation(n_eigs).astype(np.int64)

    cases = [
        ("pure_jump_f", (K._pure_jump_f_numba if K.NUMBA_ENABLED else K._pure_jump_f_numpy,
                         K._pure_jump_f_numpy), (0.7, p, 0.8, 1 / 3)),
        ("pure_jump_g", (K._pure_jump_g_numba if K.NUMBA_ENABLED else K._pure_jump_g_numpy,
                         K._pure_jump_g_numpy), (0.7, p, 0.8, 1 / 3)),
        ("unwrap_phases", (K._unwrap_numba if K.NUMBA_ENABLED else K._unwrap_numpy,
                           K._unwrap_numpy), (phases,)),
        ("project_to_curve", (K._project_numba if K.NUMBA_ENABLED else K._project_numpy,
                              K._project_numpy), (lams, curve)),
        ("swap_improve", (K._swap_improve_numba if K.NUMBA_ENABLED else K._swap_improve_numpy,
                          K._swap_improve_numpy),
         (order, lams, targets, 4 * n_eigs)),
    ]

    print(f"{'kernel':<18}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for name, (fast, slow), fnargs in cases:
        if name == "swap_improve":
            t_fast = timeit(lambda: fast(fnargs[0].copy(), *fnargs[1:]),
                            repeat=args.repeat)
            t_slow = timeit(lambda: slow(fnargs[0].copy(), *fnargs[1:]),
                            repeat=args.repeat)
        else:
            t_fast = timeit(fast, *fnargs, repeat=args.repeat)
            t_slow = timeit(slow, *fnargs, repeat=args.repeat)
        print(f"{name:<18}{t_fast * 1e3:>10.2f}ms{t_slow * 1e3:>10.2f}ms"
              f"{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled and numpy modular RREF kernels.

Usage: python3 benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 3]

Also times a full Killing-type check with each backend, since the kernel is
only one stage of the exact pipeline.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from killingtype import kernels

P = 2147483629  # largest prime below 2**31


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel(sizes, repeat: int) -> None:
    rng = np.random.default_rng(0)
    print(f"{'shape':>12} {'cython [s]':>12} {'numpy [s]':>12} {'speedup':>8}")
    for n in sizes:
        # rank-deficient on purpose so pivots and free columns both occur
        a = rng.integers(0, P, size=(n, n // 2), dtype=np.int64)
        b = rng.integers(0, P, size=(n // 2, n + n // 4), dtype=np.int64)
        m = np.asarray([[int(x) % P for x in row] for row in (a.astype(object) @ b.astype(object))], dtype=np.int64)
        piv_py = kernels.python_rref_mod(r_py := m.copy(), P)
        t_py = _time(lambda: kernels.python_rref_mod(m.copy(), P), repeat)
        if kernels.compiled_rref_mod is None:
            print(f"{str(m.shape):>12} {'n/a':>12} {t_py:>12.4f} {'-':>8}")
            continue
        piv_c = kernels.compiled_rref_mod(r_c := m.copy(), P)
        assert piv_c == piv_py and np.array_equal(r_c, r_py), "backends disagree"
        t_c = _time(lambda: kernels.compiled_rref_mod(m.copy(), P), repeat)
        print(f"{str(m.shape):>12} {t_c:>12.4f} {t_py:>12.4f} {t_py / t_c:>8.1f}")


def bench_pipeline(degree: int) -> None:
    from killingtype.catalog import build
    from killingtype.killing import check_killing_type

    active = kernels.rref_mod
    for label, fn in (("cython", kernels.compiled_rref_mod), ("numpy", kernels.python_rref_mod)):
        if fn is None:
            continue
        kernels.rref_mod = fn
        alg = build("free-2step-3gen")  # fresh operator caches
        t0 = time.perf_counter()
        rep = check_killing_type(alg, degree)
        print(f"free-2step-3gen p={degree} with {label:<6} kernel: {time.perf_counter() - t0:.2f}s "
              f"(verdict {rep.verdict})")
    kernels.rref_mod = active


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--degree", type=int, default=5)
    args = ap.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    bench_kernel(args.sizes, args.repeat)
    bench_pipeline(args.degree)


if __name__ == "__main__":
    main()

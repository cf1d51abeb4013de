#!/usr/bin/env python3
"""Benchmark the hot kernels: numba @njit against the pure-numpy fallback.

Runs both code paths in one process (the jitted functions are only
present when numba is importable), then times an end-to-end count on
the wide fan-out family under the active backend.

Usage: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from tncount import Formula, count_models, kernels


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def random_masks(rng, m, n, width=3):
    pos = np.zeros(m, dtype=np.int64)
    neg = np.zeros(m, dtype=np.int64)
    for j in range(m):
        for v in rng.choice(n, size=min(width, n), replace=False):
            if rng.integers(2):
                pos[j] |= 1 << int(v)
            else:
                neg[j] |= 1 << int(v)
    return pos, neg


def fanout_family(free_vars):
    clauses = tuple((j % 10 + 1, 11 + j) for j in range(free_vars))
    return Formula(free_vars + 10, clauses)


def main():
    have_numba = kernels.BACKEND == "numba"
    print(f"active backend: {kernels.BACKEND}")
    if have_numba:
        kernels.warmup()
    rng = np.random.default_rng(0)

    print("\nenumeration kernel (count all satisfying assignments)")
    print(f"{'n':>4} {'clauses':>8} {'numpy':>12} {'numba':>12} {'speedup':>8}")
    for n in (16, 20, 22):
        pos, neg = random_masks(rng, 3 * n, n)
        t_np = best_of(lambda: kernels._count_satisfying_np(pos, neg, n))
        if have_numba:
            t_nb = best_of(lambda: kernels._count_satisfying_nb(pos, neg, n))
            print(f"{n:>4} {3 * n:>8} {t_np:>11.4f}s {t_nb:>11.4f}s {t_np / t_nb:>7.1f}x")
        else:
            print(f"{n:>4} {3 * n:>8} {t_np:>11.4f}s {'-':>12} {'-':>8}")

    print("\nbranch-profile kernel (per-branch unsatisfied-clause counts)")
    print(f"{'c':>4} {'clauses':>8} {'numpy':>12} {'numba':>12} {'speedup':>8}")
    for c in (12, 16, 18):
        m = 400
        pos, neg = random_masks(rng, m, c, width=2)
        group = rng.integers(0, 3, size=m).astype(np.int64)

        def run(fn):
            out = np.zeros((1 << c, 3), dtype=np.int64)
            fn(pos, neg, group, c, 0, 1 << c, out)

        t_np = best_of(lambda: run(kernels._unsat_profile_np))
        if have_numba:
            t_nb = best_of(lambda: run(kernels._unsat_profile_nb))
            print(f"{c:>4} {m:>8} {t_np:>11.4f}s {t_nb:>11.4f}s {t_np / t_nb:>7.1f}x")
        else:
            print(f"{c:>4} {m:>8} {t_np:>11.4f}s {'-':>12} {'-':>8}")

    print("\nend-to-end exact count, fan-out family (10 shared variables)")
    for free_vars in (10**3, 10**4):
        result = count_models(fanout_family(free_vars))
        digits = len(str(result.model_count))
        print(
            f"  n = {free_vars:>6}: {result.elapsed:.4f}s "
            f"({result.branches_evaluated} branches, count has {digits} digits)"
        )


if __name__ == "__main__":
    main()

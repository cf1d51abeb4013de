"""Hot counting kernels: numba-jitted loops with a pure-numpy fallback.

Two inner loops dominate the package's runtime and are implemented twice:

* ``count_satisfying`` — full truth-table enumeration used by the
  brute-force oracle (up to 2^24 assignments x clause mask tests);
* ``unsat_profile`` — per-branch clause profiling used by the counter
  (2^c branch assignments x clause mask tests).

Both operate entirely on int64 bit masks and counters; exact unbounded
integer arithmetic is assembled on top of their outputs in Python, so
the jitted code never touches a big integer.

Backend selection happens once at import time via the environment
variable ``TNCOUNT_KERNELS``:

* ``auto`` (default) — numba when importable, else numpy;
* ``numba`` — require numba, fail loudly if missing;
* ``numpy`` — force the pure-numpy fallback.

``benchmarks/bench_kernels.py`` compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["backend", "count_satisfying", "unsat_profile", "warmup"]

# numpy fallback processes assignments in blocks of this size to bound memory
_BLOCK = 1 << 16


def _pick_backend() -> str:
    choice = os.environ.get("TNCOUNT_KERNELS", "auto").strip().lower()
    if choice not in {"auto", "numba", "numpy"}:
        raise ValueError(
            f"TNCOUNT_KERNELS must be 'auto', 'numba' or 'numpy', got {choice!r}"
        )
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise RuntimeError("TNCOUNT_KERNELS=numba but numba is not importable") from None
        return "numpy"
    return "numba"


BACKEND = _pick_backend()


def backend() -> str:
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return BACKEND


# ---------------------------------------------------------------- numpy path


def _count_satisfying_np(pos: np.ndarray, neg: np.ndarray, n: int) -> int:
    size = 1 << n
    full = size - 1
    total = 0
    for start in range(0, size, _BLOCK):
        xs = np.arange(start, min(start + _BLOCK, size), dtype=np.int64)
        nxs = xs ^ full
        ok = np.ones(xs.size, dtype=np.bool_)
        for j in range(pos.size):
            ok &= ((xs & pos[j]) != 0) | ((nxs & neg[j]) != 0)
        total += int(np.count_nonzero(ok))
    return total


def _unsat_profile_np(
    pos: np.ndarray,
    neg: np.ndarray,
    group: np.ndarray,
    c: int,
    start: int,
    stop: int,
    out: np.ndarray,
) -> None:
    bs = np.arange(start, stop, dtype=np.int64)
    nbs = bs ^ ((1 << c) - 1)
    for j in range(pos.size):
        unsat = ((bs & pos[j]) == 0) & ((nbs & neg[j]) == 0)
        out[:, group[j]] += unsat


# ---------------------------------------------------------------- numba path

if BACKEND == "numba":
    from numba import njit

    @njit(cache=True, nogil=True)
    def _count_satisfying_nb(pos, neg, n):  # pragma: no cover - jitted
        full = (1 << n) - 1
        m = pos.size
        total = 0
        for x in range(1 << n):
            nx = x ^ full
            ok = True
            for j in range(m):
                if (x & pos[j]) == 0 and (nx & neg[j]) == 0:
                    ok = False
                    break
            if ok:
                total += 1
        return total

    @njit(cache=True, nogil=True)
    def _unsat_profile_nb(pos, neg, group, c, start, stop, out):  # pragma: no cover
        # clause-major: the mask pair stays in registers across the branch sweep
        full = (1 << c) - 1
        for j in range(pos.size):
            p = pos[j]
            q = neg[j]
            g = group[j]
            for b in range(start, stop):
                if (b & p) == 0 and ((b ^ full) & q) == 0:
                    out[b - start, g] += 1


# ------------------------------------------------------------------ dispatch


def count_satisfying(pos: np.ndarray, neg: np.ndarray, n: int) -> int:
    """Number of x in [0, 2^n) satisfying every clause.

    Clause j is satisfied by x when ``x & pos[j] != 0`` or
    ``~x & neg[j] != 0`` (variable i is bit i-1). Requires n <= 62 so
    masks fit int64; callers guard much lower.
    """
    pos = np.ascontiguousarray(pos, dtype=np.int64)
    neg = np.ascontiguousarray(neg, dtype=np.int64)
    if BACKEND == "numba":
        return int(_count_satisfying_nb(pos, neg, n))
    return _count_satisfying_np(pos, neg, n)


def unsat_profile(
    pos: np.ndarray,
    neg: np.ndarray,
    group: np.ndarray,
    c: int,
    start: int,
    stop: int,
    out: np.ndarray,
) -> None:
    """Accumulate per-branch unsatisfied-clause counts into ``out``.

    For each branch assignment b in [start, stop) over c shared-variable
    bits, increments ``out[b - start, group[j]]`` for every clause j whose
    shared literals are all falsified by b. ``out`` must be an int64 array
    of shape (stop - start, number of groups), zero-initialised by the
    caller.
    """
    pos = np.ascontiguousarray(pos, dtype=np.int64)
    neg = np.ascontiguousarray(neg, dtype=np.int64)
    group = np.ascontiguousarray(group, dtype=np.int64)
    if BACKEND == "numba":
        _unsat_profile_nb(pos, neg, group, c, start, stop, out)
    else:
        _unsat_profile_np(pos, neg, group, c, start, stop, out)


def warmup() -> None:
    """Trigger JIT compilation so timed runs exclude compile cost."""
    pos = np.array([1], dtype=np.int64)
    neg = np.array([0], dtype=np.int64)
    count_satisfying(pos, neg, 1)
    out = np.zeros((2, 1), dtype=np.int64)
    unsat_profile(pos, neg, np.array([0], dtype=np.int64), 1, 0, 2, out)

"""Shared test utilities: a deliberately naive model counter used as the
independent reference, plus small instance factories."""

from __future__ import annotations

import numpy as np

from tncount import Formula, generate_random_ksat


def naive_count(num_vars: int, clauses) -> int:
    """Pure-Python enumeration over raw (possibly unnormalised) clauses."""
    total = 0
    for x in range(1 << num_vars):
        for clause in clauses:
            for lit in clause:
                value = (x >> (abs(lit) - 1)) & 1
                if (lit > 0) == bool(value):
                    break
            else:
                break
        else:
            total += 1
    return total


def random_formula(rng: np.random.Generator, max_n: int = 10, max_ratio: int = 3) -> Formula:
    n = int(rng.integers(1, max_n + 1))
    m = int(rng.integers(0, max_ratio * n + 1))
    k = int(rng.integers(1, min(3, n) + 1))
    return generate_random_ksat(n, m, k, int(rng.integers(1 << 62)))


UNSAT_PAIR = Formula(1, ((1,), (-1,)))  # x and not-x

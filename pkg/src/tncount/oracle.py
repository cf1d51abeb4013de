"""Brute-force ground truth: direct enumeration of every assignment.

The oracle stays deliberately unsophisticated — no unit propagation, no
component caching — so it remains trustworthy as the reference against
which the tensor-network counter is validated. The only concession to
speed is bit-packed clause evaluation (mask tests), executed by the hot
kernels in :mod:`tncount.kernels`.

Assignments are integers in ``[0, 2^n)`` with variable 1 as the least
significant bit, enumerated in increasing order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cnf import Formula
from .expr import And, BoolExpr, Not, Or, Var, expr_num_vars

__all__ = [
    "ORACLE_MAX_VARS",
    "AssignmentIterator",
    "clause_masks",
    "evaluate_formula",
    "brute_force_count",
    "brute_force_count_expr",
    "satisfying_table",
]

ORACLE_MAX_VARS = 24


@dataclass
class AssignmentIterator:
    """Iterates the ``2^n`` assignments once, in increasing integer order."""

    n: int
    cursor: int = field(default=0)

    def __iter__(self) -> "AssignmentIterator":
        return self

    def __next__(self) -> int:
        if self.cursor >= 1 << self.n:
            raise StopIteration
        value = self.cursor
        self.cursor += 1
        return value


def _guard(n: int) -> None:
    if n > ORACLE_MAX_VARS:
        raise ValueError(
            f"brute force over {n} variables exceeds the {ORACLE_MAX_VARS}-variable guard"
        )


def clause_masks(formula: Formula) -> tuple[np.ndarray, np.ndarray]:
    """Positive/negative literal bit masks, one int64 pair per clause."""
    m = formula.num_clauses
    pos = np.zeros(m, dtype=np.int64)
    neg = np.zeros(m, dtype=np.int64)
    for j, clause in enumerate(formula.clauses):
        for lit in clause:
            bit = 1 << (abs(lit) - 1)
            if lit > 0:
                pos[j] |= bit
            else:
                neg[j] |= bit
    return pos, neg


def evaluate_formula(formula: Formula, assignment: int) -> bool:
    """Direct clause-by-clause evaluation of one assignment."""
    for clause in formula.clauses:
        for lit in clause:
            value = (assignment >> (abs(lit) - 1)) & 1
            if (lit > 0) == bool(value):
                break
        else:
            return False
    return True


def brute_force_count(formula: Formula) -> int:
    """Exact model count by evaluating all ``2^n`` assignments."""
    _guard(formula.num_vars)
    from . import kernels

    pos, neg = clause_masks(formula)
    return kernels.count_satisfying(pos, neg, formula.num_vars)


def satisfying_table(formula: Formula) -> np.ndarray:
    """Boolean table over all assignments: entry x is 1 iff x satisfies."""
    _guard(formula.num_vars)
    n = formula.num_vars
    xs = np.arange(1 << n, dtype=np.int64)
    nxs = xs ^ ((1 << n) - 1)
    ok = np.ones(xs.size, dtype=np.bool_)
    pos, neg = clause_masks(formula)
    for j in range(pos.size):
        ok &= ((xs & pos[j]) != 0) | ((nxs & neg[j]) != 0)
    return ok


def _expr_table(e: BoolExpr, xs: np.ndarray) -> np.ndarray:
    if isinstance(e, Var):
        return ((xs >> (e.index - 1)) & 1).astype(np.bool_)
    if isinstance(e, Not):
        return ~_expr_table(e.child, xs)
    if isinstance(e, And):
        acc = _expr_table(e.args[0], xs)
        for arg in e.args[1:]:
            acc &= _expr_table(arg, xs)
        return acc
    acc = _expr_table(e.args[0], xs)
    for arg in e.args[1:]:
        acc |= _expr_table(arg, xs)
    return acc


def brute_force_count_expr(e: BoolExpr) -> int:
    """Exact model count of an expression by recursive evaluation of
    every assignment over variables ``1..max index``."""
    n = expr_num_vars(e)
    _guard(n)
    xs = np.arange(1 << n, dtype=np.int64)
    return int(np.count_nonzero(_expr_table(e, xs)))

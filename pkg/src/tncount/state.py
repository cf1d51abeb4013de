"""Dense Boolean-state analytics at desk scale.

The state of a formula is the 0/1 amplitude vector over all 2^n
assignments; its squared norm is the model count. On top of it:

* reduced density operators and their Renyi / von Neumann entropies for
  a bipartition of the variables — undefined exactly when the state is
  the zero vector (the formula is unsatisfiable), reported as ``None``;
* the low-temperature partition trace Tr e^(-beta*H), with H the
  diagonal projector onto non-satisfying bitstrings, which decreases
  monotonically to the model count as beta grows. (The diagonal H is
  the reading under which that limit holds; a rank-one projector onto
  the complement state would limit to 2^n - 1 instead.)
* the contraction Cauchy-Schwarz check on a pair of network fragments.

Everything is guarded at n <= 14 so each analytic stays under a second.
Entropies are reported in nats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cnf import Formula
from .network import Network, pair_contraction
from .oracle import satisfying_table

__all__ = [
    "STATE_MAX_VARS",
    "EIGENVALUE_CUTOFF",
    "DenseState",
    "Bipartition",
    "dense_state",
    "renyi_entropy",
    "von_neumann_entropy",
    "partition_trace",
    "CauchySchwarz",
    "cauchy_schwarz_check",
]

STATE_MAX_VARS = 14

# double-precision noise floor for <= 2^14-dimensional problems
EIGENVALUE_CUTOFF = 1e-12


def _guard(n: int) -> None:
    if n > STATE_MAX_VARS:
        raise ValueError(
            f"dense state over {n} variables exceeds the {STATE_MAX_VARS}-variable guard"
        )


@dataclass(frozen=True)
class DenseState:
    """Amplitude vector: entry x is 1.0 iff assignment x satisfies
    (variable 1 is the least significant bit of x)."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (1 << self.n,):
            raise ValueError("amplitude vector length must be 2^n")


@dataclass(frozen=True)
class Bipartition:
    """Variable split: ``traced`` is the side summed out of the density
    operator; the remaining variables are kept. Both sides must be
    nonempty."""

    traced: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "traced", frozenset(self.traced))
        if not self.traced:
            raise ValueError("traced side must be nonempty")

    def split(self, n: int) -> tuple[list[int], list[int]]:
        if any(not 1 <= v <= n for v in self.traced):
            raise ValueError(f"traced variables must lie in 1..{n}")
        kept = [v for v in range(1, n + 1) if v not in self.traced]
        if not kept:
            raise ValueError("kept side must be nonempty")
        return sorted(self.traced), kept


def dense_state(formula: Formula) -> DenseState:
    """State vector of a formula; the sum of entries is the model count."""
    _guard(formula.num_vars)
    return DenseState(formula.num_vars, satisfying_table(formula).astype(np.float64))


def _reduced_eigenvalues(state: DenseState, part: Bipartition) -> np.ndarray | None:
    """Eigenvalues (descending, cut at the noise floor) of the normalised
    density operator on the kept side; ``None`` for the zero state."""
    norm_sq = float(state.amplitudes.sum())
    if norm_sq == 0.0:
        return None
    traced, kept = part.split(state.n)
    xs = np.arange(1 << state.n, dtype=np.int64)
    row = np.zeros(xs.size, dtype=np.int64)
    col = np.zeros(xs.size, dtype=np.int64)
    for i, v in enumerate(traced):
        row |= ((xs >> (v - 1)) & 1) << i
    for i, v in enumerate(kept):
        col |= ((xs >> (v - 1)) & 1) << i
    matrix = np.zeros((1 << len(traced), 1 << len(kept)))
    matrix[row, col] = state.amplitudes
    singular = np.linalg.svd(matrix, compute_uv=False)
    eigenvalues = (singular * singular) / norm_sq
    return eigenvalues[eigenvalues >= EIGENVALUE_CUTOFF]


def renyi_entropy(state: DenseState, part: Bipartition, q: float) -> float | None:
    """Order-q entropy of the reduced state, in nats; ``None`` when the
    state is the zero vector (no density operator exists). ``q = 0``
    gives the log-rank; ``q = 1`` is rejected (use
    :func:`von_neumann_entropy`)."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    if q == 1:
        raise ValueError("q = 1 is the von Neumann limit; call von_neumann_entropy")
    eigenvalues = _reduced_eigenvalues(state, part)
    if eigenvalues is None:
        return None
    if q == 0:
        return float(np.log(eigenvalues.size))
    return float(np.log(np.sum(eigenvalues**q)) / (1.0 - q))


def von_neumann_entropy(state: DenseState, part: Bipartition) -> float | None:
    """q -> 1 entropy -sum(l * ln l), with 0 * ln 0 taken as 0."""
    eigenvalues = _reduced_eigenvalues(state, part)
    if eigenvalues is None:
        return None
    return float(-np.sum(eigenvalues * np.log(eigenvalues)))


def partition_trace(formula: Formula, beta: float) -> float:
    """Tr e^(-beta*H) with H diagonal on non-satisfying bitstrings.

    Equals (model count) + e^(-beta) * (non-model count): monotone
    decreasing in beta towards the exact model count.
    """
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    _guard(formula.num_vars)
    table = satisfying_table(formula).astype(np.float64)
    return float(np.exp(-beta * (1.0 - table)).sum())


@dataclass(frozen=True)
class CauchySchwarz:
    """Outcome of the contraction Cauchy-Schwarz check.

    ``overlap`` is the cross contraction of the two fragments,
    ``self_x`` / ``self_y`` their self-contractions, and ``cos_theta``
    the squared-overlap ratio overlap^2 / (self_x * self_y) (``None``
    when the denominator vanishes). ``holds`` must always be true.
    """

    holds: bool
    overlap: int | float
    self_x: int | float
    self_y: int | float
    cos_theta: float | None

    def __bool__(self) -> bool:
        return self.holds


def cauchy_schwarz_check(x: Network, y: Network) -> CauchySchwarz:
    """Check overlap^2 <= self_x * self_y on two fragments with matching
    dangling signatures; equality holds exactly when the fragments are
    proportional (cos_theta = 1 for identical satisfiable halves)."""
    overlap = pair_contraction(x, y)
    self_x = pair_contraction(x, x)
    self_y = pair_contraction(y, y)
    denominator = self_x * self_y
    cos_theta: float | None
    if denominator == 0:
        cos_theta = None
    elif isinstance(overlap, int) and isinstance(denominator, int):
        cos_theta = float(Fraction(overlap * overlap, denominator))
    else:
        cos_theta = float(overlap * overlap) / float(denominator)
    return CauchySchwarz(
        holds=overlap * overlap <= denominator,
        overlap=overlap,
        self_x=self_x,
        self_y=self_y,
        cos_theta=cos_theta,
    )

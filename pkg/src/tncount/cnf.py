"""CNF formulas: data model, DIMACS I/O and seeded instance generators.

A formula is a conjunction of clauses over variables ``1..num_vars``;
each clause is a disjunction of literals stored as signed integers in
the DIMACS convention (``v`` positive, ``-v`` negated).

Normalisation, applied on construction:

* duplicate literals inside a clause are removed;
* tautological clauses (containing both ``v`` and ``-v``) are dropped —
  they are satisfied by every assignment, so dropping preserves the
  model count;
* every variable index must lie in ``[1, num_vars]``.

Variables that occur in no clause remain part of the variable set and
contribute a factor two each to the model count (handled by the
counter). Both generators draw from NumPy's PCG64 generator seeded
directly with the given 64-bit seed, so instances are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "Clause",
    "DimacsError",
    "Formula",
    "normalize_clause",
    "parse_dimacs",
    "to_dimacs",
    "var_profile",
    "generate_random_ksat",
    "generate_rs_sat",
]

Clause = tuple[int, ...]


class DimacsError(ValueError):
    """Malformed DIMACS CNF input."""


def _literal_key(lit: int) -> tuple[int, int]:
    # positive literal sorts before the negated one on the same variable
    return (abs(lit), 0 if lit > 0 else 1)


def normalize_clause(literals: Iterable[int], num_vars: int) -> Clause | None:
    """Deduplicate, validate and sort a clause; ``None`` for tautologies."""
    seen: set[int] = set()
    for lit in literals:
        if lit == 0:
            raise ValueError("literal 0 is reserved as the DIMACS clause terminator")
        if not 1 <= abs(lit) <= num_vars:
            raise ValueError(
                f"variable index {abs(lit)} out of range 1..{num_vars}"
            )
        seen.add(int(lit))
    for lit in seen:
        if -lit in seen:
            return None
    return tuple(sorted(seen, key=_literal_key))


@dataclass(frozen=True)
class Formula:
    """Normalised CNF formula over variables ``1..num_vars``."""

    num_vars: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        norm = []
        for clause in self.clauses:
            c = normalize_clause(clause, self.num_vars)
            if c is not None:
                norm.append(c)
        object.__setattr__(self, "clauses", tuple(norm))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def var_profile(formula: Formula) -> tuple[int, ...]:
    """Occurrence count per variable.

    Entry ``v`` is the number of clauses containing variable ``v`` in
    either polarity (entry 0 is padding). After normalisation a variable
    occurs at most once per clause, so this is also the fan-out a shared
    variable needs in the tensor network.
    """
    counts = [0] * (formula.num_vars + 1)
    for clause in formula.clauses:
        for lit in clause:
            counts[abs(lit)] += 1
    return tuple(counts)


def parse_dimacs(text: str | bytes, warnings: list[str] | None = None) -> Formula:
    """Parse a DIMACS CNF document.

    Accepts ``c`` comment lines, one ``p cnf <vars> <clauses>`` header and
    whitespace-separated integer clauses terminated by ``0`` (clauses may
    span or share lines). A ``%`` line ends the document (SATLIB
    convention). Recoverable oddities — clause count differing from the
    header, an unterminated final clause, dropped tautologies — are
    appended to ``warnings`` when a list is supplied; structural problems
    raise :class:`DimacsError`.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    sink = warnings if warnings is not None else []

    num_vars: int | None = None
    declared = 0
    clauses: list[list[int]] = []
    current: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line == "%":
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate 'p cnf' header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars = int(parts[2])
                declared = int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer header field") from None
            if num_vars < 0 or declared < 0:
                raise DimacsError(f"line {lineno}: negative header field")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause data before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer token {tok!r}") from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > num_vars:
                raise DimacsError(
                    f"line {lineno}: variable index {abs(lit)} exceeds declared {num_vars}"
                )
            else:
                current.append(lit)

    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        sink.append("final clause not terminated by 0")
        clauses.append(current)
    if declared != len(clauses):
        sink.append(f"header declares {declared} clauses, found {len(clauses)}")
    tautologies = sum(1 for cl in clauses if any(-lit in cl for lit in cl))
    if tautologies:
        sink.append(f"dropped {tautologies} tautological clause(s)")
    return Formula(num_vars, tuple(tuple(cl) for cl in clauses))


def to_dimacs(formula: Formula) -> str:
    """Serialise to DIMACS text; parsing it back yields an equal Formula."""
    lines = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def generate_random_ksat(num_vars: int, num_clauses: int, k: int, seed: int) -> Formula:
    """Random k-CNF: each clause picks k distinct variables uniformly
    without replacement, each polarity uniform.

    Deterministic for a fixed seed (PCG64 seeded with ``seed``).
    """
    if num_vars < 1:
        raise ValueError("num_vars must be at least 1")
    if num_clauses < 0:
        raise ValueError("num_clauses must be nonnegative")
    if not 1 <= k <= num_vars:
        raise ValueError(f"clause width k={k} must satisfy 1 <= k <= {num_vars}")
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(num_clauses):
        chosen = rng.choice(num_vars, size=k, replace=False)
        signs = rng.integers(0, 2, size=k)
        clauses.append(
            tuple(int(v) + 1 if s else -(int(v) + 1) for v, s in zip(chosen, signs))
        )
    return Formula(num_vars, tuple(clauses))


def generate_rs_sat(num_vars: int, r: int, s: int, seed: int) -> Formula:
    """Random instance with clauses of exactly ``r`` literals and every
    variable occurring in at most ``s`` clauses.

    Targets ``floor(num_vars * s / r)`` clauses, stopping early once
    fewer than ``r`` variables retain occurrence budget. Deterministic
    for a fixed seed (PCG64). Raises when not even one clause fits
    (``r > num_vars``).
    """
    if r < 1 or s < 1:
        raise ValueError("r and s must be at least 1")
    if r > num_vars:
        raise ValueError(f"cannot place any clause: r={r} exceeds {num_vars} variables")
    rng = np.random.default_rng(seed)
    remaining = np.full(num_vars, s, dtype=np.int64)
    clauses = []
    for _ in range((num_vars * s) // r):
        avail = np.flatnonzero(remaining > 0)
        if avail.size < r:
            break
        chosen = rng.choice(avail, size=r, replace=False)
        remaining[chosen] -= 1
        signs = rng.integers(0, 2, size=r)
        clauses.append(
            tuple(int(v) + 1 if s_ else -(int(v) + 1) for v, s_ in zip(chosen, signs))
        )
    return Formula(num_vars, tuple(clauses))

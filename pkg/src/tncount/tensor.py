"""Dense small-tensor core over binary wires.

Every wire has dimension two. Two scalar backends:

* exact — object-dtype arrays holding Python integers, used on every
  counting path so results are never rounded;
* real — float64 arrays, used where normalisation introduces
  irrationals (gate normalisation, entropy analytics).

Backends never mix inside one contraction. Tensors are immutable; all
operations allocate fresh results, so sharing across threads is safe.
Dense tables are capped at 2^21 entries (gate arity <= 20): the
networks built here keep gate arity at the clause width and branching
removes large fan-out tensors before anything big is contracted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np

__all__ = [
    "IDENTITY_ATOL",
    "Tensor",
    "BackendMismatchError",
    "copy_tensor",
    "gate_tensor",
    "cap",
    "contract",
    "diagonal_map",
    "normalize_gate",
]

# tolerance for real-backend identity checks (float64, sums of <= 2^20 terms)
IDENTITY_ATOL = 1e-12

MAX_WIRES = 21

Wire = Hashable


class BackendMismatchError(TypeError):
    """Exact and real tensors cannot take part in one contraction."""


def _default_wires(count: int) -> tuple[int, ...]:
    return tuple(range(count))


@dataclass(frozen=True, eq=False)
class Tensor:
    """Dense tensor with named binary wires.

    ``data`` has shape ``(2,) * len(wires)``; axis order matches the
    wire order. dtype is ``object`` (exact integers) or ``float64``.
    """

    wires: tuple[Wire, ...]
    data: np.ndarray

    def __post_init__(self) -> None:
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"duplicate wire labels: {self.wires}")
        if self.data.shape != (2,) * len(self.wires):
            raise ValueError(
                f"data shape {self.data.shape} does not match {len(self.wires)} wires"
            )
        if self.data.dtype not in (np.dtype(object), np.dtype(np.float64)):
            raise ValueError(f"unsupported dtype {self.data.dtype}")

    @property
    def exact(self) -> bool:
        return self.data.dtype == np.dtype(object)

    @property
    def rank(self) -> int:
        return len(self.wires)

    def axis(self, wire: Wire) -> int:
        try:
            return self.wires.index(wire)
        except ValueError:
            raise ValueError(f"no wire {wire!r} on tensor with wires {self.wires}") from None

    def item(self):
        """Scalar value of a zero-wire tensor."""
        if self.wires:
            raise ValueError(f"tensor still has wires {self.wires}")
        return self.data[()]

    def relabel(self, mapping: Mapping[Wire, Wire]) -> "Tensor":
        """Rename wires; labels absent from the mapping stay unchanged."""
        return Tensor(tuple(mapping.get(w, w) for w in self.wires), self.data)

    def equal(self, other: "Tensor") -> bool:
        """Entrywise equality with matching wire order."""
        return self.wires == other.wires and bool(np.array_equal(self.data, other.data))


def _alloc(count: int, real: bool) -> np.ndarray:
    if count > MAX_WIRES:
        raise ValueError(f"{count}-wire dense tensor exceeds the {MAX_WIRES}-wire cap")
    shape = (2,) * count
    return np.zeros(shape, dtype=np.float64 if real else object)


def copy_tensor(k: int, wires: Sequence[Wire] | None = None, real: bool = False) -> Tensor:
    """Fan-out tensor of degree ``k``: a ``k + 1``-wire tensor with unit
    entries exactly at the all-zeros and all-ones index tuples.

    Degree 1 is the identity wire; degree 0 degenerates to the one-wire
    tensor (1, 1), i.e. the plus cap. The tensor is symmetric, so which
    wire is "the variable side" is bookkeeping only.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    data = _alloc(k + 1, real)
    data[(0,) * (k + 1)] = 1.0 if real else 1
    data[(1,) * (k + 1)] = 1.0 if real else 1
    labels = _default_wires(k + 1) if wires is None else tuple(wires)
    return Tensor(labels, data)


def gate_tensor(
    table: Sequence[int], wires: Sequence[Wire] | None = None, real: bool = False
) -> Tensor:
    """Tensor of a Boolean gate given its truth table.

    ``table`` has ``2^m`` entries in {0, 1}; entry ``i`` is the output on
    the input tuple spelled by the binary digits of ``i`` with the first
    input as the most significant bit. The result has ``m + 1`` wires,
    inputs first, output last; entry ``(x, b)`` is 1 iff the gate maps x
    to b. ``m = 0`` yields the constant vector |0> or |1>.
    """
    size = len(table)
    if size == 0 or size & (size - 1):
        raise ValueError(f"truth table length {size} is not a power of two")
    m = size.bit_length() - 1
    if any(entry not in (0, 1) for entry in table):
        raise ValueError("truth table entries must be 0 or 1")
    data = _alloc(m + 1, real)
    flat = data.reshape(size, 2)
    for i, entry in enumerate(table):
        flat[i, entry] = 1.0 if real else 1
    labels = _default_wires(m + 1) if wires is None else tuple(wires)
    return Tensor(labels, data)


def cap(kind: str, wire: Wire = 0, real: bool = False) -> Tensor:
    """One-wire tensor: 'zero' = (1,0), 'one' = (0,1), 'plus' = (1,1)."""
    data = _alloc(1, real)
    if kind == "zero":
        data[0] = 1.0 if real else 1
    elif kind == "one":
        data[1] = 1.0 if real else 1
    elif kind == "plus":
        data[0] = 1.0 if real else 1
        data[1] = 1.0 if real else 1
    else:
        raise ValueError(f"unknown cap kind {kind!r}")
    return Tensor((wire,), data)


def contract(a: Tensor, b: Tensor, pairs: Sequence[tuple[Wire, Wire]]) -> Tensor:
    """Sum over the paired wires of the product of two tensors.

    The result carries the remaining wires of ``a`` then of ``b``;
    contracting every wire yields a zero-wire tensor (a scalar).
    """
    if a.exact != b.exact:
        raise BackendMismatchError("cannot contract exact with real tensors")
    axes_a: list[int] = []
    axes_b: list[int] = []
    for wa, wb in pairs:
        ia, ib = a.axis(wa), b.axis(wb)
        if ia in axes_a or ib in axes_b:
            raise ValueError(f"wire used twice in contraction pairs: {(wa, wb)}")
        axes_a.append(ia)
        axes_b.append(ib)
    out_wires = tuple(w for i, w in enumerate(a.wires) if i not in axes_a) + tuple(
        w for i, w in enumerate(b.wires) if i not in axes_b
    )
    if len(set(out_wires)) != len(out_wires):
        raise ValueError(f"uncontracted wires collide: {out_wires}")
    if len(out_wires) > MAX_WIRES:
        raise ValueError(f"contraction result would have {len(out_wires)} wires")
    data = np.tensordot(a.data, b.data, axes=(axes_a, axes_b))
    return Tensor(out_wires, data)


def diagonal_map(g: Tensor) -> Tensor:
    """Self-overlap of a gate tensor over its inputs: a diagonal 2x2
    tensor whose entries are the preimage sizes of outputs 0 and 1.

    The last wire of ``g`` is taken as the output.
    """
    if g.rank < 1:
        raise ValueError("gate tensor needs at least an output wire")
    ins = list(range(g.rank - 1))
    data = np.tensordot(g.data, g.data, axes=(ins, ins))
    return Tensor(("out", "out_mirror"), data)


def normalize_gate(g: Tensor) -> Tensor:
    """Rescale a gate tensor so its self-overlap becomes the identity.

    Each unit entry ``(x, f(x))`` is divided by the square root of the
    preimage size of ``f(x)``. Fails on the constant-0 gate (its output-1
    preimage is empty, so no scaling can produce the identity). For
    gates attaining both outputs the result z satisfies z^T z = id to
    within ``IDENTITY_ATOL``.
    """
    counts = diagonal_map(g)
    n_zero = counts.data[0, 0]
    n_one = counts.data[1, 1]
    if n_one == 0:
        raise ValueError("constant-0 gate cannot be normalized")
    scale = np.array(
        [1.0 / np.sqrt(float(n_zero)) if n_zero else 0.0, 1.0 / np.sqrt(float(n_one))]
    )
    data = g.data.astype(np.float64) * scale
    return Tensor(g.wires, data)

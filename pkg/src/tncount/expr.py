"""Boolean expression trees over AND / OR / NOT and their text form.

Text grammar (``!`` binds tightest, then ``&``, then ``|``)::

    expr     = or
    or       = and { "|" and }
    and      = unary { "&" unary }
    unary    = "!" unary | atom
    atom     = variable | "(" expr ")"
    variable = "x" digits          (1-based variable index)

Chains of the same binary operator are flattened, so ``x1 & x2 & x3``
parses to a single 3-ary AND node. An expression is read-once when every
variable index occurs in exactly one leaf.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "BoolExpr",
    "Var",
    "Not",
    "And",
    "Or",
    "ExprSyntaxError",
    "parse_expression",
    "format_expression",
    "leaf_occurrences",
    "expr_num_vars",
    "is_read_once",
    "evaluate_expr",
    "generate_read_once",
]


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError("variable index must be at least 1")


@dataclass(frozen=True)
class Not:
    child: "BoolExpr"


@dataclass(frozen=True)
class And:
    args: tuple["BoolExpr", ...]

    def __post_init__(self) -> None:
        if len(self.args) < 2:
            raise ValueError("AND needs at least two operands")


@dataclass(frozen=True)
class Or:
    args: tuple["BoolExpr", ...]

    def __post_init__(self) -> None:
        if len(self.args) < 2:
            raise ValueError("OR needs at least two operands")


BoolExpr = Union[Var, Not, And, Or]


class ExprSyntaxError(ValueError):
    """Syntax error in expression text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    # (kind-or-symbol, position, var index) triples; index 0 for non-vars
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "&|!()":
            tokens.append((ch, i, 0))
            i += 1
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExprSyntaxError("expected digits after 'x'", i)
            index = int(text[i + 1 : j])
            if index < 1:
                raise ExprSyntaxError("variable index must be at least 1", i)
            tokens.append(("var", i, index))
            i = j
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", len(text), 0))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, int, int]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, int, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, int, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse_or(self) -> BoolExpr:
        parts = [self.parse_and()]
        while self.peek()[0] == "|":
            self.take()
            parts.append(self.parse_and())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def parse_and(self) -> BoolExpr:
        parts = [self.parse_unary()]
        while self.peek()[0] == "&":
            self.take()
            parts.append(self.parse_unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def parse_unary(self) -> BoolExpr:
        if self.peek()[0] == "!":
            self.take()
            return Not(self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> BoolExpr:
        kind, at, index = self.take()
        if kind == "var":
            return Var(index)
        if kind == "(":
            inner = self.parse_or()
            closing, cat, _ = self.take()
            if closing != ")":
                raise ExprSyntaxError("expected ')'", cat)
            return inner
        raise ExprSyntaxError(f"expected a variable, '!' or '(', got {kind!r}", at)


def parse_expression(text: str) -> BoolExpr:
    """Parse expression text into a tree; raises :class:`ExprSyntaxError`."""
    tokens = _tokenize(text)
    if tokens[0][0] == "end":
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(tokens)
    tree = parser.parse_or()
    kind, at, _ = parser.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected trailing {kind!r}", at)
    return tree


def format_expression(e: BoolExpr) -> str:
    """Render with minimal parentheses; round-trips through the parser."""

    def render(node: BoolExpr, parent_level: int) -> str:
        # precedence levels: or=0, and=1, not=2, var=3
        if isinstance(node, Var):
            return f"x{node.index}"
        if isinstance(node, Not):
            return "!" + render(node.child, 2)
        # children of a binary chain render one level up so a nested node of
        # the same operator keeps its parentheses and the parse round-trips
        if isinstance(node, And):
            text = " & ".join(render(a, 2) for a in node.args)
            level = 1
        else:
            text = " | ".join(render(a, 1) for a in node.args)
            level = 0
        return f"({text})" if level < parent_level else text

    return render(e, 0)


def leaf_occurrences(e: BoolExpr) -> Counter:
    """Number of leaves referring to each variable index."""
    counts: Counter = Counter()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            counts[node.index] += 1
        elif isinstance(node, Not):
            stack.append(node.child)
        else:
            stack.extend(node.args)
    return counts


def expr_num_vars(e: BoolExpr) -> int:
    """Variable count: the maximum index referenced by any leaf."""
    return max(leaf_occurrences(e))


def is_read_once(e: BoolExpr) -> bool:
    """True iff every referenced variable occurs in exactly one leaf."""
    return all(count == 1 for count in leaf_occurrences(e).values())


def evaluate_expr(e: BoolExpr, assignment: int) -> bool:
    """Evaluate under the assignment whose bit ``v - 1`` is variable v."""
    if isinstance(e, Var):
        return bool((assignment >> (e.index - 1)) & 1)
    if isinstance(e, Not):
        return not evaluate_expr(e.child, assignment)
    if isinstance(e, And):
        return all(evaluate_expr(a, assignment) for a in e.args)
    return any(evaluate_expr(a, assignment) for a in e.args)


def generate_read_once(num_leaves: int, seed: int) -> BoolExpr:
    """Random read-once expression over variables ``1..num_leaves``.

    Internal AND/OR nodes have arity 2 or 3; negations appear only
    directly above leaves (and possibly once at the root), which keeps
    the gate count of the resulting tree network at most ``2 * leaves``.
    Deterministic for a fixed seed (PCG64).
    """
    if num_leaves < 1:
        raise ValueError("num_leaves must be at least 1")
    rng = np.random.default_rng(seed)
    order = rng.permutation(num_leaves)

    def build(indices: np.ndarray) -> BoolExpr:
        if indices.size == 1:
            leaf: BoolExpr = Var(int(indices[0]) + 1)
            if rng.random() < 0.3:
                leaf = Not(leaf)
            return leaf
        arity = 2 if indices.size == 2 else int(rng.integers(2, 4))
        cuts = np.sort(rng.choice(np.arange(1, indices.size), size=arity - 1, replace=False))
        parts = np.split(indices, cuts)
        children = tuple(build(part) for part in parts)
        return And(children) if rng.random() < 0.5 else Or(children)

    tree = build(order)
    if num_leaves > 1 and rng.random() < 0.15:
        tree = Not(tree)
    return tree

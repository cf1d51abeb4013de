"""Wire-graph networks of Boolean tensors and their contraction.

A network is a list of nodes, each tagged with a role (``copy``,
``gate``, ``cap``, ``var_cap``) and carrying the integer edge ids of the
wires it touches. An edge id appearing on two nodes is a contracted
wire; an id appearing once must be listed in ``dangling`` (the open
signature, normally empty for networks built here).

Construction from a CNF formula follows one fixed recipe:

* one gate node per clause, the clause's disjunction with literal
  polarities folded into its truth table, output post-selected by a
  ``one`` cap (equivalent to funnelling all clause outputs through a
  fan-out tensor contracted with |1>, but it splits the network into
  per-clause components once the fan-out nodes are gone);
* one fan-out (copy) node per variable occurring in k >= 2 clauses,
  fed by a ``plus`` cap; a variable occurring once gets its plus cap
  wired straight into the clause (a degree-1 fan-out is just a wire).

With this recipe the closed network contracts to the exact model count
of the occurring variables; absent variables contribute a factor two
each, handled by the counter. Networks are immutable after build; every
operation returns fresh values.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cnf import Formula, var_profile
from .expr import And, BoolExpr, Not, Or, Var, expr_num_vars, leaf_occurrences
from .tensor import Tensor, cap, contract, copy_tensor, gate_tensor

__all__ = [
    "Node",
    "Network",
    "NetworkStats",
    "node_tensor",
    "build_boolean_network",
    "build_expr_network",
    "network_stats",
    "is_tree",
    "contract_forest",
    "branch_on_copy",
    "assign_copies",
    "network_value",
    "split_network",
    "pair_contraction",
    "dump_network",
]

ROLE_COPY = "copy"
ROLE_GATE = "gate"
ROLE_CAP = "cap"
ROLE_VAR_CAP = "var_cap"


@dataclass(frozen=True)
class Node:
    """One tensor in a network.

    ``wires`` lists edge ids in tensor wire order: a copy node has the
    variable-side wire first, a gate its inputs first and output last, a
    cap its single wire. ``pols`` holds clause literal polarities
    (1 positive / 0 negated) aligned with the inputs; ``var`` records the
    source variable of copy and variable-cap nodes.
    """

    role: str
    kind: str
    wires: tuple[int, ...]
    pols: tuple[int, ...] = ()
    var: int = 0


@dataclass(frozen=True)
class Network:
    nodes: tuple[Node, ...]
    num_vars: int = 0
    dangling: tuple[int, ...] = ()


@dataclass(frozen=True)
class NetworkStats:
    """Size measures of a network: ``g`` gates, ``c`` fan-out nodes,
    ``d`` the largest fan-out degree (0 when ``c`` is 0), ``n``
    variables, and ``branch_bound`` = 2^c branch assignments."""

    g: int
    c: int
    d: int
    n: int
    branch_bound: int


def _clause_table(pols: Sequence[int]) -> list[int]:
    m = len(pols)
    if m == 0:
        return [0]  # empty disjunction is false
    idx = np.arange(1 << m)
    bits = (idx[:, None] >> np.arange(m - 1, -1, -1)) & 1
    sat = (bits == np.asarray(pols)).any(axis=1)
    return sat.astype(int).tolist()


def _op_table(kind: str, arity: int) -> list[int]:
    idx = np.arange(1 << arity)
    bits = (idx[:, None] >> np.arange(arity - 1, -1, -1)) & 1
    if kind == "and":
        return bits.all(axis=1).astype(int).tolist()
    if kind == "or":
        return bits.any(axis=1).astype(int).tolist()
    raise ValueError(f"unknown gate kind {kind!r}")


def node_tensor(node: Node) -> Tensor:
    """Materialise a node's dense tensor with its edge ids as wire labels."""
    if node.kind == "copy":
        return copy_tensor(len(node.wires) - 1, wires=node.wires)
    if node.kind == "clause":
        return gate_tensor(_clause_table(node.pols), wires=node.wires)
    if node.kind == "not":
        return gate_tensor([1, 0], wires=node.wires)
    if node.kind in ("and", "or"):
        return gate_tensor(_op_table(node.kind, len(node.wires) - 1), wires=node.wires)
    if node.kind in ("zero", "one", "plus"):
        return cap(node.kind, wire=node.wires[0])
    raise ValueError(f"unknown node kind {node.kind!r}")


def _edge_map(net: Network) -> dict[int, list[tuple[int, int]]]:
    ends: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i, node in enumerate(net.nodes):
        for pos, edge in enumerate(node.wires):
            ends[edge].append((i, pos))
    dangling = set(net.dangling)
    for edge, endpoints in ends.items():
        if len(endpoints) > 2:
            raise ValueError(f"edge {edge} has {len(endpoints)} endpoints")
        if len(endpoints) == 1 and edge not in dangling:
            raise ValueError(f"edge {edge} is dangling but not declared")
        if len(endpoints) == 2 and edge in dangling:
            raise ValueError(f"edge {edge} is declared dangling but fully wired")
    return dict(ends)


def build_boolean_network(formula: Formula) -> Network:
    """Closed network of a CNF formula per the fixed recipe above."""
    nodes: list[Node] = []
    next_edge = 0
    occurrence_edges: dict[int, list[int]] = defaultdict(list)

    for clause in formula.clauses:
        in_edges = []
        pols = []
        for lit in clause:
            occurrence_edges[abs(lit)].append(next_edge)
            in_edges.append(next_edge)
            pols.append(1 if lit > 0 else 0)
            next_edge += 1
        out = next_edge
        next_edge += 1
        nodes.append(Node(ROLE_GATE, "clause", (*in_edges, out), tuple(pols)))
        nodes.append(Node(ROLE_CAP, "one", (out,)))

    for v in range(1, formula.num_vars + 1):
        edges = occurrence_edges.get(v)
        if not edges:
            continue
        if len(edges) == 1:
            nodes.append(Node(ROLE_VAR_CAP, "plus", (edges[0],), var=v))
        else:
            var_side = next_edge
            next_edge += 1
            nodes.append(Node(ROLE_COPY, "copy", (var_side, *edges), var=v))
            nodes.append(Node(ROLE_VAR_CAP, "plus", (var_side,), var=v))

    return Network(tuple(nodes), formula.num_vars)


def build_expr_network(e: BoolExpr) -> Network:
    """Closed network of an expression: one gate per AND/OR/NOT node,
    fan-out nodes for repeated variables, root post-selected by a
    ``one`` cap. Read-once expressions yield fan-out-free trees."""
    nodes: list[Node] = []
    counter = [0]
    occurrence_edges: dict[int, list[int]] = defaultdict(list)

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def visit(node: BoolExpr) -> int:
        if isinstance(node, Var):
            edge = fresh()
            occurrence_edges[node.index].append(edge)
            return edge
        if isinstance(node, Not):
            child = visit(node.child)
            out = fresh()
            nodes.append(Node(ROLE_GATE, "not", (child, out)))
            return out
        kind = "and" if isinstance(node, And) else "or"
        children = tuple(visit(a) for a in node.args)
        out = fresh()
        nodes.append(Node(ROLE_GATE, kind, (*children, out)))
        return out

    root = visit(e)
    nodes.append(Node(ROLE_CAP, "one", (root,)))

    for v in sorted(occurrence_edges):
        edges = occurrence_edges[v]
        if len(edges) == 1:
            nodes.append(Node(ROLE_VAR_CAP, "plus", (edges[0],), var=v))
        else:
            var_side = fresh()
            nodes.append(Node(ROLE_COPY, "copy", (var_side, *edges), var=v))
            nodes.append(Node(ROLE_VAR_CAP, "plus", (var_side,), var=v))

    return Network(tuple(nodes), expr_num_vars(e))


def network_stats(net: Network) -> NetworkStats:
    g = sum(1 for node in net.nodes if node.role == ROLE_GATE)
    copies = [node for node in net.nodes if node.role == ROLE_COPY]
    c = len(copies)
    d = max((len(node.wires) - 1 for node in copies), default=0)
    return NetworkStats(g=g, c=c, d=d, n=net.num_vars, branch_bound=1 << c)


def is_tree(net: Network) -> bool:
    """True iff the wire-graph is acyclic (forests accepted)."""
    parent = list(range(len(net.nodes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for endpoints in _edge_map(net).values():
        if len(endpoints) != 2:
            continue
        (a, _), (b, _) = endpoints
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def _adjacency(net: Network) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in net.nodes]
    for edge, endpoints in _edge_map(net).items():
        if len(endpoints) == 2:
            (a, _), (b, _) = endpoints
            adj[a].append((edge, b))
            adj[b].append((edge, a))
    for entries in adj:
        entries.sort()
    return adj


def contract_forest(net: Network):
    """Exact value of a closed forest: per component, contract leaves
    inward in post-order (children taken in wire-label order), then
    multiply the component scalars. Every intermediate tensor keeps at
    most one wire more than the largest gate arity."""
    if net.dangling:
        raise ValueError("contract_forest needs a closed network")
    if not is_tree(net):
        raise ValueError("contract_forest called on a network with a cycle")
    adj = _adjacency(net)
    visited = [False] * len(net.nodes)
    total = 1
    for root in range(len(net.nodes)):
        if visited[root]:
            continue
        order: list[tuple[int, int]] = []
        stack = [(root, -1)]
        while stack:
            here, parent = stack.pop()
            visited[here] = True
            order.append((here, parent))
            for _, other in adj[here]:
                if other != parent:
                    stack.append((other, here))
        partial: dict[int, Tensor] = {}
        for here, parent in reversed(order):
            t = node_tensor(net.nodes[here])
            for edge, other in adj[here]:
                if other == parent:
                    continue
                t = contract(t, partial.pop(other), [(edge, edge)])
            partial[here] = t
        total = total * partial[root].item()
    return total


def branch_on_copy(net: Network, copy_id: int) -> tuple[Network, Network]:
    """Delete one fan-out node and pin every wire it touched to 0 / 1.

    The two returned networks sum to the original's value exactly: the
    fan-out tensor is the sum of the all-zeros and all-ones pins, and
    contraction is linear in each component tensor.
    """
    node = net.nodes[copy_id]
    if node.role != ROLE_COPY:
        raise ValueError(f"node {copy_id} is {node.role}, not a fan-out node")

    def pinned(bit: int) -> Network:
        kind = "one" if bit else "zero"
        new_nodes = [n for i, n in enumerate(net.nodes) if i != copy_id]
        new_nodes.extend(Node(ROLE_CAP, kind, (w,)) for w in node.wires)
        return Network(tuple(new_nodes), net.num_vars, net.dangling)

    return pinned(0), pinned(1)


def assign_copies(net: Network, bits: Mapping[int, int]) -> Network:
    """Pin several fan-out nodes at once; ``bits`` maps node id to 0/1."""
    new_nodes: list[Node] = []
    pins: list[Node] = []
    for i, node in enumerate(net.nodes):
        if i in bits:
            if node.role != ROLE_COPY:
                raise ValueError(f"node {i} is {node.role}, not a fan-out node")
            kind = "one" if bits[i] else "zero"
            pins.extend(Node(ROLE_CAP, kind, (w,)) for w in node.wires)
        else:
            new_nodes.append(node)
    return Network(tuple(new_nodes + pins), net.num_vars, net.dangling)


def network_value(net: Network, max_copies: int = 20):
    """Exact value of a closed network: branch every fan-out node down
    to forests, contract each forest, and sum. Cost grows as 2^c."""
    copies = [i for i, node in enumerate(net.nodes) if node.role == ROLE_COPY]
    if len(copies) > max_copies:
        raise ValueError(f"{len(copies)} fan-out nodes exceed the limit of {max_copies}")
    if not copies:
        return contract_forest(net)
    low, high = branch_on_copy(net, copies[0])
    return network_value(low, max_copies) + network_value(high, max_copies)


def split_network(net: Network, node_ids: Iterable[int]) -> tuple[Network, Network]:
    """Split into two halves; edges crossing the split become the
    dangling signature of both halves, listed in increasing edge order
    so positions match."""
    chosen = set(node_ids)
    if not chosen or chosen >= set(range(len(net.nodes))):
        raise ValueError("split needs a nonempty proper subset of nodes")
    crossing = []
    for edge, endpoints in _edge_map(net).items():
        if len(endpoints) == 2:
            (a, _), (b, _) = endpoints
            if (a in chosen) != (b in chosen):
                crossing.append(edge)
    crossing.sort()

    def half(selected: bool) -> Network:
        side = [n for i, n in enumerate(net.nodes) if (i in chosen) == selected]
        open_edges = list(crossing)
        for i, node in enumerate(net.nodes):
            if (i in chosen) == selected:
                open_edges.extend(w for w in node.wires if w in net.dangling)
        return Network(tuple(side), net.num_vars, tuple(sorted(set(open_edges))))

    return half(True), half(False)


def _contract_dense(net: Network):
    """Fold all node tensors together, preferring neighbours of the
    running partial tensor. Intermediate rank is bounded only by the
    cut width of the fold order — use at desk scale."""
    _edge_map(net)  # validation
    if not net.nodes:
        return 1
    remaining = list(range(len(net.nodes)))
    acc = node_tensor(net.nodes[remaining.pop(0)])
    while remaining:
        pick = None
        for idx in remaining:
            if any(w in acc.wires for w in net.nodes[idx].wires):
                pick = idx
                break
        if pick is None:
            pick = remaining[0]
        remaining.remove(pick)
        t = node_tensor(net.nodes[pick])
        shared = [w for w in t.wires if w in acc.wires]
        acc = contract(acc, t, [(w, w) for w in shared])
    if acc.wires:
        raise ValueError(f"network not closed, wires {acc.wires} remain")
    return acc.item()


def pair_contraction(x: Network, y: Network):
    """Join two networks along their dangling signatures (position by
    position) and contract the closed result. ``pair_contraction(x, x)``
    is the self-overlap of a fragment."""
    if len(x.dangling) != len(y.dangling):
        raise ValueError(
            f"dangling signatures differ: {len(x.dangling)} vs {len(y.dangling)} wires"
        )
    labels = [w for node in x.nodes for w in node.wires]
    labels += [w for node in y.nodes for w in node.wires]
    offset = max(labels, default=0) + 1
    mapping = {d: x.dangling[i] for i, d in enumerate(y.dangling)}

    def relabel(edge: int) -> int:
        return mapping.get(edge, edge + offset)

    y_nodes = tuple(
        Node(n.role, n.kind, tuple(relabel(w) for w in n.wires), n.pols, n.var)
        for n in y.nodes
    )
    joined = Network(x.nodes + y_nodes, x.num_vars)
    return _contract_dense(joined)


def dump_network(net: Network) -> str:
    """Adjacency-list dump, one line per node:
    ``<id> <role>/<kind> deg=<wire count> var=<v|-> nbrs=<sorted ids>``."""
    ends = _edge_map(net)
    lines = []
    for i, node in enumerate(net.nodes):
        nbrs = sorted(
            other for w in node.wires for other, _ in ends[w] if other != i
        )
        var = str(node.var) if node.var else "-"
        lines.append(
            f"{i} {node.role}/{node.kind} deg={len(node.wires)} var={var} nbrs={nbrs}"
        )
    return "\n".join(lines) + ("\n" if lines else "")

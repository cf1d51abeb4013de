"""Exact #SAT model counting by branching tensor-network contraction.

A CNF formula becomes a closed network of clause gates, variable
fan-out tensors and boundary caps whose full contraction equals the
number of satisfying assignments. The counter removes the c fan-out
nodes by summing over their 2^c pinned assignments, contracts the
cheap residual forests, and reports exact unbounded-integer counts,
alongside desk-scale analytics (reduced-state entropies, the
low-temperature partition trace) tying counting to the state picture.
"""

from .cnf import (
    Clause,
    DimacsError,
    Formula,
    generate_random_ksat,
    generate_rs_sat,
    normalize_clause,
    parse_dimacs,
    to_dimacs,
    var_profile,
)
from .counter import (
    DEFAULT_MAX_BRANCH_VARS,
    BranchBudgetError,
    CountResult,
    branch_values,
    count_models,
    is_satisfiable,
    normalized_self_overlap,
    predicted_cost,
    rof_satisfiable,
)
from .expr import (
    And,
    BoolExpr,
    ExprSyntaxError,
    Not,
    Or,
    Var,
    evaluate_expr,
    expr_num_vars,
    format_expression,
    generate_read_once,
    is_read_once,
    leaf_occurrences,
    parse_expression,
)
from .kernels import backend as kernel_backend
from .network import (
    Network,
    NetworkStats,
    Node,
    assign_copies,
    branch_on_copy,
    build_boolean_network,
    build_expr_network,
    contract_forest,
    dump_network,
    is_tree,
    network_stats,
    network_value,
    pair_contraction,
    split_network,
)
from .oracle import (
    ORACLE_MAX_VARS,
    AssignmentIterator,
    brute_force_count,
    brute_force_count_expr,
    satisfying_table,
)
from .state import (
    STATE_MAX_VARS,
    Bipartition,
    CauchySchwarz,
    DenseState,
    cauchy_schwarz_check,
    dense_state,
    partition_trace,
    renyi_entropy,
    von_neumann_entropy,
)
from .tensor import (
    BackendMismatchError,
    Tensor,
    cap,
    contract,
    copy_tensor,
    diagonal_map,
    gate_tensor,
    normalize_gate,
)

__version__ = "0.1.0"

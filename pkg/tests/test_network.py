import numpy as np
import pytest

from helpers import UNSAT_PAIR, random_formula
from tncount import (
    Formula,
    assign_copies,
    branch_on_copy,
    brute_force_count,
    build_boolean_network,
    build_expr_network,
    contract_forest,
    dump_network,
    generate_read_once,
    is_tree,
    network_stats,
    network_value,
    parse_expression,
    split_network,
    var_profile,
)

TWO_CLAUSE = Formula(3, ((1, 2), (-1, 3)))  # (x1|x2) & (!x1|x3), 4 models


def _unused(f: Formula) -> int:
    profile = var_profile(f)
    return sum(1 for v in range(1, f.num_vars + 1) if profile[v] == 0)


def test_single_positive_clause():
    net = build_boolean_network(Formula(1, ((1,),)))
    stats = network_stats(net)
    assert (stats.g, stats.c, stats.d) == (1, 0, 0)
    assert is_tree(net)
    assert contract_forest(net) == 1


def test_two_clause_network_stats():
    net = build_boolean_network(TWO_CLAUSE)
    stats = network_stats(net)
    assert (stats.g, stats.c, stats.d, stats.n) == (2, 1, 2, 3)
    assert stats.branch_bound == 2
    assert network_value(net) == 4


def test_contradiction_contracts_to_zero():
    assert network_value(build_boolean_network(UNSAT_PAIR)) == 0


def test_empty_formula_network_value_is_one():
    # absent variables are the counter's 2^n factor; the network itself is empty
    net = build_boolean_network(Formula(4))
    assert net.nodes == ()
    assert contract_forest(net) == 1


def test_degree_one_variables_get_no_fan_out_node():
    net = build_boolean_network(Formula(3, ((1, 2, 3),)))
    assert network_stats(net).c == 0
    roles = {node.role for node in net.nodes}
    assert roles == {"gate", "cap", "var_cap"}


def test_max_degree_tracks_occurrences():
    clauses = tuple((1, v) for v in range(2, 12))  # x1 occurs in 10 clauses
    stats = network_stats(build_boolean_network(Formula(11, clauses)))
    assert stats.d == 10


def test_expression_tree_has_no_fan_out():
    net = build_expr_network(parse_expression("(x1 | x2) & !x3"))
    stats = network_stats(net)
    assert stats.c == 0
    assert stats.g == 3  # or, not, and
    assert is_tree(net)
    assert contract_forest(net) == 3  # assignments satisfying the expression


def test_expression_with_repeated_variable():
    net = build_expr_network(parse_expression("x1 & !x1"))
    stats = network_stats(net)
    assert stats.c == 1
    assert network_value(net) == 0


def test_single_leaf_expression_value():
    assert network_value(build_expr_network(parse_expression("x1"))) == 1


def test_is_tree_detects_shared_clause_cycle():
    # two fan-out variables feeding the same two clauses close a cycle
    net = build_boolean_network(Formula(2, ((1, 2), (-1, -2))))
    assert not is_tree(net)
    with pytest.raises(ValueError, match="cycle"):
        contract_forest(net)


def test_forest_value_is_product_of_components():
    # (x1|x2) & (x3): disjoint clause components multiply, 3 * 1
    net = build_boolean_network(Formula(3, ((1, 2), (3,))))
    assert is_tree(net)
    assert contract_forest(net) == 3


def test_contract_forest_requires_closed_network():
    net = build_boolean_network(TWO_CLAUSE)
    half, _ = split_network(net, [0])
    with pytest.raises(ValueError, match="closed"):
        contract_forest(half)


def test_branch_on_copy_two_clause_example():
    net = build_boolean_network(TWO_CLAUSE)
    copy_id = next(i for i, node in enumerate(net.nodes) if node.role == "copy")
    low, high = branch_on_copy(net, copy_id)
    # hand-enumerated: x1=0 leaves x2 forced (2 models), x1=1 leaves x3 forced
    assert contract_forest(low) == 2
    assert contract_forest(high) == 2
    assert contract_forest(low) + contract_forest(high) == network_value(net)


def test_branch_on_copy_rejects_other_roles():
    net = build_boolean_network(TWO_CLAUSE)
    with pytest.raises(ValueError, match="fan-out"):
        branch_on_copy(net, 0)


def test_branch_on_contradiction_gives_zero_plus_zero():
    net = build_boolean_network(UNSAT_PAIR)
    copy_id = next(i for i, node in enumerate(net.nodes) if node.role == "copy")
    low, high = branch_on_copy(net, copy_id)
    assert contract_forest(low) == 0
    assert contract_forest(high) == 0


def test_double_branching_enumerates_all_leaves():
    f = Formula(4, ((1, 2), (-1, 3), (2, 4)))  # x1 and x2 each occur twice
    net = build_boolean_network(f)
    copies = [i for i, node in enumerate(net.nodes) if node.role == "copy"]
    assert len(copies) == 2
    total = 0
    for b0 in (0, 1):
        for b1 in (0, 1):
            leaf = assign_copies(net, {copies[0]: b0, copies[1]: b1})
            assert is_tree(leaf)
            total += contract_forest(leaf)
    assert total == brute_force_count(f)


def test_branch_sum_rule_on_random_networks():
    rng = np.random.default_rng(23)
    checked = 0
    while checked < 25:
        f = random_formula(rng, max_n=12)
        net = build_boolean_network(f)
        copies = [i for i, node in enumerate(net.nodes) if node.role == "copy"]
        if len(copies) > 8:
            continue
        total = 0
        for b in range(1 << len(copies)):
            bits = {cid: (b >> (len(copies) - 1 - i)) & 1 for i, cid in enumerate(copies)}
            total += contract_forest(assign_copies(net, bits))
        assert total << _unused(f) == brute_force_count(f)
        assert total == network_value(net)
        checked += 1


def test_read_once_formulas_build_trees():
    rng = np.random.default_rng(29)
    for _ in range(10):
        f = random_formula(rng, max_n=10)
        if max(var_profile(f)) <= 1:
            net = build_boolean_network(f)
            assert network_stats(net).c == 0
            assert is_tree(net)


def test_gate_count_linear_in_leaves():
    for seed in range(25):
        leaves = int(np.random.default_rng(seed).integers(1, 40))
        tree = generate_read_once(leaves, seed)
        stats = network_stats(build_expr_network(tree))
        assert stats.g <= 2 * leaves


def test_forest_values_are_nonnegative_integers():
    rng = np.random.default_rng(31)
    for _ in range(15):
        f = random_formula(rng, max_n=8)
        value = network_value(build_boolean_network(f))
        assert isinstance(value, int)
        assert value >= 0


def test_dump_lists_every_node():
    net = build_boolean_network(TWO_CLAUSE)
    dump = dump_network(net)
    lines = dump.strip().splitlines()
    assert len(lines) == len(net.nodes)
    assert any("copy/copy" in line and "var=1" in line for line in lines)


def test_split_halves_share_signature():
    net = build_boolean_network(TWO_CLAUSE)
    x, y = split_network(net, [0, 1])
    assert x.dangling == y.dangling
    assert len(x.nodes) + len(y.nodes) == len(net.nodes)
    with pytest.raises(ValueError, match="proper subset"):
        split_network(net, [])

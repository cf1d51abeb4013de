import numpy as np
import pytest

from tncount import (
    And,
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


def test_parse_basic_tree():
    assert parse_expression("(x1 | x2) & !x3") == And((Or((Var(1), Var(2))), Not(Var(3))))


def test_parse_precedence_not_and_or():
    assert parse_expression("!x1 & x2") == And((Not(Var(1)), Var(2)))
    assert parse_expression("x1 | x2 & x3") == Or((Var(1), And((Var(2), Var(3)))))


def test_parse_flattens_operator_chains():
    assert parse_expression("x1 & x2 & x3") == And((Var(1), Var(2), Var(3)))
    assert parse_expression("x1 | x2 | x3 | x4") == Or((Var(1), Var(2), Var(3), Var(4)))


def test_parse_single_leaf():
    e = parse_expression("x1")
    assert e == Var(1)
    assert is_read_once(e)


def test_parse_errors_carry_positions():
    with pytest.raises(ExprSyntaxError, match="position 0"):
        parse_expression("")
    with pytest.raises(ExprSyntaxError, match="position 5"):
        parse_expression("x1 & %")
    with pytest.raises(ExprSyntaxError) as err:
        parse_expression("(x1 | x2")
    assert err.value.position == 8
    with pytest.raises(ExprSyntaxError):
        parse_expression("x1 x2")
    with pytest.raises(ExprSyntaxError, match="digits"):
        parse_expression("x & x1")


def test_read_once_detection():
    assert is_read_once(parse_expression("(x1 | x2) & !x3"))
    assert not is_read_once(parse_expression("x1 & !x1"))
    assert not is_read_once(parse_expression("x1 | x2 & x1"))


def test_num_vars_is_max_leaf_index():
    assert expr_num_vars(parse_expression("x2 & x7")) == 7


def test_evaluate_expr_truth_table():
    e = parse_expression("(x1 | x2) & !x3")
    satisfied = [x for x in range(8) if evaluate_expr(e, x)]
    assert satisfied == [0b001, 0b010, 0b011]  # x3 clear, x1 or x2 set


def test_format_round_trips_fixed_cases():
    for text in ["x1", "!x1", "x1 & (x2 | x3)", "!(x1 | x2) & x3", "x1 | x2 & !x4"]:
        tree = parse_expression(text)
        assert parse_expression(format_expression(tree)) == tree


def test_format_round_trips_generated_trees():
    for seed in range(30):
        tree = generate_read_once(int(np.random.default_rng(seed).integers(1, 30)), seed)
        assert parse_expression(format_expression(tree)) == tree


def test_generator_uses_each_variable_exactly_once():
    for seed in range(20):
        tree = generate_read_once(17, seed)
        occurrences = leaf_occurrences(tree)
        assert set(occurrences) == set(range(1, 18))
        assert all(count == 1 for count in occurrences.values())
        assert is_read_once(tree)


def test_generator_is_deterministic():
    assert generate_read_once(12, 5) == generate_read_once(12, 5)


def test_constructor_validation():
    with pytest.raises(ValueError):
        Var(0)
    with pytest.raises(ValueError):
        And((Var(1),))
    with pytest.raises(ValueError):
        Or((Var(1),))

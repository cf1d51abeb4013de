import numpy as np
import pytest

from helpers import UNSAT_PAIR, naive_count, random_formula
from tncount import (
    And,
    AssignmentIterator,
    Formula,
    Not,
    Or,
    Var,
    brute_force_count,
    brute_force_count_expr,
    expr_num_vars,
    satisfying_table,
)


def test_assignment_iterator_visits_each_assignment_once_in_order():
    assert list(AssignmentIterator(3)) == list(range(8))
    assert list(AssignmentIterator(0)) == [0]


def test_assignment_iterator_cursor_resumes():
    it = AssignmentIterator(2, cursor=2)
    assert list(it) == [2, 3]


def test_unsat_pair_counts_zero():
    assert brute_force_count(UNSAT_PAIR) == 0


def test_empty_formula_counts_every_assignment():
    assert brute_force_count(Formula(5)) == 32


def test_two_clause_example():
    # (x1 | x2) & (!x1 | x3): 4 of the 8 assignments satisfy (enumerated by hand)
    f = Formula(3, ((1, 2), (-1, 3)))
    assert brute_force_count(f) == 4


def test_empty_clause_is_unsatisfiable():
    assert brute_force_count(Formula(3, ((),))) == 0


def test_matches_naive_reference_on_random_formulas():
    rng = np.random.default_rng(7)
    for _ in range(60):
        f = random_formula(rng, max_n=10)
        assert brute_force_count(f) == naive_count(f.num_vars, f.clauses)


def test_guard_rejects_large_instances():
    with pytest.raises(ValueError, match="guard"):
        brute_force_count(Formula(25))
    with pytest.raises(ValueError, match="guard"):
        brute_force_count_expr(And(tuple(Var(i) for i in range(1, 26))))


def test_expr_count_examples():
    assert brute_force_count_expr(Var(1)) == 1
    assert brute_force_count_expr(And((Var(1), Not(Var(1))))) == 0
    assert brute_force_count_expr(Or((Var(1), Var(2)))) == 3


def _clauses_as_expr(f: Formula):
    clause_exprs = []
    for clause in f.clauses:
        lits = tuple(Var(abs(l)) if l > 0 else Not(Var(abs(l))) for l in clause)
        clause_exprs.append(lits[0] if len(lits) == 1 else Or(lits))
    return clause_exprs[0] if len(clause_exprs) == 1 else And(tuple(clause_exprs))


def test_cnf_and_expression_paths_agree():
    rng = np.random.default_rng(11)
    done = 0
    while done < 40:
        f = random_formula(rng, max_n=12)
        if f.num_clauses == 0 or any(not clause for clause in f.clauses):
            continue
        e = _clauses_as_expr(f)
        # the expression only sees variables up to the largest mentioned index
        absent = f.num_vars - expr_num_vars(e)
        assert brute_force_count(f) == brute_force_count_expr(e) << absent
        done += 1


def test_satisfying_table_matches_counts():
    rng = np.random.default_rng(13)
    for _ in range(20):
        f = random_formula(rng, max_n=8)
        table = satisfying_table(f)
        assert table.size == 1 << f.num_vars
        assert int(table.sum()) == brute_force_count(f)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_count
from tncount import (
    DimacsError,
    Formula,
    brute_force_count,
    generate_random_ksat,
    generate_rs_sat,
    parse_dimacs,
    to_dimacs,
    var_profile,
)


def test_parse_minimal_document():
    f = parse_dimacs("p cnf 2 1\n1 2 0")
    assert f == Formula(2, ((1, 2),))


def test_parse_skips_comments():
    f = parse_dimacs("c hi\np cnf 1 2\n1 0\n-1 0")
    assert f == Formula(1, ((1,), (-1,)))


def test_parse_accepts_bytes_and_multi_clause_lines():
    f = parse_dimacs(b"p cnf 3 2\n1 -2 0 2 3 0\n")
    assert f.clauses == ((1, -2), (2, 3))


def test_parse_rejects_out_of_range_variable():
    with pytest.raises(DimacsError, match="exceeds"):
        parse_dimacs("p cnf 1 1\n2 0")


def test_parse_rejects_missing_header():
    with pytest.raises(DimacsError, match="header"):
        parse_dimacs("1 2 0")
    with pytest.raises(DimacsError, match="header"):
        parse_dimacs("c only comments\n")


def test_parse_rejects_duplicate_header():
    with pytest.raises(DimacsError, match="duplicate"):
        parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0")


def test_parse_rejects_non_integer_token():
    with pytest.raises(DimacsError, match="non-integer"):
        parse_dimacs("p cnf 2 1\n1 x 0")


def test_clause_count_mismatch_is_a_warning():
    warnings = []
    f = parse_dimacs("p cnf 2 5\n1 0", warnings)
    assert f.num_clauses == 1
    assert any("declares 5" in w for w in warnings)


def test_unterminated_final_clause_is_kept_with_warning():
    warnings = []
    f = parse_dimacs("p cnf 2 1\n1 2", warnings)
    assert f.clauses == ((1, 2),)
    assert any("not terminated" in w for w in warnings)


def test_tautologies_dropped_with_warning():
    warnings = []
    f = parse_dimacs("p cnf 2 2\n1 -1 0\n2 0", warnings)
    assert f.clauses == ((2,),)
    assert any("tautological" in w for w in warnings)


def test_duplicate_literals_are_deduplicated():
    assert Formula(2, ((1, 1, 2),)).clauses == ((1, 2),)


def test_literal_zero_and_bad_range_rejected_on_construction():
    with pytest.raises(ValueError):
        Formula(2, ((0,),))
    with pytest.raises(ValueError, match="out of range"):
        Formula(2, ((3,),))


def test_round_trip_fixed_and_random():
    fixed = Formula(4, ((1, -2), (3,), (-1, -3, 4)))
    assert parse_dimacs(to_dimacs(fixed)) == fixed
    rng = np.random.default_rng(3)
    for _ in range(25):
        f = generate_random_ksat(8, int(rng.integers(0, 20)), 3, int(rng.integers(1 << 62)))
        assert parse_dimacs(to_dimacs(f)) == f


@st.composite
def raw_clause_lists(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    literal = st.integers(min_value=1, max_value=n).flatmap(
        lambda v: st.sampled_from([v, -v])
    )
    clauses = draw(st.lists(st.lists(literal, min_size=1, max_size=5), max_size=6))
    return n, clauses


@given(raw_clause_lists())
@settings(max_examples=60, deadline=None)
def test_normalization_preserves_model_count(data):
    n, raw = data
    # raw clauses may repeat literals or be tautological; dedup and tautology
    # removal must not change which assignments satisfy the conjunction
    assert brute_force_count(Formula(n, tuple(map(tuple, raw)))) == naive_count(n, raw)


def test_var_profile_sums_to_literal_occurrences():
    f = Formula(4, ((1, -2), (2, 3), (-2, 4)))
    profile = var_profile(f)
    assert profile == (0, 1, 3, 1, 1)
    assert sum(profile) == sum(len(c) for c in f.clauses)


def test_ksat_generator_is_deterministic_per_seed():
    a = generate_random_ksat(10, 15, 3, 42)
    b = generate_random_ksat(10, 15, 3, 42)
    c = generate_random_ksat(10, 15, 3, 43)
    assert a == b
    assert a != c


def test_ksat_generator_shape():
    f = generate_random_ksat(10, 15, 3, 42)
    assert f.num_clauses == 15
    for clause in f.clauses:
        assert len(clause) == 3
        assert len({abs(l) for l in clause}) == 3


def test_ksat_generator_empty_formula_counts_full_cube():
    f = generate_random_ksat(5, 0, 3, 1)
    assert f.num_clauses == 0
    assert brute_force_count(f) == 32


def test_ksat_generator_rejects_wide_clauses():
    with pytest.raises(ValueError, match="k=3"):
        generate_random_ksat(2, 1, 3, 7)


def test_rs_generator_respects_bounds():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(4, 17))
        r = int(rng.integers(1, min(4, n) + 1))
        s = int(rng.integers(1, 5))
        f = generate_rs_sat(n, r, s, int(rng.integers(1 << 62)))
        assert all(len(clause) == r for clause in f.clauses)
        assert all(count <= s for count in var_profile(f))


def test_rs_generator_read_once_is_satisfiable():
    f = generate_rs_sat(6, 3, 1, 1)
    assert max(var_profile(f)) <= 1
    assert brute_force_count(f) > 0


def test_rs_generator_tovey_instances_are_satisfiable():
    # clause width r with at most r occurrences per variable: always satisfiable
    rng = np.random.default_rng(17)
    for _ in range(30):
        r = int(rng.integers(1, 5))
        s = int(rng.integers(1, r + 1))
        n = int(rng.integers(r, 17))
        f = generate_rs_sat(n, r, s, int(rng.integers(1 << 62)))
        assert brute_force_count(f) > 0


def test_rs_generator_infeasible():
    with pytest.raises(ValueError, match="cannot place"):
        generate_rs_sat(2, 3, 1, 1)

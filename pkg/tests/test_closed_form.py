import itertools

import pytest

from forest_census.errors import InvalidInputError, UnsupportedInputError
from forest_census.graph.models import PartSizes
from forest_census.services.closed_form import (
    FormulaRequest,
    bipartite_forest_count,
    collapse_identity_check,
    evaluate,
    evaluate_sum_form,
    forest_count_r_roots_in_part,
    forest_count_via_sum,
    root_closing_collapse_check,
    rooted_tree_count_root_in_part,
    total_rooted_forest_count,
    total_via_sum,
    tree_count_via_sum,
    tripartite_tree_count,
)
from forest_census.services.exact_math import binomial


def test_bipartite_examples():
    assert bipartite_forest_count(1, 1, 1, 1) == 1
    assert bipartite_forest_count(1, 1, 1, 0) == 1
    assert bipartite_forest_count(2, 1, 2, 1) == 12
    for m in range(1, 5):
        for n in range(1, 5):
            assert bipartite_forest_count(m, 0, n, 0) == 0


def test_bipartite_rejects_out_of_range():
    with pytest.raises(InvalidInputError):
        bipartite_forest_count(2, 3, 1, 0)
    with pytest.raises(InvalidInputError):
        bipartite_forest_count(2, 0, 1, -1)
    with pytest.raises(InvalidInputError):
        bipartite_forest_count(0, 0, 0, 0)


def test_bipartite_all_roots_on_one_side():
    for m in range(1, 6):
        for n in range(1, 6):
            assert bipartite_forest_count(m, m, n, n) == 1
            for k in range(n + 1):
                assert bipartite_forest_count(m, m, n, k) == binomial(n, k) * m ** (n - k)


def test_bipartite_with_empty_side_is_all_roots():
    assert bipartite_forest_count(3, 3, 0, 0) == 1
    assert bipartite_forest_count(3, 2, 0, 0) == 0
    assert bipartite_forest_count(0, 0, 2, 2) == 1


def test_tree_count_examples():
    assert tripartite_tree_count(PartSizes(1, 1, 1)) == 3
    assert tripartite_tree_count(PartSizes(1, 1, 2)) == 8
    assert tripartite_tree_count(PartSizes(2, 2, 0)) == 4
    assert tripartite_tree_count(PartSizes(2, 2, 2)) == 384
    with pytest.raises(InvalidInputError):
        tripartite_tree_count(PartSizes(0, 0, 0))


def test_rooted_tree_count_examples():
    assert rooted_tree_count_root_in_part(PartSizes(1, 1, 1)) == 3
    assert rooted_tree_count_root_in_part(PartSizes(1, 1, 2)) == 16
    with pytest.raises(InvalidInputError):
        rooted_tree_count_root_in_part(PartSizes(2, 2, 0))


def test_forest_count_examples():
    assert forest_count_r_roots_in_part(PartSizes(1, 1, 2), 2) == 8
    assert forest_count_r_roots_in_part(PartSizes(1, 1, 1), 1) == 3
    assert forest_count_r_roots_in_part(PartSizes(2, 2, 2), 2) == 192
    with pytest.raises(InvalidInputError):
        forest_count_r_roots_in_part(PartSizes(1, 1, 2), 0)
    with pytest.raises(InvalidInputError):
        forest_count_r_roots_in_part(PartSizes(1, 1, 2), 3)


def test_total_forest_examples():
    assert total_rooted_forest_count(PartSizes(1, 1, 1)) == 16
    assert total_rooted_forest_count(PartSizes(1, 1, 0)) == 3
    assert total_rooted_forest_count(PartSizes(2, 1, 1)) == 75
    assert total_rooted_forest_count(PartSizes(0, 0, 4)) == 1


def test_sum_form_examples():
    assert tree_count_via_sum(PartSizes(1, 1, 2)) == 8
    assert tree_count_via_sum(PartSizes(1, 1, 1)) == 3
    assert tree_count_via_sum(PartSizes(3, 2, 2)) == tripartite_tree_count(PartSizes(3, 2, 2))
    assert forest_count_via_sum(PartSizes(1, 1, 2), 2) == 8
    assert forest_count_via_sum(PartSizes(1, 1, 2), 1) == 16
    assert forest_count_via_sum(PartSizes(2, 2, 3), 2) == forest_count_r_roots_in_part(PartSizes(2, 2, 3), 2)
    assert total_via_sum(PartSizes(1, 1, 1)) == 16
    assert total_via_sum(PartSizes(2, 1, 1)) == 75
    assert total_via_sum(PartSizes(2, 2, 2)) == total_rooted_forest_count(PartSizes(2, 2, 2))


def test_total_sum_form_rejects_pure_h_p():
    with pytest.raises(UnsupportedInputError):
        total_via_sum(PartSizes(0, 0, 3))


def test_tree_sum_form_matches_closed_form():
    for m, n, p in itertools.product(range(1, 7), repeat=3):
        parts = PartSizes(m, n, p)
        assert tree_count_via_sum(parts) == tripartite_tree_count(parts)


def test_forest_sum_form_matches_closed_form():
    for m, n, p in itertools.product(range(1, 6), repeat=3):
        parts = PartSizes(m, n, p)
        for r in range(1, p + 1):
            assert forest_count_via_sum(parts, r) == forest_count_r_roots_in_part(parts, r)


def test_total_sum_form_matches_closed_form():
    for m, n, p in itertools.product(range(1, 6), repeat=3):
        parts = PartSizes(m, n, p)
        assert total_via_sum(parts) == total_rooted_forest_count(parts)


def test_sum_forms_with_an_empty_side():
    for m in range(1, 5):
        for p in range(1, 5):
            parts = PartSizes(m, 0, p)
            assert tree_count_via_sum(parts) == tripartite_tree_count(parts)
            assert total_via_sum(parts) == total_rooted_forest_count(parts)


def test_formulas_are_symmetric():
    for sizes in itertools.product(range(0, 5), repeat=3):
        if sum(sizes) == 0:
            continue
        trees = tripartite_tree_count(PartSizes(*sizes))
        total = total_rooted_forest_count(PartSizes(*sizes))
        for perm in itertools.permutations(sizes):
            assert tripartite_tree_count(PartSizes(*perm)) == trees
            assert total_rooted_forest_count(PartSizes(*perm)) == total


def test_boundary_values():
    for m in range(1, 9):
        for n in range(1, 9):
            assert tripartite_tree_count(PartSizes(m, n, 0)) == m ** (n - 1) * n ** (m - 1)
    assert tripartite_tree_count(PartSizes(1, 0, 0)) == 1
    assert total_rooted_forest_count(PartSizes(1, 1, 0)) == 3


def test_single_root_forests_are_rooted_trees():
    for m, n, p in itertools.product(range(0, 5), range(0, 5), range(1, 5)):
        parts = PartSizes(m, n, p)
        assert forest_count_r_roots_in_part(parts, 1) == p * tripartite_tree_count(parts)


def test_collapse_identity_examples():
    assert collapse_identity_check(1, 2, 1) == (6, 6)
    for p in range(6):
        for r in range(p + 1):
            assert collapse_identity_check(0, p, r) == (r + 1, r + 1)
    lhs, rhs = collapse_identity_check(3, 5, 2)
    assert lhs == rhs == 3 * 6**3


def test_collapse_identity_holds():
    for s in range(9):
        for p in range(9):
            for r in range(p + 1):
                lhs, rhs = collapse_identity_check(s, p, r)
                assert lhs == rhs


def test_root_closing_collapse_needs_p_minus_r():
    for s in range(7):
        for p in range(1, 7):
            for r in range(1, p + 1):
                lhs, rhs = root_closing_collapse_check(s, p, r)
                assert lhs == rhs
            # with one designated root both readings agree
            assert root_closing_collapse_check(s, p, 1, printed_reading=True) == root_closing_collapse_check(s, p, 1)
    assert root_closing_collapse_check(1, 3, 2, printed_reading=True) == (8, 6)


def test_formula_request_bounds():
    with pytest.raises(InvalidInputError):
        FormulaRequest(parts=PartSizes(1, 1, 2), r=3)
    with pytest.raises(InvalidInputError):
        FormulaRequest(parts=PartSizes(1, 1, 2), l=2)


def test_dispatch_matches_direct_calls():
    parts = PartSizes(2, 1, 3)
    request = FormulaRequest(parts=parts, r=2)
    assert evaluate(request, "trees") == tripartite_tree_count(parts)
    assert evaluate(request, "rooted-trees") == rooted_tree_count_root_in_part(parts)
    assert evaluate(request, "forests-r") == forest_count_r_roots_in_part(parts, 2)
    assert evaluate(request, "total-forests") == total_rooted_forest_count(parts)
    for quantity in ("trees", "rooted-trees", "forests-r", "total-forests"):
        assert evaluate_sum_form(request, quantity) == evaluate(request, quantity)
    with pytest.raises(InvalidInputError):
        evaluate(request, "cycles")
    with pytest.raises(InvalidInputError):
        evaluate(FormulaRequest(parts=parts), "forests-r")

"""Integer sequences and growth-rate diagnostics."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oligoprofile.errors import DomainError
from oligoprofile.growth import (
    GOLDEN_RATIO,
    GrowthReport,
    constants_table,
    fibonacci,
    growth_estimate,
    lower_bound_check,
    ratio_table,
    tree_count,
)

from oracles import brute_tree_count


def test_tree_count_first_values():
    assert [tree_count(n) for n in range(1, 13)] == [
        1, 1, 1, 2, 3, 6, 11, 23, 46, 98, 207, 451,
    ]


@pytest.mark.parametrize("n", range(1, 13))
def test_tree_count_matches_shape_enumeration(n):
    assert tree_count(n) == brute_tree_count(n)


def test_tree_count_large_value_pinned():
    assert tree_count(20) == 293547


def test_tree_count_domain():
    with pytest.raises(DomainError):
        tree_count(0)


def test_fibonacci_values_and_domain():
    assert [fibonacci(n) for n in range(1, 11)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    with pytest.raises(DomainError):
        fibonacci(0)


def test_growth_estimate_on_powers_of_two():
    report = growth_estimate([2 ** n for n in range(1, 11)])
    assert report.monotone
    assert report.limit_estimate == pytest.approx(2.0)
    assert all(r == pytest.approx(2.0) for r in report.ratios)
    assert report.nth_roots[0] == pytest.approx(2.0)
    assert report.nth_roots[-1] == pytest.approx(2.0)


def test_growth_estimate_flags_non_monotone():
    assert not growth_estimate([3, 1, 4]).monotone


def test_growth_estimate_input_validation():
    with pytest.raises(DomainError):
        growth_estimate([1, 2])
    with pytest.raises(DomainError):
        growth_estimate([1, 0, 2])


def test_fibonacci_ratio_approaches_golden_ratio():
    report = growth_estimate([fibonacci(n) for n in range(1, 26)])
    assert report.limit_estimate == pytest.approx(GOLDEN_RATIO, abs=1e-4)


def test_tree_ratio_approaches_named_constant():
    report = growth_estimate([tree_count(n) for n in range(1, 41)])
    assert report.limit_estimate == pytest.approx(2.483, abs=0.05)


def test_growth_report_json_shape():
    report = growth_estimate([1, 2, 4])
    data = report.to_json_dict()
    assert data["values"] == ["1", "2", "4"]
    assert data["limit_estimate"] == report.limit_estimate
    assert isinstance(report, GrowthReport)


def test_lower_bound_check_separates_bases():
    fib = [fibonacci(n) for n in range(1, 301)]
    assert lower_bound_check(fib, 1.6, 0)
    assert not lower_bound_check(fib, 1.7, 0)


def test_lower_bound_check_polynomial_degree():
    squares = [n * n for n in range(1, 61)]
    assert lower_bound_check(squares, 1.0, 2)
    assert not lower_bound_check(squares, 2.0, 2)


def test_lower_bound_check_validation():
    with pytest.raises(DomainError):
        lower_bound_check([1, -1], 1.5, 0)
    with pytest.raises(DomainError):
        lower_bound_check([1, 2], 0.0, 0)


@given(st.floats(min_value=1.01, max_value=1.5), st.integers(min_value=0, max_value=2))
def test_lower_bound_check_accepts_own_powers(c, degree):
    values = [max(1, int(c ** n)) for n in range(1, 40)]
    assert lower_bound_check(values, c, degree)


def test_constants_table_entries():
    table = constants_table()
    by_key = {c.key: c for c in table}
    assert by_key["primitive_base"].value == pytest.approx(2 ** 0.2)
    assert by_key["golden_ratio"].value == pytest.approx(GOLDEN_RATIO)
    assert by_key["tree_growth"].value == pytest.approx(2.483)
    assert by_key["tree_sqrt_base"].value == pytest.approx(1.576)
    assert by_key["local_order_ceiling"].value == 2.0
    assert all(c.note for c in table)


def test_ratio_table_indexing():
    assert ratio_table([1, 2, 6]) == [(2, 2.0), (3, 3.0)]

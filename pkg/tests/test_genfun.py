"""Generating-function route: truncated series arithmetic and the coefficient oracles."""

from itertools import product

import pytest

from pseudomagic.counting import count_contingency, count_pseudomagic
from pseudomagic.errors import BudgetError
from pseudomagic.genfun import (
    TruncatedMultiSeries,
    contour_coefficient,
    expansion_count,
    master_series,
)


class TestSeriesArithmetic:
    def test_one(self):
        s = TruncatedMultiSeries.one(2, 3)
        assert s.coefficient((0, 0)) == 1
        assert s.coefficient((1, 0)) == 0

    def test_single_geometric(self):
        # 1/(1-z) up to cap: all coefficients 1
        s = TruncatedMultiSeries.one(1, 5).times_geometric((0,))
        assert [s.coefficient((i,)) for i in range(6)] == [1] * 6

    def test_diagonal_geometric(self):
        # 1/(1-wz): nonzero only on the diagonal
        s = TruncatedMultiSeries.one(2, 4).times_geometric((0, 1))
        assert s.coefficient((3, 3)) == 1
        assert s.coefficient((2, 3)) == 0

    def test_product_of_two_geometrics(self):
        # 1/(1-z)^2: coefficient of z^i is i+1
        g = TruncatedMultiSeries.one(1, 6).times_geometric((0,))
        s = g.multiply(g)
        assert [s.coefficient((i,)) for i in range(7)] == list(range(1, 8))

    def test_reciprocal_inverts(self):
        s = master_series(2, 3)
        inv = s.reciprocal()
        back = s.multiply(inv)
        assert back.coefficient((0, 0, 0, 0)) == 1
        for idx in product(range(4), repeat=4):
            if any(idx):
                assert back.coefficient(idx) == 0

    def test_reciprocal_requires_unit_constant(self):
        s = TruncatedMultiSeries(1, 2, {(1,): 1})
        with pytest.raises(ValueError):
            s.reciprocal()


class TestContourOracle:
    @pytest.mark.parametrize("l", range(5))
    def test_matches_dp_k2(self, l):
        assert contour_coefficient(2, l) == count_pseudomagic(2, l)

    @pytest.mark.parametrize("l", range(3))
    def test_matches_dp_k3(self, l):
        assert contour_coefficient(3, l) == count_pseudomagic(3, l)

    def test_matches_dp_k1(self):
        assert [contour_coefficient(1, l) for l in range(6)] == [l + 1 for l in range(6)]

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            contour_coefficient(3, 6, term_budget=100)


class TestExpansionOracle:
    def test_anchor(self):
        assert expansion_count((2, 1, 1), (3, 1)) == 3
        assert expansion_count((2, 2, 1), (3, 1, 1)) == 8

    def test_weight_mismatch(self):
        assert expansion_count((1,), (2,)) == 0

    def test_empty(self):
        assert expansion_count((), ()) == 1

    def test_grid_against_dp(self):
        parts = [(), (1,), (2,), (1, 1), (2, 1), (2, 2), (3,), (3, 1)]
        for mu in parts:
            for nu in parts:
                assert expansion_count(mu, nu) == count_contingency(mu, nu)

    def test_cap_too_small_rejected(self):
        with pytest.raises(ValueError):
            expansion_count((3, 1), (2, 2), cap=2)

    def test_explicit_cap_matches_default(self):
        assert expansion_count((2, 1), (2, 1), cap=4) == expansion_count((2, 1), (2, 1))

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            expansion_count((3, 3, 3), (3, 3, 3), term_budget=50)

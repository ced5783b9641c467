from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import PEAK, QUAD, TRI6, UNIT3, inst, instances
from imprecise_triangles.minmax import minmax_fixed_extremes
from imprecise_triangles.oracles import (
    BudgetExceeded,
    brute_at_most_k,
    brute_maxmax,
    brute_minmax,
    brute_minmax_cells,
    brute_minmin,
    lipschitz_slack,
)


def test_triangle_oracles_on_examples():
    assert brute_maxmax(UNIT3).area == 1
    assert brute_maxmax(PEAK).area == 4
    assert brute_maxmax(TRI6).area == 6
    assert brute_minmin(UNIT3).area == 0
    assert brute_minmin(TRI6).area == 6
    assert brute_minmin(PEAK).area == 2


def test_polygon_oracle_examples():
    assert brute_at_most_k(inst((0, 0, 0), (2, 1, 1), (3, 2, 2), (1, 1, 1)), 4).area == 1
    assert brute_at_most_k(inst((0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1)), 4).area == 2


def test_grid_oracle_is_exact_without_free_extremes():
    for r in (1, 4, 32):
        value2, _, slack2 = brute_minmax(QUAD, r=r)
        assert value2 == 2 * minmax_fixed_extremes(QUAD).value and slack2 == 0


def test_grid_oracle_on_a_stabbed_instance():
    assert brute_minmax(UNIT3, r=8)[0] == 0


def test_lipschitz_slack_formula():
    # width 4, one free extreme of length 2: width * length / (2 r)
    assert lipschitz_slack(inst((0, 0, 2), (1, 5, 5), (4, 0, 0)), 8) == F(1, 2)


def test_budgets():
    with pytest.raises(BudgetExceeded):
        brute_minmax(UNIT3, r=1000, budget=100)
    with pytest.raises(BudgetExceeded):
        brute_at_most_k(inst(*((x, 0, 1) for x in range(9))), 4)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=7), st.sampled_from([2, 4, 8]))
def test_vectorised_grid_matches_cell_by_cell(case, r):
    fast, slow = brute_minmax(case, r=r), brute_minmax_cells(case, r=r)
    assert fast[0] == slow[0] and fast[2] == slow[2]

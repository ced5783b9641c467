import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import TRI6, inst
from imprecise_triangles.geometry import cross
from imprecise_triangles.maxmin_sat import (
    Cnf,
    CnfError,
    Placement,
    assignment_to_placement,
    audit,
    maxmin_heuristic,
    placement_min_area,
    reduce_sat,
    reduction_from_json,
    reduction_to_json,
)
from imprecise_triangles.oracles import BudgetExceeded

# (not x or y or not z)
ONE_CLAUSE = Cnf(3, ((-1, 2, -3),))
SHARED = Cnf(3, ((1, 2, 3), (-1, 2, -3)))


def _between(p, a, b):
    return cross(a, b, p) == 0 and min(a.x, b.x) < p.x < max(a.x, b.x)


# ---------------------------------------------------------------- formulas


def test_dimacs_round_trip():
    text = "c comment\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n"
    cnf = Cnf.from_dimacs(text)
    assert cnf.clauses == ((1, -2, 3), (-1, 2, -3))
    assert Cnf.from_dimacs(cnf.to_dimacs()) == cnf


@pytest.mark.parametrize(
    "text",
    ["1 2 3 0\n", "p cnf 3 2\n1 2 3 0\n", "p cnf 3 1\n1 2 0\n", "p cnf 2 1\n1 2 3 0\n", "p cnf 3 1\n1 1 2 0\n"],
)
def test_dimacs_errors(text):
    with pytest.raises(CnfError):
        Cnf.from_dimacs(text)


def test_satisfied_by():
    assert not ONE_CLAUSE.satisfied_by((True, False, True))
    assert ONE_CLAUSE.satisfied_by((False, False, True))
    assert sum(map(ONE_CLAUSE.satisfied_by, ONE_CLAUSE.assignments())) == 7


# ---------------------------------------------------------------- construction


def test_single_clause_gadget():
    red = reduce_sat(ONE_CLAUSE)
    assert len(red.instance) == 9 and len(red.fixed_ids) == 6
    assert cross(red.true_end(1, 0), red.false_end(2, 0), red.true_end(3, 0)) == 0
    for sid, (f1, f2) in red.bisector.items():
        assert {f1, f2} <= red.fixed_ids and sid not in red.fixed_ids
    assert audit(red).clean


def test_shared_variable_connectors():
    red = reduce_sat(SHARED)
    fixed = [red.instance.segment(i).lower for i in red.fixed_ids]
    for var in (1, 2, 3):
        for a, b in ((red.true_end(var, 0), red.false_end(var, 1)), (red.false_end(var, 0), red.true_end(var, 1))):
            assert any(_between(p, a, b) for p in fixed)


def test_falsifying_assignment_has_a_collinear_triple():
    red = reduce_sat(ONE_CLAUSE)
    sel = placement_min_area(assignment_to_placement(red, (True, False, True)))
    assert sel.area2 == 0
    assert {p.seg for p in sel.vertices} == {red.literal_map[(v, 0)] for v in (1, 2, 3)}


def test_all_true_on_positive_clause():
    red = reduce_sat(Cnf(3, ((1, 2, 3),)))
    assert placement_min_area(assignment_to_placement(red, (True, True, True))).area2 == red.alpha2


@pytest.mark.parametrize("cnf", [ONE_CLAUSE, SHARED, Cnf(4, ((1, -2, 3), (-1, 2, 4), (2, -3, -4)))])
def test_placements_separate_satisfying_assignments(cnf):
    red = reduce_sat(cnf)
    assert audit(red).clean
    for assign in cnf.assignments():
        got = placement_min_area(assignment_to_placement(red, assign)).area2
        assert got == (red.alpha2 if cnf.satisfied_by(assign) else 0)


def test_mixed_assignment_avoids_connector_zeros():
    red = reduce_sat(SHARED)
    pl = assignment_to_placement(red, (False, True, False))
    assert placement_min_area(pl).area2 == red.alpha2


def test_reduction_is_deterministic_and_serialisable():
    a, b = reduce_sat(SHARED, seed=3), reduce_sat(SHARED, seed=3)
    assert reduction_to_json(a) == reduction_to_json(b)
    back = reduction_from_json(reduction_to_json(a))
    assert back.instance == a.instance and back.alpha2 == a.alpha2
    assert back.literal_map == a.literal_map and back.designed_zero == a.designed_zero


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_random_formulas_reduce_cleanly(seed):
    rng = random.Random(seed)
    nv = rng.randint(3, 4)
    clauses = tuple(
        tuple(v if rng.random() < 0.5 else -v for v in rng.sample(range(1, nv + 1), 3))
        for _ in range(rng.randint(1, 3))
    )
    cnf = Cnf(nv, clauses)
    red = reduce_sat(cnf, seed=seed)
    assert audit(red).clean
    for assign in cnf.assignments():
        got = placement_min_area(assignment_to_placement(red, assign)).area2
        assert (got == red.alpha2) == cnf.satisfied_by(assign)
        assert got in (0, red.alpha2)


# ---------------------------------------------------------------- placements and search


def test_min_area_of_three_points():
    pl = Placement(tuple(s.lower for s in TRI6))
    assert placement_min_area(pl).area == 6


def test_heuristic_on_fixed_points_is_exact():
    case = inst((0, 0, 0), (1, 5, 5), (3, 1, 1), (4, 4, 4))
    pl, value2 = maxmin_heuristic(case, r=4)
    brute = min(abs(cross(a, b, c)) for a, b, c in itertools.combinations(case.endpoints(), 3))
    assert value2 == brute == placement_min_area(pl).area2


def test_interior_optimum_is_approached_on_finer_grids():
    # one free segment among three fixed points: the best height is interior
    case = inst((2, -4, 3), (3, 3, 3), (5, 1, 1), (6, 4, 4))
    values = [maxmin_heuristic(case, r=r, exhaustive=True)[1] for r in (2, 4, 8, 16, 32)]
    assert values == sorted(values)
    at_ends = max(
        placement_min_area(Placement((e,) + tuple(s.lower for s in case.segments[1:]))).area2
        for e in case.segments[0].endpoints()
    )
    assert values[-1] == F(127, 16) > at_ends


def test_heuristic_seeded_with_a_satisfying_placement():
    red = reduce_sat(SHARED)
    start = assignment_to_placement(red, (True, True, True))
    pl, value2 = maxmin_heuristic(red.instance, r=2, exhaustive=False, restarts=0, start=start)
    assert value2 >= red.alpha2
    assert placement_min_area(pl).area2 == value2


def test_forced_exhaustive_search_respects_the_budget():
    case = inst(*((x, 0, 1) for x in range(12)))
    with pytest.raises(BudgetExceeded):
        maxmin_heuristic(case, r=8, budget=1000, exhaustive=True)

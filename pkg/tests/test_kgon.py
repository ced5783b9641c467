import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import PEAK, QUAD, UNIT3, inst, instances
from imprecise_triangles.kgon import NoConvexPolygon, maxmax_at_most_k, minmax_k_fixed_extremes
from imprecise_triangles.maxmax import maxmax
from imprecise_triangles.oracles import brute_at_most_k, brute_body_at_most_k

# unit-area parallelogram spanned by (2, 1) and (1, 1), one fixed point per corner
PARALLELOGRAM = inst((0, 0, 0), (2, 1, 1), (3, 2, 2), (1, 1, 1))
UNIT4 = inst((0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1))


def test_parallelogram():
    assert maxmax_at_most_k(PARALLELOGRAM, 4).area == 1
    assert maxmax_at_most_k(PARALLELOGRAM, 3).area2 == 1


def test_four_unit_segments():
    poly = maxmax_at_most_k(UNIT4, 4)
    assert poly.area == 2 and len(poly.vertices) == 4
    assert poly.is_true() and poly.is_strictly_convex()


def test_k_larger_than_n_is_clamped():
    assert maxmax_at_most_k(UNIT3, 9).area == maxmax(UNIT3).area == 1


def test_invalid_k_and_collinear_input():
    with pytest.raises(ValueError):
        maxmax_at_most_k(UNIT3, 2)
    with pytest.raises(NoConvexPolygon):
        maxmax_at_most_k(inst((0, 0, 0), (1, 1, 1), (2, 2, 2)), 3)


def test_body_polygons():
    assert minmax_k_fixed_extremes(PEAK, 5)[0] == 2
    assert minmax_k_fixed_extremes(QUAD, 3)[0] == 3
    value, poly = minmax_k_fixed_extremes(QUAD, 4)
    assert value == 4 and len(poly.vertices) == 4


def test_body_polygon_is_zero_when_stabbed():
    assert minmax_k_fixed_extremes(inst((0, 0, 0), (1, 0, 1), (2, 0, 0)), 4) == (0, None)


@settings(max_examples=200, deadline=None)
@given(instances(max_n=7), st.integers(3, 5))
def test_dp_matches_enumeration(case, k):
    try:
        ref = brute_at_most_k(case, k)
    except ValueError:
        with pytest.raises(NoConvexPolygon):
            maxmax_at_most_k(case, k)
        return
    poly = maxmax_at_most_k(case, k)
    assert poly.area2 == ref.area2
    assert poly.is_true() and poly.is_strictly_convex() and 3 <= len(poly.vertices) <= k
    ends = set(case.endpoints())
    assert all(v in ends for v in poly.vertices)


@settings(max_examples=150)
@given(instances(max_n=9))
def test_triangles_agree_with_maxmax(case):
    best = maxmax(case).area2
    if best == 0:
        # every true triangle is flat, so no strictly convex polygon exists
        with pytest.raises(NoConvexPolygon):
            maxmax_at_most_k(case, 3)
    else:
        assert maxmax_at_most_k(case, 3).area2 == best


@settings(max_examples=100, deadline=None)
@given(instances(max_n=8))
def test_area_grows_with_k(case):
    if maxmax(case).area2 == 0:
        return
    areas = [maxmax_at_most_k(case, k).area2 for k in range(3, 7)]
    assert areas == sorted(areas)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=9, point_extremes=True), st.integers(3, 6))
def test_body_polygon_matches_enumeration(case, k):
    value, poly = minmax_k_fixed_extremes(case, k)
    assert 2 * value == brute_body_at_most_k(case, k)
    if poly is not None:
        assert poly.is_strictly_convex() and len(poly.vertices) <= k

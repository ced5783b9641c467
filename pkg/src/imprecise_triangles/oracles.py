"""Slow, exhaustive reference solvers.

These only use the primitives in :mod:`imprecise_triangles.geometry` and are
meant to be obviously correct rather than fast.  Each raises
:class:`BudgetExceeded` instead of silently running for hours.
"""
from __future__ import annotations

import functools
import itertools
import math
from fractions import Fraction
from typing import Optional

import numpy as np

from .geometry import (
    Instance,
    LabeledPoint,
    Point,
    PolySelection,
    TooFewSegments,
    TriangleSelection,
    area2,
    convex_body,
    cross,
    selection_key,
)


class BudgetExceeded(Exception):
    pass


MAX_TRIANGLE_N = 60
MAX_POLYGON_N = 8


def _true_endpoint_triples(inst: Instance):
    segs = inst.segments
    for s1, s2, s3 in itertools.combinations(segs, 3):
        for a in s1.endpoints():
            for b in s2.endpoints():
                for c in s3.endpoints():
                    yield a, b, c


def _check_triangle_budget(inst: Instance):
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    if len(inst) > MAX_TRIANGLE_N:
        raise BudgetExceeded(f"brute force limited to n <= {MAX_TRIANGLE_N}")


def brute_maxmax(inst: Instance) -> TriangleSelection:
    _check_triangle_budget(inst)
    best = None
    for a, b, c in _true_endpoint_triples(inst):
        v = area2(a.point, b.point, c.point)
        key = (-v, selection_key((a, b, c)))
        if best is None or key < best[0]:
            best = (key, (a, b, c))
    return TriangleSelection.of(*best[1])


def _line_hits(a: LabeledPoint, b: LabeledPoint, seg) -> Optional[LabeledPoint]:
    # line through a and b evaluated at seg.x, compared exactly
    y = a.y + Fraction(b.y - a.y) * (seg.x - a.x) / (b.x - a.x)
    if seg.y_lo <= y <= seg.y_hi:
        return LabeledPoint(Point(seg.x, y), seg.id)
    return None


def brute_collinear(inst: Instance):
    """Three points on three distinct segments on a common line, if any."""
    segs = inst.segments
    for s1, s2 in itertools.combinations(segs, 2):
        for a in s1.endpoints():
            for b in s2.endpoints():
                for s3 in segs:
                    if s3.id in (s1.id, s2.id):
                        continue
                    c = _line_hits(a, b, s3)
                    if c is not None:
                        return a, b, c
    return None


def brute_minmin(inst: Instance) -> TriangleSelection:
    _check_triangle_budget(inst)
    hit = brute_collinear(inst)
    if hit is not None:
        return TriangleSelection(*hit, Fraction(0))
    best = None
    for a, b, c in _true_endpoint_triples(inst):
        v = area2(a.point, b.point, c.point)
        key = (v, selection_key((a, b, c)))
        if best is None or key < best[0]:
            best = (key, (a, b, c))
    return TriangleSelection.of(*best[1])


def max_triangle_of_points(points) -> tuple[Fraction, tuple]:
    """Largest triangle over a finite point set, by enumeration."""
    best = (Fraction(-1), ())
    for a, b, c in itertools.combinations(points, 3):
        v = area2(a.point, b.point, c.point)
        if v > best[0]:
            best = (Fraction(v), (a, b, c))
    if best[0] < 0:
        return Fraction(0), ()
    return best


def fixed_extremes_value(inst: Instance) -> Fraction:
    """Twice the smallest achievable largest-triangle area when both extreme
    segments are points: the largest triangle spanned by body vertices."""
    body = convex_body(inst)
    if body.empty:
        return Fraction(0)
    return max_triangle_of_points(body.body.vertices)[0]


def brute_minmax(inst: Instance, r: int = 16, budget: int = 200_000):
    """Exhaustive grid search over heights on the two extreme segments.

    Pinning both extremes reduces the problem to the fixed-extremes case.
    There ``top - bottom`` is concave and vanishes at both ends, so the body
    is exactly the region between the chains and its vertices are input
    points; its largest triangle is the largest triangle over the pinned
    points plus every endpoint lying between the chains.  Membership and the
    triple maximum are evaluated for all grid cells at once on exact
    integers.  Returns ``(value2, (yL, yR), slack2)``: the best twice-area on
    the grid, its parameters, and an upper bound on how far the exact
    optimum can lie below.
    """
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    left, right = inst.leftmost, inst.rightmost
    nl = 1 if left.is_point else r + 1
    nr = 1 if right.is_point else r + 1
    if nl * nr > budget:
        raise BudgetExceeded("grid too fine")

    def grid(seg, count):
        if count == 1:
            return [Fraction(seg.y_lo)]
        return [seg.y_lo + seg.length * Fraction(i, count - 1) for i in range(count)]

    gl, gr = grid(left, nl), grid(right, nr)
    scale = 1
    for v in itertools.chain(gl, gr, *((s.x, s.y_lo, s.y_hi) for s in inst.segments)):
        scale = math.lcm(scale, Fraction(v).denominator)
    bound = max(abs(v) for s in inst.segments for v in (s.x, s.y_lo, s.y_hi)) * scale
    # twice-areas stay below 8 * bound**2; fall back to Python ints if int64 could overflow
    dtype = np.int64 if 8 * bound * bound < 2**62 else object
    yl = np.array([int(v * scale) for v in gl], dtype=dtype).reshape(-1, 1)
    yr = np.array([int(v * scale) for v in gr], dtype=dtype).reshape(1, -1)
    shape = (nl, nr)
    ones = np.ones(shape, dtype=bool)

    # (x, y) with y either an int or an array over the grid
    pinned = [(int(left.x * scale), yl), (int(right.x * scale), yr)]
    inner = inst.segments[1:-1]
    lows = [(int(s.x * scale), int(s.y_lo * scale)) for s in inner]
    ups = [(int(s.x * scale), int(s.y_hi * scale)) for s in inner]

    def between(p, pool, above: bool):
        """Cells where ``p`` lies on the correct side of the hull of ``pool``."""
        px, py = p
        hit = np.zeros(shape, dtype=bool)
        for qx, qy in pool:
            if qx == px:
                hit |= ones & ((py >= qy) if above else (py <= qy))
        for (ax, ay), (bx, by) in itertools.combinations(pool, 2):
            if not (ax < px < bx or bx < px < ax):
                continue
            lhs = (py - ay) * (bx - ax)
            rhs = (by - ay) * (px - ax)
            if bx < ax:
                lhs, rhs = -lhs, -rhs
            hit |= ones & ((lhs >= rhs) if above else (lhs <= rhs))
        return hit

    cands = [(p, ones) for p in pinned]
    for s, lo, hi in zip(inner, lows, ups):
        if s.is_point:
            cands.append((lo, ones))
            continue
        # a lower endpoint is always under the top chain; check the bottom one
        cands.append((lo, between(lo, pinned + ups, above=True)))
        cands.append((hi, between(hi, pinned + lows, above=False)))

    best = np.zeros(shape, dtype=dtype)
    for (a, ma), (b, mb), (c, mc) in itertools.combinations(cands, 3):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        v = abs(v) * (ma & mb & mc)
        best = np.maximum(best, v)
    i, j = np.unravel_index(int(np.argmin(best)), shape)
    value2 = Fraction(int(best[i, j]), scale * scale)
    return value2, (gl[i], gr[j]), lipschitz_slack(inst, r)


def brute_minmax_cells(inst: Instance, r: int = 16):
    """Same grid as :func:`brute_minmax`, evaluated cell by cell through the
    convex body; slow, used to cross-check the vectorised search."""
    left, right = inst.leftmost, inst.rightmost
    nl = 1 if left.is_point else r + 1
    nr = 1 if right.is_point else r + 1

    def grid(seg, count):
        if count == 1:
            return [Fraction(seg.y_lo)]
        return [seg.y_lo + seg.length * Fraction(i, count - 1) for i in range(count)]

    best = None
    for yl in grid(left, nl):
        for yr in grid(right, nr):
            pinned = inst.replace(left.id, yl, yl).replace(right.id, yr, yr)
            v = fixed_extremes_value(pinned)
            if best is None or v < best[0]:
                best = (v, (yl, yr))
    return best[0], best[1], lipschitz_slack(inst, r)


def lipschitz_slack(inst: Instance, r: int) -> Fraction:
    """Bound on the twice-area change when an extreme moves by one grid step.

    Moving a vertex vertically by ``d`` changes a triangle's twice-area by at
    most ``d`` times the horizontal extent of the opposite side, which is at
    most the instance width; the optimum can sit half a step away in each
    free coordinate.
    """
    width = inst.rightmost.x - inst.leftmost.x
    slack = Fraction(0)
    for seg in (inst.leftmost, inst.rightmost):
        if not seg.is_point:
            slack += Fraction(width * seg.length, 2 * r)
    return slack


def _in_convex_position(pts) -> bool:
    """Strict convex position: no three collinear, none inside another's triangle."""
    for a, b, c in itertools.combinations(pts, 3):
        if cross(a.point, b.point, c.point) == 0:
            return False
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        for a, b, c in itertools.combinations(others, 3):
            o = (
                cross(a.point, b.point, p.point),
                cross(b.point, c.point, p.point),
                cross(c.point, a.point, p.point),
            )
            if all(v > 0 for v in o) or all(v < 0 for v in o):
                return False
    return True


def _ccw_order(pts):
    cx = sum(Fraction(p.x) for p in pts) / len(pts)
    cy = sum(Fraction(p.y) for p in pts) / len(pts)
    c = Point(cx, cy)

    def half(p):
        dx, dy = p.x - c.x, p.y - c.y
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def compare(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        v = cross(c, p.point, q.point)
        return -1 if v > 0 else (1 if v < 0 else 0)

    return sorted(pts, key=functools.cmp_to_key(compare))


def _polygon_area2(pts) -> Fraction:
    total = 0
    for i in range(len(pts)):
        a, b = pts[i], pts[(i + 1) % len(pts)]
        total += a.x * b.y - a.y * b.x
    return Fraction(total)


def brute_at_most_k(inst: Instance, k: int) -> PolySelection:
    """Largest true strictly convex polygon on 3..k endpoints, by enumeration."""
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    if len(inst) > MAX_POLYGON_N:
        raise BudgetExceeded(f"polygon brute force limited to n <= {MAX_POLYGON_N}")
    best = None
    segs = inst.segments
    for m in range(3, min(k, len(segs)) + 1):
        for chosen in itertools.combinations(segs, m):
            for pts in itertools.product(*(s.endpoints() for s in chosen)):
                if not _in_convex_position(pts):
                    continue
                ring = _ccw_order(list(pts))
                v = _polygon_area2(ring)
                key = (-v, selection_key(ring))
                if best is None or key < best[0]:
                    best = (key, tuple(ring), v)
    if best is None:
        raise ValueError("no true convex polygon exists")
    return PolySelection(best[1], best[2])


def brute_body_at_most_k(inst: Instance, k: int) -> Fraction:
    """Twice the largest area of a polygon on at most ``k`` body vertices.

    Any subsequence of a convex ring is convex, so enumerating vertex subsets
    in ring order covers every candidate.
    """
    body = convex_body(inst)
    if body.empty:
        return Fraction(0)
    ring = body.body.vertices
    if len(ring) > 3 * MAX_POLYGON_N:
        raise BudgetExceeded(f"body enumeration limited to {3 * MAX_POLYGON_N} vertices")
    best = Fraction(0)
    for m in range(3, min(k, len(ring)) + 1):
        for chosen in itertools.combinations(ring, m):
            best = max(best, _polygon_area2(chosen))
    return best

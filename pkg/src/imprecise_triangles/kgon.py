"""Largest true convex polygons with at most ``k`` vertices.

A strictly convex polygon splits at its leftmost vertex ``A`` and rightmost
vertex ``B`` into an upper and a lower x-monotone chain.  The dynamic program
grows both chains left to right, always extending the chain whose current
end lies further left.  That keeps every vertex x-coordinate distinct, and
since distinct segments have distinct x-coordinates, a polygon built this
way can never use both endpoints of one segment: it is automatically true.
Twice the area is the signed trapezoid sum under the upper chain minus the
one under the lower chain.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (
    GeometryError,
    Instance,
    LabeledPoint,
    PolySelection,
    PreconditionViolated,
    TooFewSegments,
    convex_body,
    cross,
    integer_frame,
    unscale_point,
)


class NoConvexPolygon(GeometryError):
    pass


def _trap(a, b):
    return (b.x - a.x) * (a.y + b.y)


def _largest_polygon(points: Sequence[LabeledPoint], k: int) -> Optional[tuple]:
    """Best ``(area2, ccw vertices)`` over strictly convex polygons with 3..k
    vertices drawn from ``points`` with pairwise distinct x, or ``None``."""
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    n = len(pts)
    if n < 3 or k < 3:
        return None

    def better(c1, c2):
        if c2 is None:
            return c1
        if c1 is None:
            return c2
        if c1[0] != c2[0]:
            return c1 if c1[0] > c2[0] else c2
        # ties: lexicographically smallest vertex index sequence (points are x-sorted)
        return c1 if sorted(c1[1] + c1[2]) <= sorted(c2[1] + c2[2]) else c2

    @functools.lru_cache(maxsize=None)
    def grow(up: int, u: int, dp: int, d: int, budget: int):
        """Best completion ``(area2, upper tail, lower tail)`` from chain ends
        ``u`` (upper, preceded by ``up``) and ``d`` (lower, preceded by ``dp``)."""
        pu, pd = pts[u], pts[d]
        lag_upper = pu.x < pd.x
        best = None
        # close: the lagging chain jumps to the leading end
        if lag_upper:
            if cross(pts[up], pu, pd) < 0:
                best = (_trap(pu, pd), (d,), ())
        else:
            if cross(pts[dp], pd, pu) > 0:
                best = (-_trap(pd, pu), (), (u,))
        if budget == 0:
            return best
        lead_x = pd.x if lag_upper else pu.x
        start = u if lag_upper else d
        for w in range(start + 1, n):
            pw = pts[w]
            if pw.x == lead_x or pw.x == pts[start].x:
                continue
            if lag_upper:
                if cross(pts[up], pu, pw) >= 0:
                    continue
                sub = grow(u, w, dp, d, budget - 1)
                if sub is not None:
                    cand = (sub[0] + _trap(pu, pw), (w,) + sub[1], sub[2])
                    best = better(cand, best)
            else:
                if cross(pts[dp], pd, pw) <= 0:
                    continue
                sub = grow(up, u, d, w, budget - 1)
                if sub is not None:
                    cand = (sub[0] - _trap(pd, pw), sub[1], (w,) + sub[2])
                    best = better(cand, best)
        return best

    best = None
    for a in range(n):
        pa = pts[a]
        for u1 in range(a + 1, n):
            if pts[u1].x == pa.x:
                continue
            for d1 in range(a + 1, n):
                pd1 = pts[d1]
                if d1 == u1 or pd1.x == pa.x:
                    continue
                # first upper edge strictly steeper than the first lower edge
                if cross(pa, pd1, pts[u1]) <= 0:
                    continue
                if pd1.x == pts[u1].x:
                    continue
                sub = grow(a, u1, a, d1, k - 3)
                if sub is None:
                    continue
                total = sub[0] + _trap(pa, pts[u1]) - _trap(pa, pd1)
                best = better((total, (a, u1) + sub[1], (d1,) + sub[2]), best)
    grow.cache_clear()
    if best is None:
        return None
    area2, upper, lower = best
    # ccw: A, lower chain left to right, then upper chain right to left
    upper = [pts[i] for i in upper]
    lower = [pts[i] for i in lower]
    ring = [upper[0]] + lower
    tail = upper[1:]
    # both chains end at the rightmost vertex; keep it once
    ring += list(reversed(tail[:-1]))
    return Fraction(area2), tuple(ring)


def maxmax_at_most_k(inst: Instance, k: int) -> PolySelection:
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    if k < 3:
        raise ValueError("k must be at least 3")
    work, f = integer_frame(inst)
    found = _largest_polygon(work.endpoints(), min(k, len(inst)))
    if found is None:
        raise NoConvexPolygon("no true convex polygon exists")
    area2, ring = found
    return PolySelection(tuple(unscale_point(p, f) for p in ring), area2 / (f * f))


def minmax_k_fixed_extremes(inst: Instance, k: int) -> tuple[Fraction, Optional[PolySelection]]:
    """Smallest possible largest at-most-k-gon when both extremes are points:
    the largest at-most-k-gon inscribed in the convex body."""
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    if not (inst.leftmost.is_point and inst.rightmost.is_point):
        raise PreconditionViolated("extreme segments must be single points")
    if k < 3:
        raise ValueError("k must be at least 3")
    work, f = integer_frame(inst)
    body = convex_body(work)
    if body.empty or len(body.body.vertices) < 3:
        return Fraction(0), None
    verts = body.body.vertices
    if len(verts) <= k:
        ring = verts
        area2 = Fraction(body.body.area2())
    else:
        area2, ring = _largest_polygon(verts, k)
    sel = PolySelection(tuple(unscale_point(p, f) for p in ring), area2 / (f * f))
    return sel.area, sel

"""MinMinArea: place one point per segment so the smallest triangle is as
small as possible.

The answer is zero exactly when some line meets three distinct segments.
Otherwise the optimum uses endpoints only, and for a fixed base pair ``p, q``
the best apex is the endpoint whose dual line passes vertically closest to
the dual vertex ``T(p) ∩ T(q)``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Optional

from .geometry import (
    Instance,
    LabeledPoint,
    Point,
    TooFewSegments,
    TriangleSelection,
    dual_line,
    integer_frame,
    selection_key,
    unscale_point,
)


def _stab_third(a: LabeledPoint, b: LabeledPoint, inst: Instance) -> Optional[LabeledPoint]:
    dx = b.x - a.x
    for seg in inst.segments:
        if seg.id in (a.seg, b.seg):
            continue
        y = a.y + Fraction(b.y - a.y) * (seg.x - a.x) / dx
        if seg.y_lo <= y <= seg.y_hi:
            return LabeledPoint(Point(seg.x, y), seg.id)
    return None


def collinear_true_triple(inst: Instance) -> Optional[tuple[LabeledPoint, LabeledPoint, LabeledPoint]]:
    """Three points on three distinct segments lying on one line, if possible.

    A line meeting three segments can always be rotated and translated until
    it passes through two endpoints of distinct segments, so trying every
    such endpoint pair is complete.
    """
    if len(inst) < 3:
        return None
    work, f = integer_frame(inst)
    ends = work.endpoints()
    for a, b in itertools.combinations(ends, 2):
        if a.seg == b.seg:
            continue
        c = _stab_third(a, b, work)
        if c is not None:
            return tuple(unscale_point(p, f) for p in (a, b, c))
    return None


def minmin(inst: Instance) -> TriangleSelection:
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    hit = collinear_true_triple(inst)
    if hit is not None:
        return TriangleSelection(*hit, Fraction(0))
    work, f = integer_frame(inst)
    ends = work.endpoints()
    duals = [dual_line(p) for p in ends]
    best = None
    for i, j in itertools.combinations(range(len(ends)), 2):
        p, q = ends[i], ends[j]
        if p.seg == q.seg:
            continue
        # dual vertex: both dual lines agree at u = slope(pq)
        u = Fraction(q.y - p.y, q.x - p.x)
        v = duals[i](u)
        width = abs(q.x - p.x)
        for k, r in enumerate(ends):
            if r.seg in (p.seg, q.seg):
                continue
            a2 = width * abs(duals[k](u) - v)
            key = (a2, selection_key((p, q, r)))
            if best is None or key < best[0]:
                best = (key, (p, q, r))
    return TriangleSelection.of(*best[1]).scaled(f)

"""MaxMaxArea: place one point per segment so the largest triangle is as big
as possible.

Every vertex of an optimal triangle sits at a segment endpoint, at least two
of them on the outer hull ``C0`` of all endpoints and the third on ``C0`` or
on the second onion layer ``C1``.  The solvers below exploit that through
rotating-pointer scans over convex polygons.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .geometry import (
    ConvexPolygon,
    GeometryError,
    Instance,
    LabeledPoint,
    TooFewSegments,
    TriangleSelection,
    area2,
    cross,
    integer_frame,
    onion_two_layers,
    selection_key,
)


class NoTrueTriangle(GeometryError):
    pass


class _Best:
    """Running maximum with the deterministic tie-break."""

    def __init__(self):
        self.value = -1
        self.tri: Optional[tuple] = None

    def offer(self, a, b, c, v=None):
        if v is None:
            v = area2(a, b, c)
        if v > self.value or (
            v == self.value and selection_key((a, b, c)) < selection_key(self.tri)
        ):
            self.value, self.tri = v, (a, b, c)

    def result(self) -> TriangleSelection:
        return TriangleSelection.of(*self.tri)


def _nearest_allowed(ring, k, lo, hi, banned, step_limit):
    """Closest vertices to ``k`` (one per direction) whose label is not banned,
    staying within the cyclic index window ``(lo, hi)``."""
    m = len(ring)
    found = []
    for d in (1, -1):
        idx = k
        for _ in range(step_limit):
            if ring[idx].seg not in banned:
                found.append(idx)
                break
            idx = (idx + d) % m
            if idx == lo or idx == hi:
                break
    return found


def _chord_scan(ring: Sequence[LabeledPoint], best: _Best, labeled: bool) -> None:
    """For every chord (i, j) find the farthest vertex strictly left of i->j.

    ``ring`` is ccw, so the left side of i->j is the open chain j+1 .. i-1 and
    the height over the chord is unimodal along it; the argmax only moves
    forward as j advances.  With labels, the argmax may be replaced by its
    nearest neighbours carrying a different segment: at most two further
    vertices share a label with i or j, so three steps per direction suffice.
    """
    m = len(ring)
    for i in range(m):
        k = (i + 2) % m
        for s in range(1, m - 1):
            j = (i + s) % m
            if labeled and ring[i].seg == ring[j].seg:
                continue
            if (k - i) % m <= s:
                k = (j + 1) % m
            while (k + 1 - i) % m != 0 and (
                cross(ring[i], ring[j], ring[(k + 1) % m]) >= cross(ring[i], ring[j], ring[k])
            ):
                k = (k + 1) % m
            if not labeled:
                best.offer(ring[i], ring[j], ring[k])
                continue
            banned = {ring[i].seg, ring[j].seg}
            for idx in _nearest_allowed(ring, k, j, i, banned, 4):
                best.offer(ring[i], ring[j], ring[idx])


def _rooted_scan(root: LabeledPoint, ring: Sequence[LabeledPoint], best: _Best) -> None:
    """Largest true triangle with one vertex at ``root`` (inside the ccw
    polygon ``ring``) and the other two on the ring.

    The signed height of ``ring[b]`` over the line root->ring[a] is bitonic in
    ``b``; as ``a`` walks ccw, its maximiser and minimiser walk ccw too, so two
    hill-climbing pointers give O(m) work per root.
    """
    m = len(ring)
    if m < 2:
        return
    h0 = [cross(root, ring[0], q) for q in ring]
    hi, lo = h0.index(max(h0)), h0.index(min(h0))
    for a in range(m):
        pa = ring[a]

        def h(b):
            return cross(root, pa, ring[b])

        for _ in range(m):
            if h((hi + 1) % m) < h(hi):
                break
            hi = (hi + 1) % m
        for _ in range(m):
            if h((lo + 1) % m) > h(lo):
                break
            lo = (lo + 1) % m
        if pa.seg == root.seg:
            continue
        banned = {pa.seg, root.seg}
        for k in (hi, lo):
            for idx in _nearest_allowed(ring, k, None, None, banned, 4):
                best.offer(root, pa, ring[idx])


def largest_inscribed_true_triangle(poly: ConvexPolygon) -> TriangleSelection:
    ring = list(poly.vertices)
    if len({v.seg for v in ring}) < 3:
        raise NoTrueTriangle("fewer than three distinct segments on the polygon")
    best = _Best()
    _chord_scan(ring, best, labeled=True)
    return best.result()


def largest_inscribed_triangle(poly: ConvexPolygon) -> TriangleSelection:
    """Same scan, ignoring labels."""
    ring = list(poly.vertices)
    if len(ring) < 3:
        raise GeometryError("polygon has fewer than three vertices")
    best = _Best()
    _chord_scan(ring, best, labeled=False)
    return best.result()


def _extreme_pair_scan(inst: Instance, best: _Best) -> None:
    """Fix one endpoint on each extreme segment; scan all other endpoints."""
    left, right = inst.leftmost, inst.rightmost
    others = [p for s in inst.segments[1:-1] for p in s.endpoints()]
    for a in left.endpoints():
        for b in right.endpoints():
            for c in others:
                best.offer(a, b, c)


def _uppers_collinear(inst: Instance) -> bool:
    ups = [s.upper for s in inst.segments]
    return all(cross(ups[0], ups[1], u) == 0 for u in ups[2:])


def maxmax_equal_length(inst: Instance) -> TriangleSelection:
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    lengths = {s.length for s in inst.segments}
    if len(lengths) != 1:
        raise GeometryError("segments differ in length")
    work, f = integer_frame(inst)
    best = _Best()
    if _uppers_collinear(work):
        _extreme_pair_scan(work, best)
    else:
        c0, _ = onion_two_layers(work)
        _chord_scan(list(c0.vertices), best, labeled=False)
        if not TriangleSelection.of(*best.tri).is_true:
            raise GeometryError("inscribed maximum is not a true triangle")
    return best.result().scaled(f)


def maxmax(inst: Instance) -> TriangleSelection:
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    work, f = integer_frame(inst)
    c0, c1 = onion_two_layers(work)
    best = _Best()
    if len(c0.labels()) <= 2:
        _extreme_pair_scan(work, best)
        return best.result().scaled(f)
    ring = list(c0.vertices)
    _chord_scan(ring, best, labeled=True)
    if c1 is not None:
        for root in c1.vertices:
            _rooted_scan(root, ring, best)
    return best.result().scaled(f)

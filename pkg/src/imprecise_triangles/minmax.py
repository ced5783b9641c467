"""MinMaxArea: place one point per segment so the largest triangle is as
small as possible.

With every x fixed, twice the signed area of a triangle is a linear function
of its three y-coordinates.  The largest-triangle objective is therefore a
maximum of affine forms in the placement heights, and minimising it is a
linear program.  Three entry points use that fact at different scales:

* :func:`minmax_fixed_extremes` handles point extremes through the convex
  body, where the answer is the largest triangle inscribed in the body;
* :func:`minimize_one_extreme` / :func:`minimize_two_extremes` minimise the
  upper envelope of the triangles spanned by a given candidate set;
* :func:`minmax` solves the general problem exactly by constraint
  generation: solve the program on the forms seen so far, place the points,
  and add the placement's largest triangle whenever it beats the bound.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .geometry import (
    GeometryError,
    Instance,
    LabeledPoint,
    Point,
    PreconditionViolated,
    TooFewSegments,
    TriangleSelection,
    VSegment,
    chains,
    convex_body,
    convex_hull,
    cross,
    integer_frame,
    stabbing_line,
    unscale_point,
)
from .lp import MinimaxLP, solve_minimax
from .maxmax import largest_inscribed_triangle


@dataclass(frozen=True)
class LinearAreaForm:
    """Twice the signed area of a triangle as ``const + sum(coef * y_seg)``
    over the heights of its free vertices."""

    const: Fraction
    coeffs: tuple[tuple[int, Fraction], ...]
    labels: tuple

    def __call__(self, heights: Mapping[int, Fraction]) -> Fraction:
        return self.const + sum(c * heights[s] for s, c in self.coeffs)

    def negated(self) -> "LinearAreaForm":
        return LinearAreaForm(-self.const, tuple((s, -c) for s, c in self.coeffs), self.labels)


def area_form(vertices: Sequence) -> LinearAreaForm:
    """Form for ``cross(p, q, r)``; each vertex is a :class:`LabeledPoint`
    (fixed) or a :class:`VSegment` (free height)."""
    p, q, r = vertices
    xs = [v.x for v in vertices]
    # cross = y_p (x_r - x_q) + y_q (x_p - x_r) + y_r (x_q - x_p)
    weights = (xs[2] - xs[1], xs[0] - xs[2], xs[1] - xs[0])
    const = Fraction(0)
    coeffs: dict[int, Fraction] = {}
    for v, w in zip(vertices, weights):
        if isinstance(v, VSegment):
            coeffs[v.id] = coeffs.get(v.id, Fraction(0)) + w
        else:
            const += w * v.y
    labels = tuple(v.id if isinstance(v, VSegment) else v.seg for v in vertices)
    return LinearAreaForm(const, tuple(sorted(coeffs.items())), labels)


def _abs_forms(vertices) -> list[LinearAreaForm]:
    f = area_form(vertices)
    return [f, f.negated()]


@dataclass(frozen=True)
class MinMaxResult:
    value: Fraction  # area (not doubled)
    placement: tuple[LabeledPoint, ...]
    witness: TriangleSelection
    rounds: int = 0

    def __iter__(self):
        # allows ``value, placement, witness = minmax(inst)``
        return iter((self.value, self.placement, self.witness))


class _Program:
    """Minimax program over the heights of a chosen set of free segments."""

    def __init__(self, segments: Sequence[VSegment]):
        self.segments = list(segments)
        self.index = {s.id: i for i, s in enumerate(self.segments)}
        self.lp = MinimaxLP([s.length for s in self.segments])

    def add(self, form: LinearAreaForm) -> None:
        coeffs = [Fraction(0)] * len(self.segments)
        const = form.const
        for sid, c in form.coeffs:
            seg = self.segments[self.index[sid]]
            const += c * seg.y_lo
            coeffs[self.index[sid]] += c
        self.lp.add_form(const, coeffs)

    def solve(self) -> tuple[Fraction, dict[int, Fraction]]:
        if not self.lp.forms:
            return Fraction(0), {s.id: Fraction(s.y_lo) for s in self.segments}
        sol = self.lp.solve()
        return sol.t, {s.id: s.y_lo + z for s, z in zip(self.segments, sol.z)}


def _clip(poly: list, a: Sequence[Fraction], b: Fraction) -> list:
    """Keep the part of a convex polygon (list of 2-vectors) with a.v <= b."""
    out = []
    m = len(poly)
    for i in range(m):
        p, q = poly[i], poly[(i + 1) % m]
        fp = a[0] * p[0] + a[1] * p[1] - b
        fq = a[0] * q[0] + a[1] * q[1] - b
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            s = fp / (fp - fq)
            out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    return out


def _face_center(forms: Sequence[tuple], bounds: Sequence[Fraction], t: Fraction) -> tuple:
    """A canonical point of ``{z in box : every form <= t}``.

    One dimension: the midpoint of the optimal interval.  Two dimensions: the
    average of the optimal polygon's vertices.
    """
    if len(bounds) == 1:
        lo, hi = Fraction(0), Fraction(bounds[0])
        for b, (a,) in forms:
            if a > 0:
                hi = min(hi, (t - b) / a)
            elif a < 0:
                lo = max(lo, (t - b) / a)
        return ((lo + hi) / 2,)
    u0, u1 = (Fraction(v) for v in bounds)
    poly = [(Fraction(0), Fraction(0)), (u0, Fraction(0)), (u0, u1), (Fraction(0), u1)]
    for b, a in forms:
        if a[0] == 0 and a[1] == 0:
            continue
        poly = _clip(poly, a, t - b)
        if not poly:
            raise GeometryError("optimal face vanished")
    uniq = list(dict.fromkeys(poly))
    return (sum(p[0] for p in uniq) / len(uniq), sum(p[1] for p in uniq) / len(uniq))


def _minimize_forms(free: Sequence[VSegment], forms: Sequence[LinearAreaForm]):
    """Exact minimum of the largest form over the free heights, with the
    optimal-face centre as the tie-break for one or two free segments."""
    lows = {s.id: Fraction(s.y_lo) for s in free}
    order = [s.id for s in free]
    raw = []
    for f in forms:
        coeffs = dict(f.coeffs)
        const = f.const + sum(c * lows[s] for s, c in f.coeffs)
        raw.append((const, [coeffs.get(s, Fraction(0)) for s in order]))
    bounds = [s.length for s in free]
    sol = solve_minimax(raw, bounds)
    z = sol.z
    if 1 <= len(free) <= 2:
        z = _face_center(raw, bounds, sol.t)
    return sol.t, {s.id: lows[s.id] + v for s, v in zip(free, z)}


def minimize_one_extreme(e: VSegment, candidates: Sequence) -> tuple[Fraction, Fraction]:
    """Height on ``e`` minimising the largest triangle among ``e`` and the
    candidate points; returns ``(yE, value)`` with ``value`` an area."""
    pts = [p if isinstance(p, LabeledPoint) else LabeledPoint(Point(*p), None) for p in candidates]
    forms: list[LinearAreaForm] = []
    for a, b, c in itertools.combinations(pts, 3):
        forms += _abs_forms((a, b, c))
    for a, b in itertools.combinations(pts, 2):
        forms += _abs_forms((a, b, e))
    if not forms:
        return Fraction(e.y_lo + e.y_hi) / 2, Fraction(0)
    t, heights = _minimize_forms([e], forms)
    return heights[e.id], t / 2


def minimize_two_extremes(left: VSegment, right: VSegment, candidates: Sequence):
    """Heights on both extremes minimising the largest triangle among them and
    the candidate points; returns ``(yL, yR, value)`` with ``value`` an area."""
    pts = [p if isinstance(p, LabeledPoint) else LabeledPoint(Point(*p), None) for p in candidates]
    forms: list[LinearAreaForm] = []
    for tri in itertools.combinations(pts, 3):
        forms += _abs_forms(tri)
    for a, b in itertools.combinations(pts, 2):
        forms += _abs_forms((a, b, left)) + _abs_forms((a, b, right))
    for a in pts:
        forms += _abs_forms((left, a, right))
    free = [s for s in (left, right)]
    if not forms:
        return Fraction(left.y_lo + left.y_hi) / 2, Fraction(right.y_lo + right.y_hi) / 2, Fraction(0)
    t, heights = _minimize_forms(free, forms)
    return heights[left.id], heights[right.id], t / 2


# ------------------------------------------------------------ placements


def _line_placement(inst: Instance) -> Optional[tuple[LabeledPoint, ...]]:
    line = stabbing_line(inst)
    if line is None:
        return None
    return tuple(LabeledPoint(Point(s.x, line(s.x)), s.id) for s in inst.segments)


def _zero_result(placement, f: int) -> MinMaxResult:
    pts = tuple(unscale_point(p, f) for p in placement)
    return MinMaxResult(Fraction(0), pts, TriangleSelection(pts[0], pts[1], pts[2], Fraction(0)))


def _hull_span(hull, x) -> Optional[tuple[Fraction, Fraction]]:
    """Vertical extent of a convex polygon at abscissa ``x``."""
    v = hull.vertices
    ys = []
    for i in range(len(v)):
        a, b = v[i], v[(i + 1) % len(v)] if len(v) > 1 else v[i]
        if a.x == x:
            ys.append(Fraction(a.y))
        if (a.x - x) * (b.x - x) < 0:
            ys.append(a.y + Fraction(b.y - a.y) * (x - a.x) / (b.x - a.x))
    if not ys:
        return None
    return min(ys), max(ys)


def _fill(inst: Instance, heights: Mapping[int, Fraction]) -> tuple[LabeledPoint, ...]:
    """Complete a partial placement: every unplaced segment goes to the middle
    of its overlap with the hull of the placed points, or to its endpoint
    nearest the hull when they do not overlap."""
    placed = [LabeledPoint(Point(s.x, heights[s.id]), s.id) for s in inst.segments if s.id in heights]
    hull = convex_hull(placed)
    out = []
    for s in inst.segments:
        if s.id in heights:
            y = heights[s.id]
        else:
            span = _hull_span(hull, s.x)
            if span is None:
                y = Fraction(s.y_lo + s.y_hi) / 2
            else:
                lo, hi = max(span[0], s.y_lo), min(span[1], s.y_hi)
                if lo <= hi:
                    y = Fraction(lo + hi) / 2
                else:
                    y = Fraction(s.y_hi if s.y_hi < span[0] else s.y_lo)
        out.append(LabeledPoint(Point(s.x, y), s.id))
    return tuple(out)


def _largest_triangle(points: Sequence[LabeledPoint]) -> TriangleSelection:
    hull = convex_hull(points)
    if len(hull.vertices) < 3:
        a, b = hull.vertices[0], hull.vertices[-1]
        third = next(p for p in points if p is not a and p is not b)
        return TriangleSelection(a, b, third, Fraction(0))
    return largest_inscribed_triangle(hull)


def _violations(points: Sequence[LabeledPoint], bound: Fraction) -> list[tuple]:
    """Triangles of the placement whose twice-area exceeds ``bound``: for each
    hull chord, the farthest hull vertex on either side."""
    ring = list(convex_hull(points).vertices)
    m = len(ring)
    found = {}
    for i, j in itertools.combinations(range(m), 2):
        hs = [cross(ring[i], ring[j], ring[k]) for k in range(m)]
        for k in (hs.index(max(hs)), hs.index(min(hs))):
            if abs(hs[k]) > bound and k not in (i, j):
                tri = tuple(sorted((ring[i], ring[j], ring[k]), key=lambda p: p.x))
                found[tuple(p.seg for p in tri)] = tri
    return sorted(found.values(), key=lambda tri: -abs(cross(*tri)))


# ------------------------------------------------------------ solvers


def minmax_fixed_extremes(inst: Instance) -> MinMaxResult:
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    if not (inst.leftmost.is_point and inst.rightmost.is_point):
        raise PreconditionViolated("extreme segments must be single points")
    work, f = integer_frame(inst)
    line = _line_placement(work)
    if line is not None:
        return _zero_result(line, f)
    body = convex_body(work).body
    witness = largest_inscribed_triangle(body)
    at_vertex = {v.seg: v.y for v in body.vertices if v.seg is not None}
    heights = {}
    for s in work.segments:
        if s.id in at_vertex:
            heights[s.id] = Fraction(at_vertex[s.id])
        else:
            lo, hi = _hull_span(body, s.x)
            heights[s.id] = Fraction(max(lo, s.y_lo) + min(hi, s.y_hi)) / 2
    placement = tuple(LabeledPoint(Point(s.x, heights[s.id]), s.id) for s in work.segments)
    placement = tuple(unscale_point(p, f) for p in placement)
    return MinMaxResult(witness.area2 / (2 * f * f), placement, witness.scaled(f))


def minmax(inst: Instance, max_rounds: int = 10_000) -> MinMaxResult:
    """Exact MinMaxArea for arbitrary segments."""
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    work, f = integer_frame(inst)
    line = _line_placement(work)
    if line is not None:
        return _zero_result(line, f)

    body = convex_body(work)
    fixed = {s.id: Fraction(s.y_lo) for s in work.segments if s.is_point}
    free_ids = {s.id for s in work.segments if not s.is_point}
    # start with the extremes and every segment shaping the chains
    active = sorted(
        ({work.leftmost.id, work.rightmost.id} | set(body.contributing_ids)) & free_ids,
        key=lambda i: work.segment(i).x,
    )
    forms: list[LinearAreaForm] = []
    seen: set = set()

    def vertex(seg_id):
        if seg_id in fixed:
            s = work.segment(seg_id)
            return LabeledPoint(Point(s.x, s.y_lo), seg_id)
        return work.segment(seg_id)

    program = _Program([work.segment(i) for i in active])
    # initial heights: the body vertices where they exist, else mid-segment
    heights = {i: Fraction(work.segment(i).y_lo + work.segment(i).y_hi) / 2 for i in active}
    if body.body is not None:
        for v in body.body.vertices:
            if v.seg in heights:
                heights[v.seg] = Fraction(v.y)
    bound = Fraction(0)
    for rounds in range(1, max_rounds + 1):
        placement = _fill(work, {**fixed, **heights})
        new = _violations(placement, bound)
        if not new:
            witness = _largest_triangle(placement)
            if witness.area2 != bound:
                raise GeometryError("constraint generation stalled")
            pts = tuple(unscale_point(p, f) for p in placement)
            return MinMaxResult(bound / (2 * f * f), pts, witness.scaled(f), rounds)
        grew = False
        for tri in new:
            sign = 1 if cross(*tri) > 0 else -1
            key = (tuple(p.seg for p in tri), sign)
            if key in seen:
                continue
            seen.add(key)
            form = area_form([vertex(p.seg) for p in tri])
            forms.append(form if sign > 0 else form.negated())
            for p in tri:
                if p.seg in free_ids and p.seg not in program.index:
                    active.append(p.seg)
                    grew = True
        if grew:
            program = _Program([work.segment(i) for i in sorted(active, key=lambda i: work.segment(i).x)])
            for form in forms:
                program.add(form)
        else:
            for form in forms[len(program.lp.forms):]:
                program.add(form)
        bound, heights = program.solve()
    raise GeometryError("round budget exhausted")


def minmax_envelope(inst: Instance) -> MinMaxResult:
    """Heuristic upper bound: pin every interior chain vertex at its endpoint
    and optimise only the two extreme heights against all the triangles those
    candidates span.  The returned value is what the resulting placement
    actually achieves, which can exceed :func:`minmax`."""
    if len(inst) < 3:
        raise TooFewSegments("need three segments")
    work, f = integer_frame(inst)
    line = _line_placement(work)
    if line is not None:
        return _zero_result(line, f)
    left, right = work.leftmost, work.rightmost
    top, bottom = chains(work)
    cands = {}
    for v in top.vertices + bottom.vertices:
        if v.seg not in (left.id, right.id):
            cands[v.seg] = v
    yl, yr, _ = minimize_two_extremes(left, right, sorted(cands.values(), key=lambda p: p.x))
    heights = {left.id: yl, right.id: yr}
    heights.update({sid: Fraction(v.y) for sid, v in cands.items()})
    placement = _fill(work, heights)
    witness = _largest_triangle(placement)
    pts = tuple(unscale_point(p, f) for p in placement)
    return MinMaxResult(witness.area2 / (2 * f * f), pts, witness.scaled(f))

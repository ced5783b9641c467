"""Exact planar primitives for imprecise points modeled as vertical segments.

Every coordinate is a :class:`fractions.Fraction` (or an ``int``, which mixes
freely with it), so all predicates are decided exactly.  Areas are carried
around as *twice* the triangle area, which keeps them integral whenever the
coordinates are.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

Scalar = Fraction
Number = Union[int, Fraction]


class GeometryError(Exception):
    pass


class ValidationError(GeometryError):
    def __init__(self, rule: str, detail: str = ""):
        self.rule = rule
        super().__init__(f"{rule}: {detail}" if detail else rule)


class TooFewSegments(GeometryError):
    pass


class PreconditionViolated(GeometryError):
    pass


def to_scalar(value) -> Fraction:
    """Convert ints, decimal strings, ``"p/q"`` strings, Decimals or Fractions.

    Floats are rejected; they would smuggle binary rounding into exact data.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact number: {value!r}") from exc
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


def format_scalar(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Point(NamedTuple):
    x: Number
    y: Number

    def __sub__(self, other):  # type: ignore[override]
        return Point(self.x - other.x, self.y - other.y)


class LabeledPoint(NamedTuple):
    """A point tagged with the id of the segment it came from.

    ``seg`` is ``None`` for constructed points (e.g. chain crossings) that do
    not belong to any input segment.
    """

    point: Point
    seg: Optional[int]

    @property
    def x(self):
        return self.point.x

    @property
    def y(self):
        return self.point.y


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def cross(p, q, r):
    """Signed cross product (q - p) x (r - p); positive for a left turn."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orientation(p, q, r) -> Orientation:
    c = cross(p, q, r)
    if c > 0:
        return Orientation.CCW
    if c < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def area2(p, q, r):
    """Twice the area of triangle pqr."""
    return abs(cross(p, q, r))


def _xy(p):
    return p.point if isinstance(p, LabeledPoint) else p


@dataclass(frozen=True)
class VSegment:
    id: int
    x: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self):
        for name in ("x", "y_lo", "y_hi"):
            v = getattr(self, name)
            # plain ints are already exact and keep the integer fast path
            if type(v) is not int:
                object.__setattr__(self, name, to_scalar(v))
        if self.y_lo > self.y_hi:
            raise ValidationError("y_lo>y_hi", f"segment {self.id} at x={self.x}")

    @property
    def is_point(self) -> bool:
        return self.y_lo == self.y_hi

    @property
    def length(self) -> Fraction:
        return self.y_hi - self.y_lo

    @property
    def lower(self) -> LabeledPoint:
        return LabeledPoint(Point(self.x, self.y_lo), self.id)

    @property
    def upper(self) -> LabeledPoint:
        return LabeledPoint(Point(self.x, self.y_hi), self.id)

    def endpoints(self) -> list[LabeledPoint]:
        if self.is_point:
            return [self.lower]
        return [self.lower, self.upper]

    def contains_y(self, y) -> bool:
        return self.y_lo <= y <= self.y_hi


class Instance:
    """An x-sorted collection of pairwise disjoint vertical segments."""

    def __init__(self, segments: Iterable[VSegment]):
        segs = sorted(segments, key=lambda s: s.x)
        if not segs:
            raise ValidationError("empty", "an instance needs at least one segment")
        ids = [s.id for s in segs]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate-id")
        for a, b in zip(segs, segs[1:]):
            # equal x is the only way two vertical segments can meet
            if a.x == b.x:
                raise ValidationError(
                    "duplicate-x", f"segments {a.id} and {b.id} share x={a.x}"
                )
        self.segments: tuple[VSegment, ...] = tuple(segs)
        self._by_id = {s.id: s for s in segs}

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence]) -> "Instance":
        return cls(
            VSegment(i, to_scalar(x), to_scalar(lo), to_scalar(hi))
            for i, (x, lo, hi) in enumerate(triples)
        )

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __eq__(self, other) -> bool:
        return isinstance(other, Instance) and self.segments == other.segments

    def __hash__(self) -> int:
        return hash(self.segments)

    def __repr__(self) -> str:
        body = ", ".join(
            f"({format_scalar(s.x)}, {format_scalar(s.y_lo)}, {format_scalar(s.y_hi)})"
            for s in self.segments
        )
        return f"Instance([{body}])"

    def segment(self, seg_id: int) -> VSegment:
        return self._by_id[seg_id]

    @property
    def leftmost(self) -> VSegment:
        return self.segments[0]

    @property
    def rightmost(self) -> VSegment:
        return self.segments[-1]

    def endpoints(self) -> list[LabeledPoint]:
        """The endpoint set Z; a degenerate segment contributes one point."""
        out: list[LabeledPoint] = []
        for s in self.segments:
            out.extend(s.endpoints())
        return out

    def triples(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        return [(s.x, s.y_lo, s.y_hi) for s in self.segments]

    def replace(self, seg_id: int, y_lo, y_hi) -> "Instance":
        return Instance(
            VSegment(s.id, s.x, to_scalar(y_lo), to_scalar(y_hi)) if s.id == seg_id else s
            for s in self.segments
        )


def integer_frame(inst: Instance) -> tuple[Instance, int]:
    """Rescale ``inst`` so that every coordinate is an integer.

    Returns the scaled instance and the factor ``f``; twice-areas in the scaled
    frame are ``f**2`` times the original ones.  Solvers use this to run on
    plain Python ints.
    """
    f = 1
    for s in inst.segments:
        for v in (s.x, s.y_lo, s.y_hi):
            f = math.lcm(f, Fraction(v).denominator)
    if f == 1:
        return (
            Instance(
                VSegment(s.id, int(s.x), int(s.y_lo), int(s.y_hi)) for s in inst.segments
            ),
            1,
        )
    return (
        Instance(
            VSegment(s.id, int(s.x * f), int(s.y_lo * f), int(s.y_hi * f))
            for s in inst.segments
        ),
        f,
    )


def unscale_point(p: LabeledPoint, f: int) -> LabeledPoint:
    if f == 1:
        return LabeledPoint(Point(Fraction(p.x), Fraction(p.y)), p.seg)
    return LabeledPoint(Point(Fraction(p.x, f), Fraction(p.y, f)), p.seg)


# ---------------------------------------------------------------- hulls


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple[LabeledPoint, ...]
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def labels(self) -> set:
        return {v.seg for v in self.vertices}

    def area2(self):
        v = self.vertices
        if len(v) < 3:
            return 0
        total = 0
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            total += a.x * b.y - a.y * b.x
        return total

    def contains(self, p, strict: bool = False) -> bool:
        v = self.vertices
        if len(v) == 0:
            return False
        if len(v) == 1:
            return not strict and tuple(_xy(v[0])) == tuple(_xy(p))
        if len(v) == 2:
            if strict:
                return False
            a, b = _xy(v[0]), _xy(v[1])
            q = _xy(p)
            return (
                cross(a, b, q) == 0
                and min(a.x, b.x) <= q.x <= max(a.x, b.x)
                and min(a.y, b.y) <= q.y <= max(a.y, b.y)
            )
        q = _xy(p)
        for i in range(len(v)):
            c = cross(_xy(v[i]), _xy(v[(i + 1) % len(v)]), q)
            if c < 0 or (strict and c == 0):
                return False
        return True

    def on_boundary(self, p) -> bool:
        return self.contains(p) and not self.contains(p, strict=True)


def convex_hull(points: Sequence[LabeledPoint]) -> ConvexPolygon:
    """Monotone-chain hull, ccw, collinear boundary points dropped."""
    if not points:
        raise GeometryError("convex hull of an empty set")
    uniq: dict[tuple, LabeledPoint] = {}
    for p in points:
        uniq.setdefault((p.x, p.y), p)
    pts = sorted(uniq.values(), key=lambda p: (p.x, p.y))
    if len(pts) <= 2:
        return ConvexPolygon(tuple(pts), degenerate=len(pts) < 3)
    lower: list[LabeledPoint] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[LabeledPoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return ConvexPolygon(tuple(hull), degenerate=True)
    return ConvexPolygon(tuple(hull))


def onion_two_layers(inst: Instance) -> tuple[ConvexPolygon, Optional[ConvexPolygon]]:
    z = inst.endpoints()
    c0 = convex_hull(z)
    on_c0 = {(v.x, v.y) for v in c0.vertices}
    rest = [p for p in z if (p.x, p.y) not in on_c0]
    return c0, (convex_hull(rest) if rest else None)


# ---------------------------------------------------------------- chains


class Side(str, enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"


@dataclass(frozen=True)
class Chain:
    vertices: tuple[LabeledPoint, ...]
    side: Side

    def __len__(self) -> int:
        return len(self.vertices)

    def __call__(self, x):
        """Height of the chain at abscissa ``x`` (within its x-range)."""
        v = self.vertices
        if x < v[0].x or x > v[-1].x:
            raise ValueError("x outside chain")
        lo, hi = 0, len(v) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if v[mid].x <= x:
                lo = mid
            else:
                hi = mid
        a, b = v[lo], v[hi]
        if a.x == x:
            return a.y
        if b.x == x:
            return b.y
        return a.y + (b.y - a.y) * Fraction(x - a.x) / (b.x - a.x)


def _half_hull(points: Sequence[LabeledPoint], upper: bool) -> list[LabeledPoint]:
    pts = sorted(points, key=lambda p: p.x)
    out: list[LabeledPoint] = []
    for p in pts:
        while len(out) >= 2:
            c = cross(out[-2], out[-1], p)
            if (c >= 0) if upper else (c <= 0):
                out.pop()
            else:
                break
        out.append(p)
    return out


def upper_hull(points: Sequence[LabeledPoint]) -> list[LabeledPoint]:
    return _half_hull(points, True)


def lower_hull(points: Sequence[LabeledPoint]) -> list[LabeledPoint]:
    return _half_hull(points, False)


def chains(inst: Instance) -> tuple[Chain, Chain]:
    """Top chain (upper hull of lower endpoints), bottom chain (lower hull of uppers)."""
    if len(inst) < 2:
        raise TooFewSegments("chains need at least two segments")
    top = upper_hull([s.lower for s in inst.segments])
    bottom = lower_hull([s.upper for s in inst.segments])
    return Chain(tuple(top), Side.TOP), Chain(tuple(bottom), Side.BOTTOM)


# ---------------------------------------------------------------- stabbing


@dataclass(frozen=True)
class Line:
    """Non-vertical line y = slope * x + intercept."""

    slope: Fraction
    intercept: Fraction

    def __call__(self, x):
        return self.slope * x + self.intercept

    def points(self, x0, x1) -> tuple[Point, Point]:
        return Point(x0, self(x0)), Point(x1, self(x1))


def _edge_slopes(chain: Chain) -> set:
    v = chain.vertices
    return {Fraction(b.y - a.y, 1) / (b.x - a.x) for a, b in zip(v, v[1:])}


def stabbing_line(inst: Instance) -> Optional[Line]:
    """A line meeting every segment, or ``None``.

    For a fixed slope ``a`` the admissible intercepts form an interval whose
    length is concave piecewise linear in ``a`` with breakpoints at the edge
    slopes of the two chains; checking those slopes is therefore exhaustive.
    """
    segs = inst.segments
    if len(segs) == 1:
        s = segs[0]
        return Line(Fraction(0), Fraction(s.y_lo))
    top, bottom = chains(inst)
    best = None
    for a in sorted(_edge_slopes(top) | _edge_slopes(bottom)):
        lo = max(s.y_lo - a * s.x for s in segs)
        hi = min(s.y_hi - a * s.x for s in segs)
        if lo <= hi and (best is None or hi - lo > best[0]):
            best = (hi - lo, a, (lo + hi) / 2)
    if best is None:
        return None
    return Line(Fraction(best[1]), Fraction(best[2]))


# ---------------------------------------------------------------- body


@dataclass(frozen=True)
class ConvexBody:
    body: Optional[ConvexPolygon]
    tail_left: Optional[tuple[LabeledPoint, ...]] = None
    tail_right: Optional[tuple[LabeledPoint, ...]] = None
    contributing_ids: frozenset = field(default_factory=frozenset)
    # x-range where the top chain lies above the bottom chain
    x_range: Optional[tuple[Fraction, Fraction]] = None

    @property
    def empty(self) -> bool:
        return self.body is None


def _crossing(top: Chain, bottom: Chain, xa, xb):
    """Abscissa in [xa, xb] where top - bottom changes sign (exactly)."""
    da = top(xa) - bottom(xa)
    db = top(xb) - bottom(xb)
    if da == db:
        return xa
    return xa + (xb - xa) * Fraction(-da) / (db - da)


def convex_body(inst: Instance) -> ConvexBody:
    """The region where the top chain lies above the bottom chain, plus tails.

    The difference ``top - bottom`` is concave, so the region is a single
    x-interval; the body is empty when that difference never gets positive,
    which is exactly when a stabbing line exists.
    """
    if len(inst) < 3:
        raise TooFewSegments("convex body needs at least three segments")
    top, bottom = chains(inst)
    xs = sorted({v.x for v in top.vertices} | {v.x for v in bottom.vertices})
    diffs = [top(x) - bottom(x) for x in xs]
    if max(diffs) <= 0:
        return ConvexBody(None)

    pos = [i for i, d in enumerate(diffs) if d > 0]
    i0, i1 = pos[0], pos[-1]
    xa = xs[i0] if i0 == 0 or diffs[i0] == 0 else _crossing(top, bottom, xs[i0 - 1], xs[i0])
    if i0 > 0 and diffs[i0 - 1] == 0:
        xa = xs[i0 - 1]
    last = len(xs) - 1
    xb = xs[i1] if i1 == last else _crossing(top, bottom, xs[i1], xs[i1 + 1])
    if i1 < last and diffs[i1 + 1] == 0:
        xb = xs[i1 + 1]

    def vertex_at(chain: Chain, x) -> LabeledPoint:
        for v in chain.vertices:
            if v.x == x:
                return v
        return LabeledPoint(Point(x, chain(x)), None)

    def corner(x) -> LabeledPoint:
        # where the chains meet; keep a segment label when it is an input point
        b = vertex_at(bottom, x)
        t = vertex_at(top, x)
        if b.y == t.y:
            return b if b.seg is not None else t
        return LabeledPoint(Point(x, bottom(x)), None)

    left, right = corner(xa), corner(xb)
    lower_part = [v for v in bottom.vertices if xa < v.x < xb]
    upper_part = [v for v in top.vertices if xa < v.x < xb]
    ring = [left] + lower_part + [right] + upper_part[::-1]
    body = convex_hull(ring)

    def tail(side: str):
        if side == "left":
            s = inst.leftmost
            if s.is_point and xa == s.x:
                return None
            lo = [v for v in top.vertices if v.x < xa]
            hi = [v for v in bottom.vertices if v.x < xa]
            return tuple(lo + [left] + hi[::-1])
        s = inst.rightmost
        if s.is_point and xb == s.x:
            return None
        lo = [v for v in top.vertices if v.x > xb]
        hi = [v for v in bottom.vertices if v.x > xb]
        return tuple([right] + lo + hi[::-1])

    tl, tr = tail("left"), tail("right")
    ids = {v.seg for v in top.vertices} | {v.seg for v in bottom.vertices}
    ids.discard(None)
    return ConvexBody(body, tl, tr, frozenset(ids), (xa, xb))


# ---------------------------------------------------------------- duality


@dataclass(frozen=True)
class DualLine:
    """Image of a point (px, py) under u -> px * u - py."""

    slope: Number
    intercept: Number
    source: Optional[LabeledPoint] = None

    def __call__(self, u):
        return self.slope * u + self.intercept


def dual_line(p) -> DualLine:
    if isinstance(p, LabeledPoint):
        return DualLine(p.x, -p.y, p)
    return DualLine(p[0], -p[1])


# ---------------------------------------------------------------- results


def selection_key(points: Iterable[LabeledPoint]) -> tuple:
    """Deterministic tie-break: by segment id, lower endpoint before upper."""
    return tuple(sorted((-1 if p.seg is None else p.seg, p.y, p.x) for p in points))


@dataclass(frozen=True)
class TriangleSelection:
    a: LabeledPoint
    b: LabeledPoint
    c: LabeledPoint
    area2: Fraction

    @classmethod
    def of(cls, a, b, c) -> "TriangleSelection":
        return cls(a, b, c, Fraction(area2(a.point, b.point, c.point)))

    @property
    def area(self) -> Fraction:
        return self.area2 / 2

    @property
    def vertices(self) -> tuple[LabeledPoint, LabeledPoint, LabeledPoint]:
        return (self.a, self.b, self.c)

    @property
    def is_true(self) -> bool:
        ids = [v.seg for v in self.vertices]
        return None not in ids and len(set(ids)) == 3

    def scaled(self, f: int) -> "TriangleSelection":
        if f == 1:
            return TriangleSelection(
                unscale_point(self.a, 1), unscale_point(self.b, 1),
                unscale_point(self.c, 1), Fraction(self.area2),
            )
        return TriangleSelection(
            unscale_point(self.a, f), unscale_point(self.b, f),
            unscale_point(self.c, f), Fraction(self.area2, f * f),
        )


@dataclass(frozen=True)
class PolySelection:
    vertices: tuple[LabeledPoint, ...]
    area2: Fraction

    @property
    def area(self) -> Fraction:
        return self.area2 / 2

    def is_strictly_convex(self) -> bool:
        v = self.vertices
        m = len(v)
        return m >= 3 and all(cross(v[i], v[(i + 1) % m], v[(i + 2) % m]) > 0 for i in range(m))

    def is_true(self) -> bool:
        ids = [p.seg for p in self.vertices]
        return None not in ids and len(set(ids)) == len(ids)

"""MaxMinArea is NP-hard: a constructive SAT reduction, its verifier, and a
small-scale heuristic solver.

Each literal occurrence of variable ``x`` in clause ``i`` gets a vertical
segment ``s(x,i)`` whose upper endpoint means *True* and lower endpoint
*False*, plus two fixed points on its horizontal bisector at distance
``delta / h`` on either side of its centre, where ``h`` is the segment's
half-length.  Whichever endpoint is chosen, those two points span a triangle
of twice-area ``alpha2 = 2 * delta`` with it; any interior choice is smaller.

* The three falsifying endpoints of every clause are placed on one line, so
  an unsatisfied clause yields a zero-area triangle.
* For a variable shared by clauses ``i`` and ``j`` a fixed point sits on the
  line ``s+(x,i) s-(x,j)`` and another on ``s-(x,i) s+(x,j)``, so an
  inconsistent choice also yields zero area.
* Each segment's horizontal band ``|y - centre| <= h`` (its perpendicular
  strip) holds no other point, and no other three points are collinear;
  ``delta`` is shrunk until every unintended triangle is at least ``alpha2``.

Segments are laid out directly in the vertical frame.  This is the image of
a layout with 45-degree segments under the rational similarity
``(x, y) -> (x - y, x + y)``.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .geometry import (
    GeometryError,
    Instance,
    LabeledPoint,
    Point,
    TriangleSelection,
    VSegment,
    area2,
    format_scalar,
    to_scalar,
)
from .oracles import BudgetExceeded

# half-lengths of the three segments of a clause; they must differ, or the
# satisfying endpoints of a single-signed clause would be a translate of its
# collinear falsifying endpoints
HALVES = (Fraction(1), Fraction(9, 8), Fraction(3, 2))
BAND_GAP = 4  # minimum distance between consecutive band centres


class ConstructionFailure(GeometryError):
    pass


class CnfError(ValueError):
    pass


# ------------------------------------------------------------------ CNF


@dataclass(frozen=True)
class Cnf:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if not self.clauses:
            raise CnfError("empty formula")
        for c in self.clauses:
            if len(c) != 3:
                raise CnfError(f"clause {c} does not have exactly three literals")
            if len({abs(l) for l in c}) != 3:
                raise CnfError(f"clause {c} repeats a variable")
            if any(l == 0 or abs(l) > self.num_vars for l in c):
                raise CnfError(f"clause {c} has a literal out of range")

    @classmethod
    def from_dimacs(cls, text: str) -> "Cnf":
        num_vars = None
        declared = None
        lits: list[int] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("c") or line.startswith("%"):
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise CnfError(f"bad header: {line!r}")
                num_vars, declared = int(parts[2]), int(parts[3])
                continue
            lits.extend(int(tok) for tok in line.split())
        if num_vars is None:
            raise CnfError("missing 'p cnf' header")
        clauses, cur = [], []
        for l in lits:
            if l == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(l)
        if cur:
            clauses.append(tuple(cur))
        if declared is not None and declared != len(clauses):
            raise CnfError(f"header declares {declared} clauses, found {len(clauses)}")
        return cls(num_vars, tuple(clauses))

    def to_dimacs(self) -> str:
        body = "\n".join(" ".join(str(l) for l in c) + " 0" for c in self.clauses)
        return f"p cnf {self.num_vars} {len(self.clauses)}\n{body}\n"

    def satisfied_by(self, assign: Sequence[bool]) -> bool:
        return all(any(assign[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def assignments(self) -> Iterable[tuple[bool, ...]]:
        return itertools.product((False, True), repeat=self.num_vars)


parse_dimacs = Cnf.from_dimacs


# ------------------------------------------------------------ reduction


@dataclass(frozen=True)
class Reduction:
    cnf: Cnf
    instance: Instance
    alpha2: Fraction
    # (variable, clause index) -> segment id; upper endpoint = True
    literal_map: Mapping[tuple[int, int], int]
    fixed_ids: frozenset
    bisector: Mapping[int, tuple[int, int]]  # segment id -> its two fixed points
    designed_zero: frozenset = field(default_factory=frozenset)  # frozensets of (seg, y)

    def true_end(self, var: int, clause: int) -> LabeledPoint:
        return self.instance.segment(self.literal_map[(var, clause)]).upper

    def false_end(self, var: int, clause: int) -> LabeledPoint:
        return self.instance.segment(self.literal_map[(var, clause)]).lower


@dataclass(frozen=True)
class Placement:
    selection: tuple[LabeledPoint, ...]


class _Store:
    """Points placed so far, each tagged with the segment it belongs to.

    Collinearity tests run on integer copies of the points scaled by a common
    denominator, which is far cheaper than Fraction arithmetic.
    """

    def __init__(self):
        self.points: list[tuple[object, Point]] = []  # (owner key, point)
        self.designed: set = set()

    def _frame(self, extra=()):
        scale = 1
        for _, q in list(self.points) + list(extra):
            scale = math.lcm(scale, Fraction(q.x).denominator, Fraction(q.y).denominator)
        return scale

    def collides(self, owner, p: Point) -> bool:
        scale = self._frame([(owner, p)])
        px, py = int(p.x * scale), int(p.y * scale)
        pts = [(k, q, int(q.x * scale), int(q.y * scale)) for k, q in self.points if k != owner]
        for (ka, a, ax, ay), (kb, b, bx, by) in itertools.combinations(pts, 2):
            if ka == kb:
                continue
            if (bx - ax) * (py - ay) == (by - ay) * (px - ax):
                if frozenset({(ka, a), (kb, b), (owner, p)}) not in self.designed:
                    return True
        return False

    def smallest_triangle(self) -> Fraction:
        """Smallest nonzero twice-area over points of three distinct owners."""
        scale = self._frame()
        pts = [(k, int(q.x * scale), int(q.y * scale)) for k, q in self.points]
        best = None
        for (ka, ax, ay), (kb, bx, by), (kc, cx, cy) in itertools.combinations(pts, 3):
            if ka == kb or kb == kc or ka == kc:
                continue
            v = abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
            if v and (best is None or v < best):
                best = v
        return Fraction(1) if best is None else Fraction(best, scale * scale)


def _in_band(y, bands) -> bool:
    return any(abs(y - c) <= h for c, h in bands)


def _build(cnf: Cnf, rng: random.Random) -> Reduction:
    gadgets = [(ci, lit) for ci, clause in enumerate(cnf.clauses) for lit in clause]
    # random extra gaps keep the band centres away from arithmetic progressions
    centre, c = {}, Fraction(0)
    for g in gadgets:
        centre[g] = c
        c += BAND_GAP + Fraction(rng.randrange(16), 8)
    half = {(ci, lit): HALVES[clause.index(lit)] for ci, lit in gadgets for clause in [cnf.clauses[ci]]}
    gx: dict = {}
    store = _Store()
    used_x: set = set()
    grid = [Fraction(k, 4) for k in range(1, 16 * BAND_GAP * len(gadgets))]

    def falsifying_y(g):
        _, lit = g
        return centre[g] - half[g] if lit > 0 else centre[g] + half[g]

    # clause gadgets: choose two abscissae, the third follows from collinearity
    for ci, clause in enumerate(cnf.clauses):
        gs = [(ci, lit) for lit in clause]
        for _ in range(500):
            x1, x2 = rng.sample(grid, 2)
            y1, y2, y3 = (falsifying_y(g) for g in gs)
            x3 = x1 + (x2 - x1) * (y3 - y1) / (y2 - y1)
            xs = (x1, x2, x3)
            if len(set(xs)) < 3 or any(x in used_x for x in xs):
                continue
            mark = len(store.points)
            fals = frozenset((g, Point(x, falsifying_y(g))) for g, x in zip(gs, xs))
            store.designed.add(fals)
            ok = True
            for g, x in zip(gs, xs):
                for p in (Point(x, centre[g] - half[g]), Point(x, centre[g] + half[g]), Point(x, centre[g])):
                    owner = ("centre", g) if p.y == centre[g] else g
                    if store.collides(owner, p):
                        ok = False
                        break
                    store.points.append((owner, p))
                if not ok:
                    break
            if ok:
                for g, x in zip(gs, xs):
                    gx[g] = x
                    used_x.add(x)
                break
            del store.points[mark:]
            store.designed.discard(fals)
        else:
            raise ConstructionFailure(f"could not place clause {ci}")

    # consistency connectors
    bands = [(centre[g], half[g]) for g in gadgets]
    occurrences: dict[int, list] = {}
    for g in gadgets:
        occurrences.setdefault(abs(g[1]), []).append(g)
    connectors = []
    params = [Fraction(k, 64) for k in range(1, 64)]
    for var in sorted(occurrences):
        for gi, gj in itertools.combinations(occurrences[var], 2):
            for sa, sb in ((+1, -1), (-1, +1)):
                a = Point(gx[gi], centre[gi] + sa * half[gi])
                b = Point(gx[gj], centre[gj] + sb * half[gj])
                owner = ("conn", var, gi, gj, sa)
                rng.shuffle(params)
                for t in params:
                    q = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
                    if q.x in used_x or _in_band(q.y, bands):
                        continue
                    trio = frozenset({(gi, a), (gj, b), (owner, q)})
                    store.designed.add(trio)
                    if store.collides(owner, q):
                        store.designed.discard(trio)
                        continue
                    store.points.append((owner, q))
                    used_x.add(q.x)
                    connectors.append((owner, q, (gi, a), (gj, b)))
                    break
                else:
                    raise ConstructionFailure(f"could not place a connector for x{var}")

    # bisector points: shrink delta until the audit is clean, starting just
    # below the smallest triangle among the points placed so far
    floor = store.smallest_triangle()
    delta = Fraction(1, 8)
    while 2 * delta >= floor:
        delta /= 2
    for _ in range(40):
        red = _assemble(cnf, gadgets, centre, half, gx, connectors, delta)
        if red is not None:
            return red
        delta /= 2
    raise ConstructionFailure("no admissible bisector offset found")


def _assemble(cnf, gadgets, centre, half, gx, connectors, delta) -> Optional[Reduction]:
    xs = set(gx.values()) | {q.x for _, q, _, _ in connectors}
    segs = []  # (key, x, lo, hi)
    for g in gadgets:
        segs.append((g, gx[g], centre[g] - half[g], centre[g] + half[g]))
        for side in (-1, 1):
            x = gx[g] + side * delta / half[g]
            if x in xs:
                return None
            xs.add(x)
            segs.append((("fix", g, side), x, centre[g], centre[g]))
    for owner, q, _, _ in connectors:
        segs.append((owner, q.x, q.y, q.y))
    segs.sort(key=lambda s: s[1])
    ids = {s[0]: i for i, s in enumerate(segs)}
    inst = Instance(VSegment(i, x, lo, hi) for i, (_, x, lo, hi) in enumerate(segs))

    def labeled(key, y):
        return (ids[key], y)

    designed = set()
    for ci, clause in enumerate(cnf.clauses):
        trio = []
        for lit in clause:
            g = (ci, lit)
            trio.append(labeled(g, centre[g] - half[g] if lit > 0 else centre[g] + half[g]))
        designed.add(frozenset(trio))
    for owner, q, (gi, a), (gj, b) in connectors:
        designed.add(frozenset({labeled(owner, q.y), labeled(gi, a.y), labeled(gj, b.y)}))
    red = Reduction(
        cnf=cnf,
        instance=inst,
        alpha2=2 * delta,
        literal_map={(abs(lit), ci): ids[(ci, lit)] for ci, lit in gadgets},
        fixed_ids=frozenset(i for i, s in enumerate(inst.segments) if s.is_point),
        bisector={ids[g]: (ids[("fix", g, -1)], ids[("fix", g, 1)]) for g in gadgets},
        designed_zero=frozenset(designed),
    )
    report = audit(red)
    return red if report.clean else None


@dataclass(frozen=True)
class AuditReport:
    unexpected_zero: tuple
    missing_zero: tuple
    gadget_min2: Fraction
    other_min2: Optional[Fraction]  # smallest nonzero non-gadget twice-area
    strip_violations: tuple

    @property
    def clean(self) -> bool:
        return (
            not self.unexpected_zero
            and not self.missing_zero
            and not self.strip_violations
            and (self.other_min2 is None or self.other_min2 >= self.gadget_min2)
        )


def audit(red: Reduction) -> AuditReport:
    """Exhaustive check of every triangle over all endpoints and fixed points."""
    inst = red.instance
    pts = inst.endpoints()
    gadget_tris = set()
    for sid, (f1, f2) in red.bisector.items():
        s = inst.segment(sid)
        for e in s.endpoints():
            mid = Fraction(s.y_lo + s.y_hi) / 2
            gadget_tris.add(frozenset({(e.seg, e.y), (f1, mid), (f2, mid)}))
    # exact integer arithmetic in a common frame is much faster than Fractions
    scale = 1
    for p in pts:
        scale = math.lcm(scale, Fraction(p.x).denominator, Fraction(p.y).denominator)
    ipts = [(int(p.x * scale), int(p.y * scale), p.seg, p.y) for p in pts]
    zeros = set()
    other_min = None
    for (ax, ay, sa, ya), (bx, by, sb, yb), (cx, cy, sc, yc) in itertools.combinations(ipts, 3):
        if sa == sb or sb == sc or sa == sc:
            continue
        v = abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
        if v == 0:
            zeros.add(frozenset({(sa, ya), (sb, yb), (sc, yc)}))
        elif other_min is None or v < other_min:
            key = frozenset({(sa, ya), (sb, yb), (sc, yc)})
            if key not in gadget_tris:
                other_min = v
    if other_min is not None:
        other_min = Fraction(other_min, scale * scale)
    gadget_vals = []
    for sid, (f1, f2) in red.bisector.items():
        s = inst.segment(sid)
        p1, p2 = inst.segment(f1).lower, inst.segment(f2).lower
        gadget_vals += [area2(s.lower, p1, p2), area2(s.upper, p1, p2)]
    strips = []
    for sid in red.bisector:
        s = inst.segment(sid)
        own = {sid, *red.bisector[sid]}
        for p in pts:
            if p.seg not in own and s.y_lo <= p.y <= s.y_hi:
                strips.append((sid, p.seg))
    return AuditReport(
        unexpected_zero=tuple(sorted(tuple(sorted(z)) for z in zeros - red.designed_zero)),
        missing_zero=tuple(sorted(tuple(sorted(z)) for z in red.designed_zero - zeros)),
        gadget_min2=Fraction(min(gadget_vals)),
        other_min2=None if other_min is None else Fraction(other_min),
        strip_violations=tuple(strips),
    )


def reduce_sat(cnf: Cnf, seed: int = 0, attempts: int = 16) -> Reduction:
    """Build a MaxMinArea instance whose optimum reaches ``alpha2`` exactly
    when ``cnf`` is satisfiable."""
    last = None
    for k in range(attempts):
        try:
            red = _build(cnf, random.Random(seed * 7919 + k))
        except ConstructionFailure as exc:
            last = exc
            continue
        if min(audit(red).gadget_min2, red.alpha2) != red.alpha2:
            raise ConstructionFailure("gadget triangles disagree with alpha")
        return red
    raise ConstructionFailure(f"gave up after {attempts} attempts: {last}")


def assignment_to_placement(red: Reduction, assign: Sequence[bool]) -> Placement:
    if len(assign) != red.cnf.num_vars:
        raise ValueError("assignment length differs from the number of variables")
    chosen = {}
    for (var, _), sid in red.literal_map.items():
        s = red.instance.segment(sid)
        chosen[sid] = s.upper if assign[var - 1] else s.lower
    return Placement(
        tuple(chosen.get(s.id, s.lower) for s in red.instance.segments)
    )


def _scaled(points) -> tuple[int, list[tuple[int, int]]]:
    scale = 1
    for p in points:
        scale = math.lcm(scale, Fraction(p.x).denominator, Fraction(p.y).denominator)
    return scale, [(int(p.x * scale), int(p.y * scale)) for p in points]


def placement_min_area(pl: Placement) -> TriangleSelection:
    pts = pl.selection
    if len(pts) < 3:
        raise ValueError("need three points")
    _, ipts = _scaled(pts)
    best = None
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        (ax, ay), (bx, by), (cx, cy) = ipts[i], ipts[j], ipts[k]
        v = abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
        if best is None or v < best[0]:
            best = (v, (i, j, k))
            if v == 0:
                break
    return TriangleSelection.of(*(pts[i] for i in best[1]))


# ------------------------------------------------------------ heuristic


def _grid(seg: VSegment, r: int) -> list[Fraction]:
    if seg.is_point:
        return [Fraction(seg.y_lo)]
    return [seg.y_lo + seg.length * Fraction(i, r) for i in range(r + 1)]


def _min2(heights, inst) -> Fraction:
    scale, pts = _scaled([Point(s.x, y) for s, y in zip(inst.segments, heights)])
    best = min(
        abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
        for (ax, ay), (bx, by), (cx, cy) in itertools.combinations(pts, 3)
    )
    return Fraction(best, scale * scale)


def maxmin_heuristic(
    inst: Instance,
    r: int = 4,
    budget: int = 50_000,
    restarts: int = 8,
    seed: int = 0,
    start: Optional[Placement] = None,
    exhaustive: Optional[bool] = None,
) -> tuple[Placement, Fraction]:
    """Best placement found on the per-segment grid, and its smallest
    twice-area (a certified lower bound on the optimum).

    Exhaustive when the grid has at most ``budget`` placements (or when
    ``exhaustive`` is forced), otherwise coordinate ascent from ``start`` and
    from random grid placements.
    """
    if r < 2:
        raise ValueError("grid resolution must be at least 2")
    if len(inst) < 3:
        raise ValueError("need three segments")
    grids = [_grid(s, r) for s in inst.segments]
    size = 1
    for g in grids:
        size *= len(g)
    if exhaustive is None:
        exhaustive = size <= budget
    if exhaustive:
        if size > budget:
            raise BudgetExceeded(f"{size} grid placements exceed the budget {budget}")
        best = max(itertools.product(*grids), key=lambda h: (_min2(h, inst), tuple(-y for y in h)))
        value = _min2(best, inst)
    else:
        rng = random.Random(seed)
        starts = []
        if start is not None:
            starts.append([p.y for p in start.selection])
        while len(starts) < restarts + (start is not None):
            starts.append([rng.choice(g) for g in grids])
        best, value = None, None
        for h in starts:
            h = list(h)
            cur = _min2(h, inst)
            improved = True
            while improved:
                improved = False
                for i, g in enumerate(grids):
                    for y in g:
                        if y == h[i]:
                            continue
                        old, h[i] = h[i], y
                        v = _min2(h, inst)
                        if v > cur:
                            cur, improved = v, True
                        else:
                            h[i] = old
            if value is None or cur > value:
                best, value = tuple(h), cur
    placement = Placement(
        tuple(LabeledPoint(Point(s.x, y), s.id) for s, y in zip(inst.segments, best))
    )
    return placement, Fraction(value)


# ------------------------------------------------------------ persistence


def reduction_to_json(red: Reduction) -> str:
    doc = {
        "cnf": {"num_vars": red.cnf.num_vars, "clauses": [list(c) for c in red.cnf.clauses]},
        "segments": [
            [s.id, format_scalar(s.x), format_scalar(s.y_lo), format_scalar(s.y_hi)]
            for s in red.instance.segments
        ],
        "alpha2": format_scalar(red.alpha2),
        "literal_map": [[v, c, sid] for (v, c), sid in sorted(red.literal_map.items())],
        "bisector": [[sid, a, b] for sid, (a, b) in sorted(red.bisector.items())],
        "designed_zero": sorted(
            sorted([sid, format_scalar(y)] for sid, y in trio) for trio in red.designed_zero
        ),
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def reduction_from_json(text: str) -> Reduction:
    doc = json.loads(text)
    cnf = Cnf(doc["cnf"]["num_vars"], tuple(tuple(c) for c in doc["cnf"]["clauses"]))
    inst = Instance(
        VSegment(int(i), to_scalar(x), to_scalar(lo), to_scalar(hi)) for i, x, lo, hi in doc["segments"]
    )
    return Reduction(
        cnf=cnf,
        instance=inst,
        alpha2=to_scalar(doc["alpha2"]),
        literal_map={(v, c): sid for v, c, sid in doc["literal_map"]},
        fixed_ids=frozenset(s.id for s in inst.segments if s.is_point),
        bisector={sid: (a, b) for sid, a, b in doc["bisector"]},
        designed_zero=frozenset(
            frozenset((sid, to_scalar(y)) for sid, y in trio) for trio in doc["designed_zero"]
        ),
    )

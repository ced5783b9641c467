"""Instance files, generators, SVG figures and run reports.

The command line front end lives in :mod:`imprecise_triangles.cli`; this
module holds everything it needs that is also useful from Python.
"""
from __future__ import annotations

import hashlib
import random
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (
    GeometryError,
    Instance,
    LabeledPoint,
    PolySelection,
    TriangleSelection,
    VSegment,
    chains,
    convex_body,
    format_scalar,
    to_scalar,
)
from .kgon import maxmax_at_most_k, minmax_k_fixed_extremes
from .maxmax import maxmax
from .maxmin_sat import Cnf, maxmin_heuristic, placement_min_area, reduce_sat
from .minmax import minmax
from .minmin import minmin
from . import oracles


class ParseError(GeometryError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class BadParams(ValueError):
    pass


class InvariantViolation(GeometryError):
    """A solver disagreed with its oracle or broke its own postcondition."""


# ---------------------------------------------------------------- text I/O


def _number(token: str, line: int) -> Fraction:
    try:
        return to_scalar(token)
    except ValueError:
        raise ParseError(line, f"not a decimal or p/q number: {token!r}") from None


def parse_instance(text: str) -> Instance:
    """Parse ``n`` followed by ``n`` lines ``x y_lo y_hi``.

    Blank lines and ``#`` comments are ignored.  Segment ids are assigned in
    file order starting at 0.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            rows.append((lineno, content.split()))
    if not rows:
        raise ParseError(1, "empty input")
    first_line, head = rows[0]
    if len(head) != 1:
        raise ParseError(first_line, "first line must hold the segment count only")
    try:
        n = int(head[0])
    except ValueError:
        raise ParseError(first_line, f"segment count is not an integer: {head[0]!r}") from None
    if n < 1:
        raise ParseError(first_line, "segment count must be positive")
    body = rows[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else first_line + 1)
        raise ParseError(where, f"expected {n} segment lines, found {len(body)}")
    segs = []
    for idx, (lineno, tokens) in enumerate(body):
        if len(tokens) != 3:
            raise ParseError(lineno, f"expected 'x y_lo y_hi', got {len(tokens)} tokens")
        x, lo, hi = (_number(t, lineno) for t in tokens)
        segs.append(VSegment(idx, x, lo, hi))
    return Instance(segs)


def serialize_instance(inst: Instance) -> str:
    """Inverse of :func:`parse_instance`; segments are written in id order."""
    segs = sorted(inst.segments, key=lambda s: s.id)
    lines = [str(len(segs))]
    lines += [f"{format_scalar(s.x)} {format_scalar(s.y_lo)} {format_scalar(s.y_hi)}" for s in segs]
    return "\n".join(lines) + "\n"


def instance_digest(inst: Instance) -> str:
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()[:16]


# ---------------------------------------------------------------- generators

KINDS = ("random", "equal", "collinear-uppers", "fixed-extremes", "sat")
_ALIASES = {"equal-length": "equal"}


def random_cnf(num_vars: int, num_clauses: int, rng: random.Random) -> Cnf:
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Cnf(num_vars, tuple(clauses))


def generate(kind: str, n: int, seed: int = 0, **params) -> Instance:
    """Deterministic random instance of the given family.

    Common params: ``span`` (range of lower endpoints, default 10) and
    ``max_len`` (default 8).  ``equal`` takes ``length`` (default 1).  For
    ``sat`` the count ``n`` is the number of variables and ``clauses``
    defaults to ``n``.
    """
    kind = _ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise BadParams(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    if not isinstance(n, int) or n < 1:
        raise BadParams("n must be a positive integer")
    rng = random.Random(f"{kind}:{n}:{seed}")
    span = int(params.pop("span", 10))
    max_len = int(params.pop("max_len", 8))
    if span < 0 or max_len < 0:
        raise BadParams("span and max_len must be non-negative")

    if kind == "sat":
        clauses = int(params.pop("clauses", n))
        _reject_extra(params)
        if n < 3 or clauses < 1:
            raise BadParams("sat needs at least 3 variables and 1 clause")
        return reduce_sat(random_cnf(n, clauses, rng), seed=seed).instance

    length = None
    if kind == "equal":
        try:
            length = to_scalar(params.pop("length", 1))
        except (TypeError, ValueError) as exc:
            raise BadParams(f"bad length: {exc}") from None
        if length < 0:
            raise BadParams("length must be non-negative")
    _reject_extra(params)

    xs = sorted(rng.sample(range(4 * n + 4), n))
    slope = Fraction(rng.randint(-4, 4), 2)
    base = rng.randint(-span, span)
    triples = []
    for i, x in enumerate(xs):
        if kind == "collinear-uppers":
            hi = slope * x + base
            lo = hi - rng.randint(1, max(1, max_len))
        else:
            lo = Fraction(rng.randint(-span, span))
            hi = lo + (length if kind == "equal" else rng.randint(0, max_len))
        if kind == "fixed-extremes" and i in (0, n - 1):
            hi = lo
        triples.append((Fraction(x), Fraction(lo), Fraction(hi)))
    return Instance.from_triples(triples)


def _reject_extra(params):
    if params:
        raise BadParams(f"unexpected parameters: {', '.join(sorted(params))}")


# ---------------------------------------------------------------- SVG

_W, _H, _PAD = 640, 480, 24


def render_svg(
    inst: Instance,
    witness=None,
    placement: Optional[Sequence[LabeledPoint]] = None,
    show_body: bool = False,
    show_chains: bool = False,
) -> str:
    """SVG figure: one ``line`` per segment, the witness as a filled polygon,
    the placement as dots, and optionally the chains and body dashed."""
    xs = [float(s.x) for s in inst.segments]
    ys = [float(v) for s in inst.segments for v in (s.y_lo, s.y_hi)]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    scale = min((_W - 2 * _PAD) / ((x1 - x0) or 1), (_H - 2 * _PAD) / ((y1 - y0) or 1))

    def px(p) -> str:
        return f"{_PAD + (float(p.x) - x0) * scale:.3f},{_H - _PAD - (float(p.y) - y0) * scale:.3f}"

    def pts(seq) -> str:
        return " ".join(px(p) for p in seq)

    svg = ET.Element(
        "svg", xmlns="http://www.w3.org/2000/svg", width=str(_W), height=str(_H),
        viewBox=f"0 0 {_W} {_H}",
    )
    ET.SubElement(svg, "rect", width="100%", height="100%", fill="white")

    if witness is not None:
        verts = witness.vertices if isinstance(witness, (TriangleSelection, PolySelection)) else witness
        ET.SubElement(
            svg, "polygon", {"class": "witness", "points": pts(verts),
                             "fill": "#f4b400", "fill-opacity": "0.45", "stroke": "#b07d00"},
        )
    if show_body and len(inst) >= 3:
        body = convex_body(inst)
        if not body.empty:
            ET.SubElement(
                svg, "polygon", {"class": "body", "points": pts(body.body.vertices), "fill": "none",
                                 "stroke": "#3367d6", "stroke-dasharray": "6 4"},
            )
    if show_chains and len(inst) >= 2:
        for chain in chains(inst):
            ET.SubElement(
                svg, "polyline", {"class": f"chain-{chain.side.value}", "points": pts(chain.vertices),
                                  "fill": "none", "stroke": "#888", "stroke-dasharray": "3 3"},
            )
    for s in inst.segments:
        a, b = px(s.lower).split(","), px(s.upper).split(",")
        ET.SubElement(
            svg, "line", {"x1": a[0], "y1": a[1], "x2": b[0], "y2": b[1], "stroke": "black",
                          "stroke-width": "2", "stroke-linecap": "round", "data-seg": str(s.id)},
        )
    for p in placement or ():
        c = px(p).split(",")
        ET.SubElement(svg, "circle", {"cx": c[0], "cy": c[1], "r": "3.5", "fill": "#d93025"})
    return ET.tostring(svg, encoding="unicode")


# ---------------------------------------------------------------- reports


def decimal_string(value: Fraction, digits: int = 15) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def _point_doc(p: LabeledPoint) -> dict:
    return {"seg": p.seg, "x": format_scalar(p.x), "y": format_scalar(p.y)}


@dataclass
class RunReport:
    problem: str
    digest: str
    value: Fraction  # an area, not twice an area
    witness: tuple[LabeledPoint, ...]
    placement: Optional[tuple[LabeledPoint, ...]] = None
    wall_time: float = 0.0
    bound: str = "exact"  # "exact", or "lower" for the MaxMinArea heuristic
    k: Optional[int] = None
    oracle: Optional[dict] = field(default=None)

    def to_dict(self, timing: bool = False) -> dict:
        doc = {
            "problem": self.problem,
            "digest": self.digest,
            "value": format_scalar(self.value),
            "value_decimal": decimal_string(Fraction(self.value)),
            "bound": self.bound,
            "witness": [_point_doc(p) for p in self.witness],
        }
        if self.k is not None:
            doc["k"] = self.k
        if self.placement is not None:
            doc["placement"] = [_point_doc(p) for p in self.placement]
        if self.oracle is not None:
            doc["oracle"] = self.oracle
        # wall time differs between runs, so it is opt-in to keep reports reproducible
        if timing:
            doc["wall_time"] = round(self.wall_time, 6)
        return doc

    def summary(self) -> str:
        tag = "" if self.bound == "exact" else f" ({self.bound} bound)"
        ids = ", ".join(str(p.seg) for p in self.witness)
        return (
            f"{self.problem}: area {format_scalar(self.value)} "
            f"~ {decimal_string(Fraction(self.value), 10)}{tag}; witness segments [{ids}]"
        )


PROBLEMS = ("maxmax", "minmin", "minmax", "maxmin", "k-maxmax", "k-minmax")


def _check(ok: bool, what: str):
    if not ok:
        raise InvariantViolation(what)


def solve(
    problem: str,
    inst: Instance,
    k: Optional[int] = None,
    oracle: bool = False,
    grid: Optional[int] = None,
) -> RunReport:
    """Run one solver, optionally cross-check it, and wrap the outcome."""
    if problem not in PROBLEMS:
        raise BadParams(f"unknown problem {problem!r}")
    if problem.startswith("k-") and (k is None or k < 3):
        raise BadParams("k-gon problems need k >= 3")
    started = time.perf_counter()
    placement = None
    bound = "exact"
    check = None

    if problem == "maxmax":
        sel = maxmax(inst)
        value, witness = sel.area, sel.vertices
        if oracle:
            ref = oracles.brute_maxmax(inst)
            _check(ref.area2 == sel.area2, "maxmax differs from brute force")
            check = {"name": "brute_maxmax", "value": format_scalar(ref.area)}
    elif problem == "minmin":
        sel = minmin(inst)
        value, witness = sel.area, sel.vertices
        if oracle:
            ref = oracles.brute_minmin(inst)
            _check(ref.area2 == sel.area2, "minmin differs from brute force")
            check = {"name": "brute_minmin", "value": format_scalar(ref.area)}
    elif problem == "minmax":
        res = minmax(inst)
        value, witness, placement = res.value, res.witness.vertices, res.placement
        if oracle:
            r = grid or 64
            got2, _ = oracles.max_triangle_of_points(res.placement)
            _check(got2 == 2 * value, "minmax placement does not realise its value")
            grid2, _, slack2 = oracles.brute_minmax(inst, r=r)
            _check(2 * value <= grid2, "a grid placement beats the exact minmax value")
            _check(grid2 - slack2 <= 2 * value, "grid search exceeds the Lipschitz bracket")
            check = {"name": "brute_minmax", "grid": r, "value": format_scalar(grid2 / 2),
                     "slack": format_scalar(slack2 / 2)}
    elif problem == "maxmin":
        r = grid or 4
        pl, value2 = maxmin_heuristic(inst, r=r, exhaustive=True if oracle else None)
        sel = placement_min_area(pl)
        _check(sel.area2 == value2, "heuristic value does not match its placement")
        value, witness, placement = sel.area, sel.vertices, pl.selection
        bound = "lower"
        if oracle:
            check = {"name": "exhaustive_grid", "grid": r, "value": format_scalar(sel.area)}
    elif problem == "k-maxmax":
        poly = maxmax_at_most_k(inst, k)
        value, witness = poly.area, poly.vertices
        _check(poly.is_true() and poly.is_strictly_convex(), "k-gon witness is not a true convex polygon")
        if oracle:
            ref = oracles.brute_at_most_k(inst, k)
            _check(ref.area2 == poly.area2, "k-gon DP differs from brute force")
            check = {"name": "brute_at_most_k", "value": format_scalar(ref.area)}
    else:
        value, poly = minmax_k_fixed_extremes(inst, k)
        witness = poly.vertices if poly is not None else ()
        if oracle:
            ref2 = oracles.brute_body_at_most_k(inst, k)
            _check(ref2 == 2 * value, "k-gon body value differs from enumeration")
            check = {"name": "brute_body_at_most_k", "value": format_scalar(ref2 / 2)}

    return RunReport(
        problem=problem,
        digest=instance_digest(inst),
        value=Fraction(value),
        witness=tuple(witness),
        placement=tuple(placement) if placement is not None else None,
        wall_time=time.perf_counter() - started,
        bound=bound,
        k=k if problem.startswith("k-") else None,
        oracle=check,
    )

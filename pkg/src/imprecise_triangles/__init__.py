"""Largest and smallest triangles on imprecise points modelled as disjoint
vertical segments, with exact rational arithmetic throughout."""

from .geometry import (
    ConvexBody,
    ConvexPolygon,
    GeometryError,
    Instance,
    LabeledPoint,
    Point,
    PolySelection,
    PreconditionViolated,
    TooFewSegments,
    TriangleSelection,
    ValidationError,
    VSegment,
    chains,
    convex_body,
    onion_two_layers,
    stabbing_line,
)
from .kgon import NoConvexPolygon, maxmax_at_most_k, minmax_k_fixed_extremes
from .maxmax import (
    NoTrueTriangle,
    largest_inscribed_true_triangle,
    maxmax,
    maxmax_equal_length,
)
from .maxmin_sat import (
    Cnf,
    Placement,
    Reduction,
    assignment_to_placement,
    audit,
    maxmin_heuristic,
    placement_min_area,
    reduce_sat,
)
from .minmax import MinMaxResult, minmax, minmax_envelope, minmax_fixed_extremes
from .minmin import collinear_true_triple, minmin
from .app import (
    BadParams,
    ParseError,
    RunReport,
    generate,
    parse_instance,
    render_svg,
    serialize_instance,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "BadParams",
    "Cnf",
    "ConvexBody",
    "ConvexPolygon",
    "GeometryError",
    "Instance",
    "LabeledPoint",
    "MinMaxResult",
    "NoConvexPolygon",
    "NoTrueTriangle",
    "ParseError",
    "Placement",
    "Point",
    "PolySelection",
    "PreconditionViolated",
    "Reduction",
    "RunReport",
    "TooFewSegments",
    "TriangleSelection",
    "VSegment",
    "ValidationError",
    "assignment_to_placement",
    "audit",
    "chains",
    "collinear_true_triple",
    "convex_body",
    "generate",
    "largest_inscribed_true_triangle",
    "maxmax",
    "maxmax_at_most_k",
    "maxmax_equal_length",
    "maxmin_heuristic",
    "minmax",
    "minmax_envelope",
    "minmax_fixed_extremes",
    "minmax_k_fixed_extremes",
    "minmin",
    "onion_two_layers",
    "parse_instance",
    "placement_min_area",
    "reduce_sat",
    "render_svg",
    "serialize_instance",
    "solve",
    "stabbing_line",
]

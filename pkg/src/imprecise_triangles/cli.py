"""Command line interface.

Exit codes: 0 success, 1 validation or parse error, 2 budget exceeded,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .app import (
    KINDS,
    PROBLEMS,
    BadParams,
    InvariantViolation,
    ParseError,
    generate,
    parse_instance,
    render_svg,
    serialize_instance,
    solve,
)
from .geometry import GeometryError, PreconditionViolated, TooFewSegments, ValidationError, format_scalar
from .kgon import NoConvexPolygon
from .maxmax import NoTrueTriangle
from .maxmin_sat import (
    CnfError,
    Cnf,
    assignment_to_placement,
    audit,
    placement_min_area,
    reduce_sat,
    reduction_from_json,
    reduction_to_json,
)
from .oracles import BudgetExceeded

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3

_INPUT_ERRORS = (
    ParseError, ValidationError, BadParams, CnfError, PreconditionViolated,
    TooFewSegments, NoTrueTriangle, NoConvexPolygon, OSError, ValueError,
)


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(exc, _INPUT_ERRORS):
        return EXIT_INPUT
    return EXIT_INTERNAL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="imprecise-triangles",
        description="Extreme-area triangles and polygons on imprecise points (vertical segments).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run a solver on one or more instance files")
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--k", type=int, help="polygon size bound for the k- problems")
    p.add_argument("--input", required=True, nargs="+", metavar="FILE")
    p.add_argument("--json", action="store_true", help="print a JSON report per input")
    p.add_argument("--svg", metavar="OUT", help="write a figure (single input only)")
    p.add_argument("--show-body", action="store_true", help="draw the convex body in the figure")
    p.add_argument("--show-chains", action="store_true", help="draw the top and bottom chains")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--grid", type=int, help="grid resolution for minmax oracle / maxmin search")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON reports")
    p.add_argument("--jobs", type=int, default=1, help="solve several inputs in parallel")

    g = sub.add_parser("gen", help="write a random instance file")
    g.add_argument("--kind", required=True, choices=KINDS + ("equal-length",))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--len", dest="length", help="segment length for --kind equal")
    g.add_argument("--out", required=True, metavar="FILE")

    s = sub.add_parser("sat", help="3-SAT reduction tools")
    ssub = s.add_subparsers(dest="sat_command", required=True)
    r = ssub.add_parser("reduce", help="build the MaxMinArea instance of a DIMACS formula")
    r.add_argument("--cnf", required=True, metavar="FILE")
    r.add_argument("--out", required=True, metavar="FILE")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--report", action="store_true", help="print the collinearity audit")
    pl = ssub.add_parser("place", help="evaluate the placement of a truth assignment")
    pl.add_argument("--reduction", required=True, metavar="FILE")
    pl.add_argument("--assign", required=True, metavar="BITSTRING")
    return parser


def _solve_file(path: str, args) -> tuple[int, str, str]:
    """Returns (exit code, stdout text, stderr text); safe to run in a worker."""
    try:
        inst = parse_instance(Path(path).read_text())
        report = solve(args.problem, inst, k=args.k, oracle=args.oracle, grid=args.grid)
    except Exception as exc:  # reported, not raised, so workers never die
        return _exit_code(exc), "", f"{path}: {type(exc).__name__}: {exc}"
    if args.json:
        doc = report.to_dict(timing=args.timing)
        doc["input"] = path
        out = json.dumps(doc, sort_keys=True)
    else:
        out = report.summary()
    if args.svg:
        Path(args.svg).write_text(
            render_svg(inst, report.witness, report.placement, args.show_body, args.show_chains)
        )
    return EXIT_OK, out, ""


def _cmd_solve(args) -> int:
    if args.svg and len(args.input) > 1:
        raise BadParams("--svg needs a single input file")
    if args.jobs > 1 and len(args.input) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_solve_file, args.input, [args] * len(args.input)))
    else:
        results = [_solve_file(path, args) for path in args.input]
    code = EXIT_OK
    for rc, out, err in results:
        if out:
            print(out)
        if err:
            print(err, file=sys.stderr)
        code = max(code, rc)
    return code


def _cmd_gen(args) -> int:
    params = {}
    if args.length is not None:
        if args.kind not in ("equal", "equal-length"):
            raise BadParams("--len only applies to --kind equal")
        params["length"] = args.length
    inst = generate(args.kind, args.n, args.seed, **params)
    Path(args.out).write_text(serialize_instance(inst))
    return EXIT_OK


def _cmd_sat(args) -> int:
    if args.sat_command == "reduce":
        cnf = Cnf.from_dimacs(Path(args.cnf).read_text())
        red = reduce_sat(cnf, seed=args.seed)
        Path(args.out).write_text(reduction_to_json(red))
        if args.report:
            rep = audit(red)
            print(json.dumps({
                "segments": len(red.instance),
                "alpha2": format_scalar(red.alpha2),
                "clean": rep.clean,
                "unexpected_zero": len(rep.unexpected_zero),
                "missing_zero": len(rep.missing_zero),
                "strip_violations": len(rep.strip_violations),
            }, sort_keys=True))
            if not rep.clean:
                raise InvariantViolation("reduction audit is not clean")
        return EXIT_OK
    red = reduction_from_json(Path(args.reduction).read_text())
    bits = args.assign.strip()
    if len(bits) != red.cnf.num_vars or set(bits) - {"0", "1"}:
        raise BadParams(f"--assign needs {red.cnf.num_vars} characters from '01'")
    assign = [b == "1" for b in bits]
    sel = placement_min_area(assignment_to_placement(red, assign))
    print(json.dumps({
        "assignment": bits,
        "satisfies": red.cnf.satisfied_by(assign),
        "min_area2": format_scalar(sel.area2),
        "alpha2": format_scalar(red.alpha2),
        "reaches_alpha": sel.area2 == red.alpha2,
        "witness": [p.seg for p in sel.vertices],
    }, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"solve": _cmd_solve, "gen": _cmd_gen, "sat": _cmd_sat}[args.command]
    try:
        return handler(args)
    except (GeometryError, BudgetExceeded, *_INPUT_ERRORS) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())

import json
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from helpers import PEAK, UNIT3, instances
from imprecise_triangles import app
from imprecise_triangles.app import (
    BadParams,
    ParseError,
    generate,
    parse_instance,
    render_svg,
    serialize_instance,
    solve,
)
from imprecise_triangles.cli import main
from imprecise_triangles.geometry import ValidationError, cross, to_scalar
from imprecise_triangles.maxmax import maxmax

SVG = "{http://www.w3.org/2000/svg}"

# ---------------------------------------------------------------- parsing


def test_parse_three_unit_segments():
    parsed = parse_instance("3\n0 0 1\n1 0 1\n2 0 1")
    assert parsed == UNIT3


@pytest.mark.parametrize(
    "text, rule",
    [("1\n0 1 0", "y_lo>y_hi"), ("2\n0 0 1\n0 2 3", "duplicate-x")],
)
def test_parse_validation_errors(text, rule):
    with pytest.raises(ValidationError) as err:
        parse_instance(text)
    assert err.value.rule == rule


@pytest.mark.parametrize(
    "text, line",
    [("", 1), ("x\n", 1), ("2\n0 0 1\n", 3), ("1\n0 0\n", 2), ("1\n0 0 1\n2 0 1\n", 3), ("1\n0 a 1\n", 2)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        parse_instance(text)
    assert err.value.line == line


def test_decimals_and_rationals_are_exact():
    parsed = parse_instance("# comment\n2\n0.1 -1/3 2.5e1\n\n7/2 0 0  # trailing\n")
    s0, s1 = parsed.segments
    assert (s0.x, s0.y_lo, s0.y_hi) == (F(1, 10), F(-1, 3), F(25))
    assert s1.x == F(7, 2) and s1.is_point


@settings(max_examples=100)
@given(instances(min_n=1, max_n=8))
def test_serialise_round_trip(case):
    assert parse_instance(serialize_instance(case)) == case


# ---------------------------------------------------------------- generators


def test_equal_length_generator():
    made = generate("equal-length", 3, seed=1, length=1)
    assert len(made) == 3 and {s.length for s in made} == {1}


@pytest.mark.parametrize("seed", range(5))
def test_collinear_uppers_generator(seed):
    made = generate("collinear-uppers", 5, seed=seed)
    ups = [s.upper for s in made]
    assert all(cross(ups[0], ups[1], u) == 0 for u in ups[2:])


def test_fixed_extremes_generator():
    made = generate("fixed-extremes", 4, seed=9)
    assert made.leftmost.is_point and made.rightmost.is_point


@pytest.mark.parametrize("kind", ["random", "equal", "collinear-uppers", "fixed-extremes"])
def test_generators_are_deterministic(kind):
    assert generate(kind, 7, seed=4) == generate(kind, 7, seed=4)
    assert serialize_instance(generate(kind, 7, seed=4)) != serialize_instance(generate(kind, 7, seed=5))


def test_sat_generator_builds_a_reduction():
    made = generate("sat", 3, seed=2, clauses=2)
    assert len(made) > 6 and sum(s.is_point for s in made) >= 6


@pytest.mark.parametrize(
    "kind, n, params",
    [("spiral", 3, {}), ("random", 0, {}), ("equal", 3, {"length": -1}), ("random", 3, {"bogus": 1}),
     ("sat", 2, {})],
)
def test_bad_generator_params(kind, n, params):
    with pytest.raises(BadParams):
        generate(kind, n, **params)


# ---------------------------------------------------------------- SVG


def _svg(text):
    return ET.fromstring(text)


def test_svg_has_one_line_per_segment():
    made = generate("random", 9, seed=3)
    root = _svg(render_svg(made))
    assert len(root.findall(f"{SVG}line")) == 9
    assert root.findall(f"{SVG}polygon") == []


def test_svg_witness_triangle():
    root = _svg(render_svg(PEAK, maxmax(PEAK)))
    polys = root.findall(f"{SVG}polygon")
    assert len(polys) == 1 and len(polys[0].get("points").split()) == 3


def test_svg_body_and_chains():
    made = generate("fixed-extremes", 6, seed=2)
    root = _svg(render_svg(made, show_body=True, show_chains=True))
    assert [p.get("class") for p in root.findall(f"{SVG}polygon")] == ["body"]
    assert len(root.findall(f"{SVG}polyline")) == 2


# ---------------------------------------------------------------- reports


@pytest.mark.parametrize("problem", ["maxmax", "minmin", "minmax", "maxmin"])
def test_reports_are_reproducible(problem):
    made = generate("random", 6, seed=11)
    a = json.dumps(solve(problem, made, oracle=True).to_dict(), sort_keys=True)
    b = json.dumps(solve(problem, made, oracle=True).to_dict(), sort_keys=True)
    assert a == b


def test_report_value_round_trips():
    rep = solve("minmax", generate("random", 6, seed=1))
    doc = rep.to_dict(timing=True)
    assert to_scalar(doc["value"]) == rep.value
    assert doc["wall_time"] >= 0 and "wall_time" not in rep.to_dict()
    assert abs(float(doc["value_decimal"]) - float(rep.value)) < 1e-9


def test_k_problems_need_k():
    with pytest.raises(BadParams):
        solve("k-maxmax", UNIT3)


# ---------------------------------------------------------------- CLI


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_cli_gen_and_solve(tmp_path, capsys):
    out = str(tmp_path / "a.txt")
    assert main(["gen", "--kind", "equal", "--n", "6", "--seed", "2", "--len", "3/2", "--out", out]) == 0
    assert {s.length for s in parse_instance(open(out).read())} == {F(3, 2)}
    svg = str(tmp_path / "a.svg")
    assert main(["solve", "--problem", "maxmax", "--input", out, "--json", "--oracle", "--svg", svg]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["problem"] == "maxmax" and doc["oracle"]["value"] == doc["value"]
    assert len(_svg(open(svg).read()).findall(f"{SVG}line")) == 6


@pytest.mark.parametrize("problem, extra", [("k-maxmax", ["--k", "4"]), ("minmin", []), ("minmax", ["--grid", "16"])])
def test_cli_problems_with_oracle(tmp_path, capsys, problem, extra):
    path = _write(tmp_path, "i.txt", serialize_instance(generate("random", 6, seed=8)))
    assert main(["solve", "--problem", problem, "--input", path, "--oracle", *extra]) == 0
    assert problem in capsys.readouterr().out


def test_cli_k_minmax_with_body(tmp_path, capsys):
    path = _write(tmp_path, "f.txt", serialize_instance(generate("fixed-extremes", 7, seed=3)))
    svg = str(tmp_path / "f.svg")
    code = main(["solve", "--problem", "k-minmax", "--k", "4", "--input", path, "--oracle",
                 "--svg", svg, "--show-body"])
    assert code == 0
    classes = [p.get("class") for p in _svg(open(svg).read()).findall(f"{SVG}polygon")]
    assert "body" in classes


def test_cli_exit_code_for_bad_input(tmp_path, capsys):
    bad = _write(tmp_path, "bad.txt", "1\n0 1 0\n")
    assert main(["solve", "--problem", "maxmax", "--input", bad]) == 1
    assert "y_lo>y_hi" in capsys.readouterr().err
    missing = str(tmp_path / "nope.txt")
    assert main(["solve", "--problem", "maxmax", "--input", missing]) == 1
    fixed = _write(tmp_path, "u.txt", serialize_instance(UNIT3))
    assert main(["solve", "--problem", "k-minmax", "--k", "3", "--input", fixed]) == 1


def test_cli_exit_code_for_budget(tmp_path, capsys):
    big = _write(tmp_path, "big.txt", serialize_instance(generate("random", 30, seed=1)))
    assert main(["solve", "--problem", "maxmin", "--input", big, "--oracle", "--grid", "8"]) == 2


def test_cli_exit_code_for_invariant_violation(tmp_path, capsys, monkeypatch):
    real = app.maxmax

    def off_by_one(case):
        sel = real(case)
        return type(sel)(sel.a, sel.b, sel.c, sel.area2 + 1)

    monkeypatch.setattr(app, "maxmax", off_by_one)
    path = _write(tmp_path, "i.txt", serialize_instance(PEAK))
    assert main(["solve", "--problem", "maxmax", "--input", path, "--oracle"]) == 3
    assert "InvariantViolation" in capsys.readouterr().err


def test_cli_several_inputs(tmp_path, capsys):
    paths = [_write(tmp_path, f"{i}.txt", serialize_instance(generate("random", 5, seed=i))) for i in range(3)]
    assert main(["solve", "--problem", "maxmax", "--input", *paths, "--json"]) == 0
    docs = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [d["input"] for d in docs] == paths


def test_cli_sat_round_trip(tmp_path, capsys):
    cnf = _write(tmp_path, "f.cnf", "p cnf 3 2\n-1 2 -3 0\n1 2 3 0\n")
    red = str(tmp_path / "r.json")
    assert main(["sat", "reduce", "--cnf", cnf, "--out", red, "--report"]) == 0
    assert json.loads(capsys.readouterr().out)["clean"] is True
    assert main(["sat", "place", "--reduction", red, "--assign", "010"]) == 0
    good = json.loads(capsys.readouterr().out)
    assert good["satisfies"] and good["reaches_alpha"]
    assert main(["sat", "place", "--reduction", red, "--assign", "101"]) == 0
    bad = json.loads(capsys.readouterr().out)
    assert not bad["satisfies"] and bad["min_area2"] == "0"
    assert main(["sat", "place", "--reduction", red, "--assign", "01"]) == 1


def test_cli_rejects_malformed_cnf(tmp_path, capsys):
    cnf = _write(tmp_path, "f.cnf", "p cnf 3 1\n1 2 0\n")
    assert main(["sat", "reduce", "--cnf", cnf, "--out", str(tmp_path / "r.json")]) == 1

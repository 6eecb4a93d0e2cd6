import json
import xml.etree.ElementTree as ET
from math import pi

import numpy as np
import pytest

from centresym import fixtures as F
from centresym.branches import CausticBranch, GlueingScheme
from centresym.cli import main
from centresym.curve import build_curve
from centresym.emit import emit_outputs, read_event_counts, write_branch_csv
from centresym.errors import ParseError, ValidationError, VanishingRosetteCurvature
from centresym.pipeline import AnalysisConfig, branch_key, run_analysis
from centresym.specio import dump_spec, parse_curve_file, parse_curve_text

from conftest import analysed

ROSETTE_TEXT = """{
  "kind": "support",
  "period": "4pi",
  "constant": 14,
  "terms": [{"freq": "3/2", "cos": 3.0}, {"freq": "5/2", "sin": 0.2}]
}"""

CIRCLE_TEXT = """{"kind": "fourier", "period": "2pi",
 "x": {"terms": [{"freq": 1, "cos": 1}]},
 "y": {"terms": [{"freq": 1, "sin": 1}]}}"""


# -- parsing ---------------------------------------------------------------------


def test_parse_rosette_text():
    spec = parse_curve_text(ROSETTE_TEXT)
    c = build_curve(spec)
    assert c.period == pytest.approx(4 * pi)
    t = np.linspace(0, 4 * pi, 7)
    assert np.allclose(c.support_value(t), 14 + 3 * np.cos(1.5 * t) + 0.2 * np.sin(2.5 * t))
    assert c.rotation == 2


def test_parse_circle_text():
    c = build_curve(parse_curve_text(CIRCLE_TEXT))
    t = c.grid(16)
    assert np.allclose(c.position(t), np.column_stack([np.cos(t), np.sin(t)]), atol=1e-15)


def test_parse_rejects_vanishing_rosette_curvature():
    text = '{"kind": "support", "constant": 1, "terms": [{"freq": 3, "cos": 0.2}]}'
    with pytest.raises(VanishingRosetteCurvature):
        parse_curve_text(text)


def test_syntax_errors_carry_line_and_column():
    with pytest.raises(ParseError) as exc:
        parse_curve_text('{\n  "kind": "support",\n  "constant": 14,,\n}')
    assert (exc.value.line, exc.value.column) == (3, 18)


def test_semantic_errors_point_at_offending_key():
    text = '{\n  "kind": "support",\n  "constant": 14,\n  "terms": [{"freq": "x/2", "cos": 3}]\n}'
    with pytest.raises(ParseError) as exc:
        parse_curve_text(text)
    assert exc.value.line == 4
    with pytest.raises(ParseError) as exc:
        parse_curve_text('{"kind": "spline", "terms": []}')
    assert exc.value.line == 1 and exc.value.column == 2


def test_wrong_period_is_a_validation_error():
    text = CIRCLE_TEXT.replace('"2pi"', '"3pi"')
    with pytest.raises(ValidationError):
        parse_curve_text(text)


@pytest.mark.parametrize("name", sorted(F.NAMED))
def test_dump_parse_round_trip(name):
    spec = F.NAMED[name]()
    again = parse_curve_text(dump_spec(spec), validate=False)
    assert again == spec


def test_parse_curve_file_reads_paths(tmp_path):
    p = tmp_path / "rosette.json"
    p.write_text(ROSETTE_TEXT, encoding="utf-8")
    spec = parse_curve_file(str(p))
    assert spec.name == "rosette"
    assert parse_curve_file(ROSETTE_TEXT).constant == 14


# -- analysis ----------------------------------------------------------------------


def test_rosette_report(rosette):
    report, _ = rosette
    css = report.branches_of("css")
    assert len(css) == 2
    assert sum(1 for b in css if b.asymptotes) == 1
    assert sum(b.cusps for b in css) % 2 == 1
    assert sum(b.cusps for b in report.branches_of("wigner")) % 2 == 0
    assert report.curve["rotation_number"] == 2 and report.curve["inflexions"] == 0


def test_circle_report_is_non_generic_and_collapses():
    report, _ = analysed("circle")
    assert report.genericity["overall"] is False
    assert max(b.spread for b in report.branches_of("css")) < 1e-8


def test_oval_report_css_cusps(oval):
    report, _ = oval
    assert [b.cusps for b in report.branches_of("css")] == [3]


def test_stage_failure_still_gives_partial_report(tmp_path):
    report, geo = run_analysis(F.undulation())
    assert [f["stage"] for f in report.failures] == ["decomposition"]
    assert report.curve["rotation_number"] == 1
    assert report.genericity["overall"] is False
    paths = emit_outputs(report, geo, tmp_path)
    data = json.loads((tmp_path / "report.json").read_text())
    assert data["failures"][0]["error"] == "DegenerateRoot"
    assert len(paths) == 1


def test_config_validation():
    with pytest.raises(ValidationError):
        AnalysisConfig(samples_per_period=32)
    with pytest.raises(ValidationError):
        AnalysisConfig(root_tol=0.0)
    with pytest.raises(ValidationError):
        AnalysisConfig(kinds=("css", "evolute"))
    with pytest.raises(ValidationError):
        AnalysisConfig(kinds=("equidistant",))


# -- emission ----------------------------------------------------------------------


def _files(d):
    return {p.name: p.read_bytes() for p in sorted(d.iterdir())}


def test_report_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["analyze", "@oval", "--out", str(d), "--no-timing", "--svg"]) == 0
    fa, fb = _files(a), _files(b)
    assert fa == fb
    assert "timing" not in json.loads(fa["report.json"])


def test_kinds_css_only(tmp_path):
    assert main(["analyze", "@oval", "--out", str(tmp_path), "--kinds", "css"]) == 0
    names = [p.name for p in tmp_path.iterdir()]
    assert any(n.startswith("css") for n in names)
    assert not any(n.startswith("wigner") for n in names)


def test_equidistant_lambdas_emit_one_csv_each(tmp_path):
    assert main(["analyze", "@oval", "--out", str(tmp_path), "--kinds", "css", "--lambdas", "0.25,0.5"]) == 0
    eq = sorted(p.name for p in tmp_path.glob("equidistant*.csv"))
    assert len(eq) == 2


def test_empty_branch_csv_has_header_only(tmp_path):
    empty = CausticBranch("css", GlueingScheme(0, (), "closed_same_pair", 0), np.zeros(0), np.zeros(0), np.zeros((0, 2)), [])
    path = write_branch_csv(empty, tmp_path / "empty.csv")
    assert path.read_text() == "s1,s2,x,y,event\n"


@pytest.mark.parametrize("name", ["two_rosette", "oval", "two_inflexions", "four_inflexions", "circle", "ellipse"])
def test_report_counts_match_csv_events(name, tmp_path):
    report, geo = analysed(name)
    emit_outputs(report, geo, tmp_path, timing=False)
    for rec in report.branches:
        counts = read_event_counts(tmp_path / rec.file)
        assert sum(v for k, v in counts.items() if k.endswith("cusp")) == rec.cusps
        assert counts.get("asymptote", 0) == rec.asymptotes
        assert counts.get("double_tangent", 0) == rec.double_tangents


def test_branch_files_are_named_by_kind_and_scheme(rosette):
    report, geo = rosette
    keys = [branch_key(b) for kind in geo.branches for b in geo.branches[kind]]
    assert len(set(keys)) == len(keys)
    assert sorted(r.file for r in report.branches) == sorted(k + ".csv" for k in keys)


def test_svg_is_well_formed(rosette, tmp_path):
    report, geo = rosette
    emit_outputs(report, geo, tmp_path, svg=True)
    root = ET.parse(tmp_path / "figure.svg").getroot()
    assert root.tag.endswith("svg")
    assert root.get("viewBox") == "0 0 1000 1000"
    ns = {"s": "http://www.w3.org/2000/svg"}
    lines = root.findall(".//s:polyline", ns)
    dashes = {el.get("stroke-dasharray") for el in lines}
    assert None in dashes and "8 5" in dashes and "1 4" in dashes
    assert len(root.findall(".//s:circle", ns)) >= 9
    # everything drawn sits inside the clipped group; the curve itself fits the margin
    assert root.find("s:g", ns).get("clip-path") == "url(#view)"
    curve = root.find(".//s:g[@id='curve']/s:polygon", ns)
    xy = np.array([list(map(float, p.split(","))) for p in curve.get("points").split()])
    assert xy.min() >= 50 - 1e-6 and xy.max() <= 950 + 1e-6


# -- command line --------------------------------------------------------------------


def test_verify_exit_codes(capsys):
    assert main(["verify", "@oval"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out
    assert main(["verify", "@circle", "--theorems", "parity"]) == 1


def test_verify_rejects_unknown_group(capsys):
    assert main(["verify", "@oval", "--theorems", "bogus"]) == 2


def test_cli_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "support",\n "terms": [}', encoding="utf-8")
    assert main(["analyze", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert "line 2" in capsys.readouterr().err


def test_cli_missing_file_exit_code(tmp_path):
    assert main(["verify", str(tmp_path / "nope.json")]) == 2


def test_oracle_subcommand_on_oval(capsys):
    assert main(["oracle", "@oval", "--samples", "4000"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["max_relative"] < 1e-3 and data["min_ratio"] >= 1.8

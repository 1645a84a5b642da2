"""Smoke tests for the python bindings and the installed CLI.

The compiled module is found via PYTHONPATH (set by ctest to the build
tree); the CLI path arrives in PLATEGEN_CLI.
"""

import os
import pathlib
import subprocess

import pytest

import plategen as pg

REPO = pathlib.Path(__file__).resolve().parents[2]


def test_algebra_round_trip():
    s = pg.Shape()
    s.add_segment(pg.Layer.LAYOUT, (0, 0), (2, 0))
    s.add_segment(pg.Layer.LAYOUT, (1, 0), (4, 0))
    assert s.n_segments() == 1  # collinear touching runs merge
    seg = s.segments()[0]
    assert (str(seg.p1), str(seg.p2)) == ("(0,0)", "(4,0)")

    t = pg.Shape()
    t.add_segment(pg.Layer.LAYOUT, (1, 0), (2, 0))
    assert pg.Shape.part_of(t, s)
    assert (s - t).n_segments() == 2
    assert (s - t) + t == s
    assert (s & t) == t

    json_text = pg.shape_to_json(s)
    assert pg.shape_from_json(json_text) == s


def test_rationals_are_exact():
    third = pg.Rational(1, 3)
    assert str(third + third + third) == "1"
    assert pg.Rational("-5/10") == pg.Rational(-1, 2)
    with pytest.raises(pg.InvalidGeometry):
        pg.Rational(1, 0)


def test_transform_group():
    t = pg.Transform(rot=1, scale=pg.Rational(2), translate=pg.Point(3, 0))
    p = t.apply(pg.Point(1, 0))
    assert (str(p.x), str(p.y)) == ("3", "2")
    assert pg.Transform.compose(t.inverse(), t) == pg.Transform()


def test_matching_finds_rotations():
    canvas = pg.Shape()
    canvas.add_segment(pg.Layer.LAYOUT, (0, 0), (4, 0))
    canvas.add_segment(pg.Layer.LAYOUT, (0, 0), (0, 4))
    probe = pg.Shape()
    probe.add_segment(pg.Layer.LAYOUT, (0, 0), (4, 0))
    plain = pg.find_matches(probe, canvas, pg.MatchOptions())
    turned = pg.find_matches(probe, canvas, pg.MatchOptions(rotate=True))
    assert len(plain) == 1
    assert len(turned) == 2


def test_script_round_trip_and_run():
    source = (REPO / "grammars" / "fig3.sgs").read_text()
    program = pg.parse_program(source)
    assert pg.validate_program(program) == []
    formatted = pg.format_program(program)
    assert pg.format_program(pg.parse_program(formatted)) == formatted

    result = pg.run(program, program.shape("initial"))
    assert result.shape.n_segments() == 12  # 4*(n+1) with the shipped loop 2
    replayed = pg.replay(program, result.trace, program.shape("initial"))
    assert replayed == result.shape


def test_durand_plate_and_stages():
    spec = pg.durand.PlateSpec(plate=5, nx=1, ny=1)
    shape, trace = pg.durand.generate_plate(spec)
    assert format(shape.digest(), "016x") == "98a0d1a359fc0701"
    assert [snap.tag for snap in trace.snapshots] == [
        "seed", "layout", "broken", "marked", "built", "corridored", "detailed",
    ]
    layout = pg.durand.generate_layout(2, 2)
    marks = pg.durand.mark_rooms(layout)
    assert sum(1 for p in marks.points() if p.tag == "courtyard_11x11") == 4
    assert pg.durand.constants()["interaxis"] == pg.Rational(11, 4)
    with pytest.raises(pg.UnknownBreaker):
        pg.durand.PlateSpec(breakers=["trapdoor"]).resolved()


def test_svg_rendering():
    shape, _ = pg.durand.generate_plate(pg.durand.PlateSpec(plate=4))
    svg = pg.render_svg(shape)
    assert svg.startswith("<svg ")
    assert svg.count("<line") == shape.n_segments()


def test_cli_generates_identical_bytes(tmp_path):
    cli = os.environ.get("PLATEGEN_CLI")
    if not cli:
        pytest.skip("PLATEGEN_CLI not set")
    out = []
    for name in ("a.svg", "b.svg"):
        path = tmp_path / name
        subprocess.run(
            [cli, "durand", "--plate", "4", "-o", str(path)],
            check=True,
            capture_output=True,
        )
        out.append(path.read_bytes())
    assert out[0] == out[1]

    bad = subprocess.run(
        [cli, "validate", str(tmp_path / "missing.sgs")], capture_output=True
    )
    assert bad.returncode == 2

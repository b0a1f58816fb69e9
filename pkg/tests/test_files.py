"""Instance files: symbolic angles, body/fan serialization round trips."""

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sphereplanks import make_stream, octant_body, random_body, random_lune
from sphereplanks.covering import make_hemisphere_fan, make_lune_fan
from sphereplanks.files import (FileFormatError, body_from_dict, body_to_dict,
                                fan_from_dict, fan_to_dict, load_body,
                                load_fan, parse_angle, save_body, save_fan)


@pytest.mark.parametrize("text,value", [
    ("pi", math.pi),
    ("pi/2", math.pi / 2),
    ("3pi/4", 3 * math.pi / 4),
    ("2*pi", 2 * math.pi),
    (" pi / 3 ", math.pi / 3),
    ("0.5", 0.5),
    ("1e-3", 1e-3),
])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=0.0)


@pytest.mark.parametrize("bad", ["pi/0", "twopi", "", "pi/2/3"])
def test_parse_angle_rejects(bad):
    with pytest.raises(FileFormatError):
        parse_angle(bad)


@given(num=st.integers(min_value=1, max_value=12),
       den=st.integers(min_value=1, max_value=12))
def test_parse_angle_fractions(num, den):
    assert parse_angle(f"{num}pi/{den}") == float(num) / den * math.pi


def test_body_dict_roundtrip():
    body = octant_body(2)
    back = body_from_dict(body_to_dict(body))
    assert np.allclose(np.sort(back.h_normals, axis=0),
                       np.sort(body.h_normals, axis=0))
    assert back.tag == body.tag


def test_body_file_roundtrip(tmp_path):
    rng = make_stream(1)
    for maker in (lambda: random_body(3, rng),
                  lambda: random_lune(2, rng, angle=0.75),
                  lambda: octant_body(2)):
        body = maker()
        path = tmp_path / "body.json"
        save_body(body, path)
        back = load_body(path)
        assert back.n == body.n
        assert np.allclose(np.sort(back.v_generators, axis=0),
                           np.sort(body.v_generators, axis=0), atol=1e-12)
        if body.lune is not None:
            assert back.lune is not None
            assert back.lune.angle == body.lune.angle  # exact through JSON


def test_body_file_is_deterministic(tmp_path):
    body = random_body(2, make_stream(2))
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_body(body, p1)
    save_body(body, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_body_dict_validation():
    with pytest.raises(FileFormatError):
        body_from_dict({"rep": "H"})  # missing dim
    with pytest.raises(FileFormatError):
        body_from_dict({"dim": 2, "rep": "X", "normals": [[1, 0, 0]]})
    with pytest.raises(FileFormatError):
        # Well-formed JSON but an invalid body underneath.
        body_from_dict({"dim": 2, "rep": "V",
                        "generators": (np.vstack([np.eye(3),
                                                  -np.eye(3)])).tolist()})


def test_load_body_reports_line_and_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dim": 2,\n  "rep": }')
    with pytest.raises(FileFormatError, match=r"line 2, col"):
        load_body(path)


def test_fan_roundtrip(tmp_path):
    inst = make_lune_fan(2, [0.0, math.pi / 2, math.pi, 3 * math.pi / 2,
                             2 * math.pi], widen=0.01)
    path = tmp_path / "fan.json"
    save_fan(inst, path)
    back = load_fan(path)
    f0 = inst.metadata["fan"]
    f1 = back.metadata["fan"]
    assert np.array_equal(f0.boundary_angles, f1.boundary_angles)
    assert np.array_equal(f0.widen, f1.widen)
    assert back.B.radius == inst.B.radius
    assert len(back.bodies) == len(inst.bodies)


def test_hemisphere_fan_roundtrip(tmp_path):
    inst = make_hemisphere_fan(2, [0.0, math.pi / 2, math.pi], widen=0.05)
    path = tmp_path / "hemifan.json"
    save_fan(inst, path)
    back = load_fan(path)
    assert back.metadata["construction"] == "hemisphere-fan"
    assert back.B.radius == math.pi / 2
    assert np.array_equal(back.metadata["fan"].widen,
                          inst.metadata["fan"].widen)


def test_fan_dict_sum_field():
    inst = make_lune_fan(2, [0.0, math.pi, 2 * math.pi])
    d = fan_to_dict(inst)
    assert d["sum_inradii"] == math.pi
    assert d["kind"] == "lune-fan"
    # Round trip through JSON text keeps the exact float.
    d2 = json.loads(json.dumps(d))
    assert d2["sum_inradii"] == math.pi


def test_fan_dict_validation():
    with pytest.raises(FileFormatError):
        fan_from_dict({"kind": "lune-fan"})

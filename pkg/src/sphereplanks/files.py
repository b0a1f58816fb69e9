"""Instance serialization: body files, fan files, symbolic angles.

JSON is the canonical interchange format.  Floats are serialized with
Python's shortest round-trip repr, so identical inputs give byte-identical
files.  Angles in configs may be symbolic fractions of pi ("pi/4",
"3pi/2") so that fan sums stay exact.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction

import numpy as np

from . import bodies as bd
from .covering import make_hemisphere_fan, make_lune_fan
from .sphere import SphericalCap

_ANGLE_RE = re.compile(r"^\s*(\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")


class FileFormatError(ValueError):
    """Malformed instance file."""


def parse_angle(text):
    """Parse an angle: a float literal or a fraction of pi like "pi/4"."""
    s = str(text).strip().lower()
    m = _ANGLE_RE.match(s)
    if m:
        num = int(m.group(1) or 1)
        den = int(m.group(2) or 1)
        if den == 0:
            raise FileFormatError(f"zero denominator in angle {text!r}")
        return float(Fraction(num, den)) * math.pi
    try:
        return float(s)
    except ValueError:
        raise FileFormatError(f"cannot parse angle {text!r}") from None


def body_to_dict(body):
    out = {
        "dim": body.n,
        "rep": "both",
        "normals": body.h_normals.tolist(),
        "generators": body.v_generators.tolist(),
    }
    tags = {}
    if body.tag:
        tags["tag"] = body.tag
    if body.lune is not None:
        tags["lune_angle"] = body.lune.angle
    if tags:
        out["tags"] = tags
    return out


def body_from_dict(data):
    try:
        n = int(data["dim"])
        rep = data.get("rep", "both")
        normals = data.get("normals")
        generators = data.get("generators")
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"bad body file: {exc}") from None
    if rep not in ("H", "V", "both"):
        raise FileFormatError(f"bad rep field {rep!r}")
    H = np.asarray(normals, dtype=float) if rep in ("H", "both") else None
    V = np.asarray(generators, dtype=float) if rep in ("V", "both") else None
    tags = data.get("tags", {}) or {}
    try:
        body = bd.make_body(n, h_normals=H, v_generators=V,
                            tag=tags.get("tag", ""))
    except bd.BodyError as exc:
        raise FileFormatError(f"invalid body: {exc}") from None
    angle = tags.get("lune_angle")
    if angle is not None and H is not None and H.shape[0] <= 2:
        body = bd.make_lune(n, H[0], H[-1], tag=tags.get("tag", "lune"),
                            angle=float(angle))
    return body


def save_body(body, path):
    with open(path, "w") as fh:
        json.dump(body_to_dict(body), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_body(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(
                f"{path}: line {exc.lineno}, col {exc.colno}: {exc.msg}"
            ) from None
    return body_from_dict(data)


def fan_to_dict(inst):
    fan = inst.metadata["fan"]
    out = {
        "dim": inst.B.n,
        "kind": inst.metadata.get("construction", "lune-fan"),
        "boundary_angles": fan.boundary_angles.tolist(),
        "ball": {"center": inst.B.center.tolist(),
                 "radius": inst.B.radius},
        "sum_inradii": math.fsum(b.lune.angle for b in inst.bodies) / 2.0,
    }
    if fan.widen is not None:
        out["widen"] = fan.widen.tolist()
    return out


def fan_from_dict(data):
    try:
        n = int(data["dim"])
        kind = data.get("kind", "lune-fan")
        angles = [float(a) for a in data["boundary_angles"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"bad fan file: {exc}") from None
    widen = data.get("widen")
    if kind == "hemisphere-fan":
        return make_hemisphere_fan(n, angles, widen=widen)
    ball = data.get("ball")
    cap = None
    if ball is not None:
        cap = SphericalCap(center=np.asarray(ball["center"], dtype=float),
                           radius=float(ball["radius"]))
    return make_lune_fan(n, angles, widen=widen, ball=cap)


def save_fan(inst, path):
    with open(path, "w") as fh:
        json.dump(fan_to_dict(inst), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_fan(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(
                f"{path}: line {exc.lineno}, col {exc.colno}: {exc.msg}"
            ) from None
    return fan_from_dict(data)

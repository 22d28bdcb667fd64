"""JSON scene configuration: parsing and range validation."""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

import numpy as np

from rp2.bulge import Lamination, Leaf, axis_translation, circle_leaf
from rp2.errors import ConfigError
from rp2.projlin import UNIT_CIRCLE, AffineChart, Collineation, Conic, normalize_point
from rp2.rootsys import CartanElement

MAX_DEPTH = 10
MAX_SAMPLES = 4096
SQRT3_2 = math.sqrt(3.0) / 2.0
# draws the coordinate triangle of the chart (1,1,1) as an equilateral triangle
EQUILATERAL_BASIS = ((1.0, -0.5, -0.5), (0.0, SQRT3_2, -SQRT3_2))


def load_json(path) -> dict:
    """Read a config file. OSError propagates (exit code 4); bad JSON is a
    validation error."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("%s: invalid JSON: %s" % (path, exc)) from None
    if not isinstance(data, dict):
        raise ConfigError("%s: top level must be an object" % path)
    return data


def shipped_example(name: str) -> Path:
    """Path of a bundled example config, e.g. 'fig1.json'."""
    return Path(str(resources.files("rp2") / "examples" / name))


def _number(x, what: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise ConfigError("%s must be a finite number, got %r" % (what, x))
    return float(x)


def int_in_range(x, what: str, lo: int, hi: int) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or not lo <= x <= hi:
        raise ConfigError("%s must be an integer in [%d, %d], got %r" % (what, lo, hi, x))
    return x


def vector(x, n: int, what: str) -> tuple:
    if isinstance(x, str):
        x = x.split(",")
        try:
            x = [float(v) for v in x]
        except ValueError:
            raise ConfigError("%s: cannot parse %r" % (what, x)) from None
    if not isinstance(x, (list, tuple)) or len(x) != n:
        raise ConfigError("%s must have %d components, got %r" % (what, n, x))
    return tuple(_number(v, what) for v in x)


def parse_chart(c, basis=None) -> AffineChart:
    cv = vector(c, 3, "chart")
    if max(abs(v) for v in cv) == 0:
        raise ConfigError("chart covector must be nonzero")
    if basis is None:
        return AffineChart(c=cv)
    if basis == "equilateral":
        b = EQUILATERAL_BASIS
    else:
        if not isinstance(basis, list) or len(basis) != 2:
            raise ConfigError("chart basis must be two 3-vectors or 'equilateral'")
        b = (vector(basis[0], 3, "basis"), vector(basis[1], 3, "basis"))
    if abs(np.linalg.det(np.vstack([b, cv]))) < 1e-12:
        raise ConfigError("chart basis and covector are linearly dependent")
    return AffineChart(c=cv, basis=b)


def parse_conic(x) -> Conic:
    if x is None or x == "unit_circle":
        return UNIT_CIRCLE
    if isinstance(x, list) and len(x) == 3:
        rows = [vector(r, 3, "conic row") for r in x]
        m = np.array(rows)
        if np.max(np.abs(m - m.T)) > 1e-12:
            raise ConfigError("conic matrix must be symmetric")
        Q = Conic.from_matrix(m)
        if Q.is_degenerate or not Q.has_real_points():
            raise ConfigError("conic must be nondegenerate with real points")
        return Q
    raise ConfigError("conic must be 'unit_circle' or a 3x3 matrix")


def parse_weight(x) -> CartanElement:
    if x is None:
        return CartanElement(0.0, 0.0)
    if isinstance(x, dict):
        return CartanElement(_number(x.get("s", 0.0), "weight.s"),
                             _number(x.get("t", 0.0), "weight.t"))
    s, t = vector(x, 2, "weight")
    return CartanElement(s, t)


def parse_point(x, what: str = "point"):
    if isinstance(x, (list, tuple)) and len(x) == 2:
        xy = vector(x, 2, what)
        return normalize_point((xy[0], xy[1], 1.0))
    return normalize_point(vector(x, 3, what))


def parse_leaf(d, Q: Conic) -> Leaf:
    if not isinstance(d, dict):
        raise ConfigError("leaf must be an object, got %r" % (d,))
    w = parse_weight(d.get("weight"))
    if "p_angle_deg" in d or "q_angle_deg" in d:
        if Q is not UNIT_CIRCLE:
            raise ConfigError("angle endpoints are only defined on the unit circle")
        return circle_leaf(_number(d.get("p_angle_deg"), "p_angle_deg"),
                           _number(d.get("q_angle_deg"), "q_angle_deg"), w)
    if "p" in d and "q" in d:
        return Leaf(parse_point(d["p"], "leaf p"), parse_point(d["q"], "leaf q"), w)
    raise ConfigError("leaf needs p_angle_deg/q_angle_deg or p/q")


def parse_lamination(cfg: dict) -> Lamination:
    Q = parse_conic(cfg.get("conic", "unit_circle"))
    leaves = cfg.get("leaves", [])
    if not isinstance(leaves, list):
        raise ConfigError("leaves must be a list")
    bp = parse_point(cfg.get("basepoint", [0.0, 0.0]), "basepoint")
    req = cfg.get("require_chamber", False)
    if not isinstance(req, bool):
        raise ConfigError("require_chamber must be true or false")
    return Lamination(Q, tuple(parse_leaf(l, Q) for l in leaves), bp, req)


def parse_generator(d, Q: Conic) -> Collineation:
    if not isinstance(d, dict):
        raise ConfigError("generator must be an object")
    if "matrix" in d:
        m = d["matrix"]
        if not isinstance(m, list) or len(m) != 3:
            raise ConfigError("generator matrix must be 3x3")
        return Collineation.from_matrix([vector(r, 3, "generator row") for r in m])
    if "axis" in d:
        axis = parse_leaf(d["axis"], Q)
        return axis_translation(Q, axis, _number(d.get("translation", 1.0), "translation"))
    raise ConfigError("generator needs 'matrix' or 'axis'")


def parse_levels(x) -> list:
    if isinstance(x, str):
        try:
            x = [float(v) for v in x.split(",") if v.strip()]
        except ValueError:
            raise ConfigError("cannot parse levels %r" % x) from None
    if not isinstance(x, list) or not x:
        raise ConfigError("levels must be a nonempty list")
    out = [_number(v, "level") for v in x]
    if any(v <= 0 for v in out):
        raise ConfigError("levels must be positive")
    return out


def parse_depths(x) -> tuple:
    """'k1..k2', [k1, k2] or a single integer."""
    if isinstance(x, str):
        try:
            parts = [int(v) for v in x.split("..")] if ".." in x else [int(x)]
        except ValueError:
            raise ConfigError("cannot parse depths %r" % x) from None
    elif isinstance(x, int) and not isinstance(x, bool):
        parts = [x]
    elif isinstance(x, list):
        parts = x
    else:
        raise ConfigError("depths must look like 'k1..k2'")
    if len(parts) == 1:
        parts = [parts[0], parts[0]]
    lo = int_in_range(parts[0], "depth", 0, MAX_DEPTH)
    hi = int_in_range(parts[1], "depth", 0, MAX_DEPTH)
    if lo > hi:
        raise ConfigError("empty depth range %d..%d" % (lo, hi))
    return lo, hi

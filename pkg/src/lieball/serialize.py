"""Deterministic JSON/CSV emission and the CLI wire formats.

Floats are printed with 17 significant digits ('%.17g'), which round-trips
doubles exactly and keeps byte-identical output for identical inputs.

Wire formats:
  complex point   {"re": [...], "im": [...]}
  tangent vector  {"x": [...], "v": [...]}
  sphere          {"center": [...], "radius_vector": [...]}
  motion          {"orthogonal_part": [row-major...], "a": [...], "n": int}
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .metric import GeodesicPath
from .moebius import HyperbolicMotion
from .spheres import OrientedSphere, TangentVector


def fmt_float(x: float) -> str:
    return "%.17g" % float(x)


def dumps(obj) -> str:
    """Compact deterministic JSON (dict insertion order preserved)."""
    if isinstance(obj, dict):
        return "{" + ",".join(f'"{k}":{dumps(v)}' for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def complex_point_to_dict(z) -> dict:
    z = np.asarray(z)
    return {"re": [float(t) for t in np.real(z)], "im": [float(t) for t in np.imag(z)]}


def tangent_to_dict(tv: TangentVector) -> dict:
    return {"x": [float(t) for t in tv.x], "v": [float(t) for t in tv.v]}


def sphere_to_dict(s: OrientedSphere) -> dict:
    return {
        "center": [float(t) for t in s.center],
        "radius_vector": [float(t) for t in s.radius_vector],
    }


def parse_real_vector(text: str) -> np.ndarray:
    """Parse 'a,b,c' into a real vector."""
    try:
        return np.array([float(t) for t in text.split(",")], dtype=float)
    except ValueError as exc:
        raise DomainError(f"cannot parse real vector {text!r}") from exc


def parse_complex_vector(text: str) -> np.ndarray:
    """Parse 're,im;re,im;...' (one pair per coordinate) into a complex vector."""
    coords = []
    for part in text.split(";"):
        pieces = part.split(",")
        if len(pieces) != 2:
            raise DomainError(f"cannot parse complex coordinate {part!r}")
        try:
            coords.append(float(pieces[0]) + 1j * float(pieces[1]))
        except ValueError as exc:
            raise DomainError(f"cannot parse complex coordinate {part!r}") from exc
    return np.array(coords)


def motion_from_json(data: dict) -> HyperbolicMotion:
    """Build a motion from the wire dict; orthogonality re-checked by the
    constructor."""
    for key in ("orthogonal_part", "a", "n"):
        if key not in data:
            raise DomainError(f"motion JSON missing field {key!r}")
    return HyperbolicMotion.from_dict(data)


def emit_path(path: GeodesicPath, fmt: str, stream) -> None:
    """Write a geodesic path as JSON lines or CSV (header + one row/sample)."""
    if not path.samples:
        raise DomainError("refusing to emit an empty path")
    n = path.samples[0][0].n
    if fmt == "csv":
        header = (
            [f"x{i+1}" for i in range(n)]
            + [f"v{i+1}" for i in range(n)]
            + [f"xdot{i+1}" for i in range(n)]
            + [f"vdot{i+1}" for i in range(n)]
        )
        stream.write(",".join(header) + "\n")
        for pt, vel in path.samples:
            row = list(pt.x) + list(pt.v) + list(vel[:n]) + list(vel[n:])
            stream.write(",".join(fmt_float(t) for t in row) + "\n")
    elif fmt == "json":
        for pt, vel in path.samples:
            record = {
                "x": list(pt.x),
                "v": list(pt.v),
                "xdot": list(vel[:n]),
                "vdot": list(vel[n:]),
            }
            stream.write(dumps(record) + "\n")
    else:
        raise DomainError(f"unknown path format {fmt!r}")

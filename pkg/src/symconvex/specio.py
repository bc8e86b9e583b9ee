"""JSON body specifications, density files and stable number formatting."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .body import (DEFAULT_N, AngleGrid, ConvexBody, HarmonicSpectrum,
                   from_harmonics, make_disk, make_ellipse, minkowski_combine,
                   random_symmetric_body, scale)
from .functionals import GridDensity


class SpecError(ValueError):
    pass


def _number(spec, key, default=None):
    if key not in spec:
        if default is None:
            raise SpecError(f"'{spec.get('type')}' spec is missing '{key}'")
        return default
    value = spec[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(f"'{key}' must be a number, got {value!r}")
    return float(value)


def _parts(spec):
    parts = spec.get("parts")
    if not isinstance(parts, list) or not parts:
        raise SpecError(f"'{spec.get('type')}' spec needs a nonempty 'parts' list")
    return parts


def body_from_spec(spec: dict, n: int | None = None) -> ConvexBody:
    """Build a body from a JSON-style spec.

    ``minkowski_sum`` is ``parts[0] + lambda * (parts[1] + ... )``; ``scale``
    multiplies ``parts[0]`` by ``c``.  A top-level ``n`` sets the grid for
    every nested part.
    """
    if not isinstance(spec, dict):
        raise SpecError(f"body spec must be an object, got {type(spec).__name__}")
    if n is None:
        n = spec.get("n", DEFAULT_N)
    if isinstance(n, bool) or not isinstance(n, int):
        raise SpecError(f"'n' must be an integer, got {n!r}")
    kind = spec.get("type")
    if kind == "disk":
        return make_disk(_number(spec, "r"), n)
    if kind == "ellipse":
        return make_ellipse(_number(spec, "a"), _number(spec, "b"), n)
    if kind == "harmonics":
        terms = []
        for t in spec.get("terms", []):
            k = t.get("k")
            if isinstance(k, bool) or not isinstance(k, int):
                raise SpecError(f"harmonic frequency must be an integer, got {k!r}")
            terms.append((k, _number(t, "cos", 0.0), _number(t, "sin", 0.0)))
        return from_harmonics(HarmonicSpectrum.from_terms(_number(spec, "a0"), terms), n)
    if kind == "minkowski_sum":
        bodies = [body_from_spec(p, n) for p in _parts(spec)]
        lam = _number(spec, "lambda", 1.0)
        out = bodies[0]
        for other in bodies[1:]:
            out = minkowski_combine(out, other, lam)
        return out
    if kind == "scale":
        return scale(body_from_spec(_parts(spec)[0], n), _number(spec, "c"))
    if kind == "random":
        return random_symmetric_body(int(_number(spec, "seed")),
                                     int(_number(spec, "k_max", 8.0)),
                                     _number(spec, "decay", 2.5), n)
    raise SpecError(f"unknown body type {kind!r}")


def body_to_spec(K: ConvexBody) -> dict:
    spec = K.spectrum.to_dict()
    spec["n"] = K.n
    return spec


def load_json(path: str | Path):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON in {path}: {exc}") from exc


def _read_text(path) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc


def load_density(path: str | Path) -> GridDensity:
    """Read a density from JSON ``{"n", "values"}`` or CSV ``theta,value``."""
    text = _read_text(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"malformed JSON in {path}: {exc}") from exc
        values = data.get("values")
        if not isinstance(values, list):
            raise SpecError("density JSON needs a 'values' list")
        n = data.get("n", len(values))
        if n != len(values):
            raise SpecError(f"density JSON says n={n} but has {len(values)} values")
        return GridDensity(AngleGrid(n), np.asarray(values, dtype=float))
    values = []
    for row in csv.reader(io.StringIO(text)):
        if not row or not row[0].strip():
            continue
        try:
            values.append(float(row[-1]))
        except ValueError:
            if values:
                raise SpecError(f"bad density row {row!r}") from None
            continue  # header
    if not values:
        raise SpecError(f"no density values in {path}")
    return GridDensity(AngleGrid(len(values)), np.asarray(values))


def density_to_csv(f: GridDensity) -> str:
    lines = ["theta,value"]
    for t, v in zip(f.theta, f.values):
        lines.append(f"{format_float(t)},{format_float(v)}")
    return "\n".join(lines) + "\n"


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def _encode(obj, indent, level) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(obj[k], indent, level + 1)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return json.dumps(None)
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")

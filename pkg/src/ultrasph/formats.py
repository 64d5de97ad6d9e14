"""JSON file formats for the command-line front end.

One self-describing JSON syntax covers all four file kinds:

* config:        {"d": 4, "kind": "interior|exterior|annulus",
                  "radii": [1.0] or [0.5, 2.0], "lmax": 3,
                  "boundary": [{"radius": 1.0, "data": "harmonic:(1,0;0)"}
                               or {"radius": 1.0, "samples-file": "path"}]}
* coefficients:  {"format": "ultrasph-coefficients", "d": ..., "lmax": ...,
                  "coefficients": [{"index": [l, m_{d-2}, ..., m_1],
                                    "A": [re, im], "B": [re, im]}, ...]}
* samples:       {"values": [[re, im], ...]} in the canonical node order
                  of sphere_grid(d, lmax) (row-major over theta_d, ...,
                  theta_3, phi)
* points:        {"points": [{"cartesian": [x_1, ..., x_d]} or
                  {"ultraspherical": {"r": ..., "theta": [...], "phi": ...}},
                  ...]}
* values:        {"values": [[re, im], ...]}, order-preserving

Floats serialize through Python's shortest round-trip repr, so identical
inputs produce byte-identical files.
"""

import json
import re

import numpy as np

from .geometry import UltrasphericalPoint, CartesianPoint, to_ultraspherical
from .harmonics import MultiIndex, enumerate_indices, eval_harmonic
from .solver import BoundaryProblem, HarmonicExpansion

__all__ = [
    "FormatError",
    "build_problem",
    "load_coefficients",
    "load_config",
    "load_points",
    "parse_harmonic_spec",
    "save_coefficients",
    "save_values",
]

D_RANGE = (3, 8)
LMAX_RANGE = (0, 8)

_HARMONIC_RE = re.compile(r"^harmonic:\(([0-9, +-]*);(\s*-?\d+\s*)\)$")


class FormatError(ValueError):
    """A config or data file violates the documented schema."""


def _load_json(path):
    try:
        with open(path) as fp:
            return json.load(fp)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def _require(obj, key, kind, where):
    if key not in obj:
        raise FormatError(f"{where}: missing required key {key!r}")
    value = obj[key]
    kinds = kind if isinstance(kind, tuple) else (kind,)
    if isinstance(value, bool) and bool not in kinds:
        raise FormatError(f"{where}: key {key!r} must be a number")
    if not isinstance(value, kind):
        raise FormatError(f"{where}: key {key!r} has wrong type {type(value).__name__}")
    return value


def parse_harmonic_spec(spec, d):
    """Parse "harmonic:(l,m_{d-2},...,m_2;m_1)" into a MultiIndex."""
    match = _HARMONIC_RE.match(spec.strip())
    if not match:
        raise FormatError(
            f"bad harmonic spec {spec!r}; expected harmonic:(l,...;m_1)"
        )
    try:
        head = [int(v) for v in match.group(1).split(",")]
        m1 = int(match.group(2))
    except ValueError as exc:
        raise FormatError(f"bad harmonic spec {spec!r}: {exc}") from exc
    if len(head) != d - 2:
        raise FormatError(
            f"harmonic spec {spec!r} has {len(head)} leading entries; "
            f"d={d} needs {d - 2} (l plus the upper orders)"
        )
    try:
        return MultiIndex(d, head[0], tuple(head[1:]) + (m1,))
    except ValueError as exc:
        raise FormatError(f"invalid harmonic index in {spec!r}: {exc}") from exc


def load_config(path):
    """Read and validate a boundary-problem config; returns a dict."""
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: config must be a JSON object")
    d = _require(obj, "d", int, path)
    if not D_RANGE[0] <= d <= D_RANGE[1]:
        raise FormatError(f"{path}: dimension out of range, need {D_RANGE[0]} <= d <= {D_RANGE[1]}")
    kind = _require(obj, "kind", str, path)
    if kind not in ("interior", "exterior", "annulus"):
        raise FormatError(f"{path}: unknown kind {kind!r}")
    lmax = _require(obj, "lmax", int, path)
    if not LMAX_RANGE[0] <= lmax <= LMAX_RANGE[1]:
        raise FormatError(f"{path}: lmax out of range, need {LMAX_RANGE[0]} <= lmax <= {LMAX_RANGE[1]}")
    radii = _require(obj, "radii", list, path)
    if not all(isinstance(r, (int, float)) and not isinstance(r, bool) for r in radii):
        raise FormatError(f"{path}: radii must be numbers")
    radii = [float(r) for r in radii]
    want = 2 if kind == "annulus" else 1
    if len(radii) != want:
        raise FormatError(f"{path}: {kind} problem needs {want} radii, got {len(radii)}")
    if any(r <= 0 for r in radii):
        raise FormatError(f"{path}: radii must be positive")
    if kind == "annulus" and not radii[0] < radii[1]:
        raise FormatError(f"{path}: annulus requires R_inner < R_outer strictly")
    boundary = _require(obj, "boundary", list, path)
    if len(boundary) != want:
        raise FormatError(
            f"{path}: expected {want} boundary entries, got {len(boundary)}"
        )
    seen = []
    for entry in boundary:
        if not isinstance(entry, dict):
            raise FormatError(f"{path}: boundary entries must be objects")
        radius = _require(entry, "radius", (int, float), path)
        if float(radius) not in radii:
            raise FormatError(
                f"{path}: boundary radius {radius} does not match radii {radii}"
            )
        seen.append(float(radius))
        if ("data" in entry) == ("samples-file" in entry):
            raise FormatError(
                f"{path}: each boundary entry needs exactly one of 'data' or 'samples-file'"
            )
    if sorted(seen) != sorted(radii):
        raise FormatError(f"{path}: boundary entries must cover every radius once")
    return {"d": d, "kind": kind, "radii": radii, "lmax": lmax, "boundary": boundary}


def _data_for_entry(entry, d, lmax, where):
    if "data" in entry:
        spec = entry["data"]
        if not isinstance(spec, str):
            raise FormatError(f"{where}: 'data' must be a harmonic spec string")
        idx = parse_harmonic_spec(spec, d)
        if idx.l > lmax:
            raise FormatError(
                f"{where}: harmonic level {idx.l} exceeds the problem lmax {lmax}"
            )
        return lambda pts, i=idx: eval_harmonic(i, pts)
    samples = _load_json(entry["samples-file"])
    if not isinstance(samples, dict) or "values" not in samples:
        raise FormatError(f"{entry['samples-file']}: expected an object with 'values'")
    values = _parse_complex_list(samples["values"], entry["samples-file"])
    expected = (lmax + 2) ** (d - 2) * (2 * lmax + 2)
    if values.size != expected:
        raise FormatError(
            f"{entry['samples-file']}: expected {expected} samples for "
            f"d={d}, lmax={lmax} in grid order, got {values.size}"
        )
    return values


def build_problem(config):
    """Turn a validated config dict into a BoundaryProblem."""
    d, kind, lmax = config["d"], config["kind"], config["lmax"]
    radii = config["radii"]
    by_radius = {float(e["radius"]): e for e in config["boundary"]}
    data = tuple(
        _data_for_entry(by_radius[r], d, lmax, f"boundary r={r}") for r in radii
    )
    return BoundaryProblem(d, kind, tuple(radii), lmax, data)


def _parse_complex_list(raw, where):
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{where}: values must be [re, im] pairs") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FormatError(f"{where}: values must be [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def save_coefficients(fp, expansion):
    """Write an expansion; coefficient order follows the expansion's dict."""
    doc = {
        "format": "ultrasph-coefficients",
        "d": expansion.d,
        "lmax": expansion.lmax,
        "coefficients": [
            {"index": [idx.l, *idx.m], "A": _pair(a), "B": _pair(b)}
            for idx, (a, b) in expansion.coeffs.items()
        ],
    }
    json.dump(doc, fp, indent=2)
    fp.write("\n")


def load_coefficients(path):
    obj = _load_json(path)
    if not isinstance(obj, dict) or obj.get("format") != "ultrasph-coefficients":
        raise FormatError(f"{path}: not a coefficients file")
    d = _require(obj, "d", int, path)
    lmax = _require(obj, "lmax", int, path)
    coeffs = {}
    for rec in _require(obj, "coefficients", list, path):
        if not isinstance(rec, dict):
            raise FormatError(f"{path}: coefficient records must be objects")
        index = _require(rec, "index", list, path)
        if len(index) != d - 1:
            raise FormatError(
                f"{path}: index {index} must have {d - 1} entries for d={d}"
            )
        try:
            idx = MultiIndex(d, int(index[0]), tuple(int(v) for v in index[1:]))
        except ValueError as exc:
            raise FormatError(f"{path}: invalid index {index}: {exc}") from exc
        a = _require(rec, "A", list, path)
        b = _require(rec, "B", list, path)
        if len(a) != 2 or len(b) != 2:
            raise FormatError(f"{path}: A and B must be [re, im] pairs")
        coeffs[idx] = (complex(a[0], a[1]), complex(b[0], b[1]))
    try:
        return HarmonicExpansion(d, lmax, coeffs)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def expansion_in_canonical_order(expansion):
    """The same expansion with coefficients in enumeration order."""
    ordered = {}
    for l in range(expansion.lmax + 1):
        for idx in enumerate_indices(expansion.d, l):
            ordered[idx] = expansion.coeffs.get(idx, (0j, 0j))
    return HarmonicExpansion(expansion.d, expansion.lmax, ordered)


def load_points(path):
    """Read a points file; returns (d, [UltrasphericalPoint, ...])."""
    obj = _load_json(path)
    if not isinstance(obj, dict) or "points" not in obj:
        raise FormatError(f"{path}: expected an object with a 'points' list")
    entries = obj["points"]
    if not isinstance(entries, list) or not entries:
        raise FormatError(f"{path}: 'points' must be a nonempty list")
    points = []
    d = None
    for i, entry in enumerate(entries):
        where = f"{path} point #{i}"
        if not isinstance(entry, dict):
            raise FormatError(f"{where}: must be an object")
        if ("cartesian" in entry) == ("ultraspherical" in entry):
            raise FormatError(
                f"{where}: needs exactly one of 'cartesian' or 'ultraspherical'"
            )
        try:
            if "cartesian" in entry:
                xs = [float(v) for v in entry["cartesian"]]
                point = to_ultraspherical(CartesianPoint(len(xs), np.asarray(xs)))
            else:
                rec = entry["ultraspherical"]
                theta = tuple(float(t) for t in rec["theta"])
                point = UltrasphericalPoint(
                    len(theta) + 2, float(rec["r"]), theta, float(rec["phi"])
                )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{where}: {exc}") from exc
        if d is None:
            d = point.d
        elif point.d != d:
            raise FormatError(f"{where}: dimension {point.d} differs from {d}")
        points.append(point)
    return d, points


def save_values(fp, values):
    json.dump({"values": [_pair(v) for v in values]}, fp, indent=2)
    fp.write("\n")

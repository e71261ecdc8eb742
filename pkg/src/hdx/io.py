"""JSON file formats for complexes, cochains and reports.

Rationals are written as canonical ``"p/q"`` strings (q > 0, lowest terms);
floats are rounded to 12 significant digits so reports are byte-stable.
"""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction
from pathlib import Path

from hdx.cochains import Cochain, FiniteAbelianGroup
from hdx.complex import SimplicialComplex, build_complex, to_fraction
from hdx.errors import InputError, NotAFaceError
from hdx.verify import CheckRecord


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def jsonable(obj):
    """Recursively convert Fractions, floats, tuples and face keys to JSON values."""
    if isinstance(obj, CheckRecord):
        return record_to_dict(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    if isinstance(obj, FiniteAbelianGroup):
        return str(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _key(k) -> str:
    if isinstance(k, tuple):
        return "[" + ",".join(str(v) for v in k) + "]"
    return str(k)


def record_to_dict(rec) -> dict:
    return {
        "check": rec.check_id,
        "verdict": rec.verdict,
        "lhs": jsonable(rec.lhs),
        "rhs": jsonable(rec.rhs),
        "relation": rec.relation,
        "slack": jsonable(rec.slack),
        "exact": rec.exact,
        "tolerance": rec.tolerance,
        "params": jsonable(rec.params),
        "notes": rec.notes,
        "details": jsonable(rec.details),
        "subchecks": [record_to_dict(s) for s in rec.subchecks],
    }


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------- complexes

def complex_to_dict(X: SimplicialComplex, name: str = "complex") -> dict:
    return {
        "name": name,
        "top_faces": [{"vertices": list(f), "weight": rational_str(w)}
                      for f, w in X.top_weights.items()],
    }


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def complex_from_dict(data) -> tuple[SimplicialComplex, str]:
    if not isinstance(data, dict):
        raise InputError("complex file: top level must be an object")
    name = data.get("name", "complex")
    if not isinstance(name, str):
        raise InputError("complex file: field 'name' must be a string")
    tops = data.get("top_faces")
    if not isinstance(tops, list):
        raise InputError("complex file: field 'top_faces' must be a list")
    entries = []
    for i, item in enumerate(tops):
        where = f"complex file: top_faces[{i}]"
        if not isinstance(item, dict) or "vertices" not in item:
            raise InputError(f"{where}: expected an object with 'vertices'")
        verts = item["vertices"]
        if not isinstance(verts, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in verts):
            raise InputError(f"{where}.vertices: expected a list of non-negative integers")
        w = item.get("weight")
        if w is not None:
            if isinstance(w, bool) or not isinstance(w, (int, str)):
                raise InputError(f"{where}.weight: expected an integer or a 'p/q' string")
            try:
                w = to_fraction(w)
            except InputError as exc:
                raise InputError(f"{where}.weight: {exc}") from exc
        entries.append((tuple(verts), w))
    return build_complex(entries), name


def read_complex(path) -> tuple[SimplicialComplex, str, str]:
    """Parse a complex file; returns (complex, name, sha256 of the bytes)."""
    text = _read(path)
    X, name = complex_from_dict(_load_json(text, f"complex file {path}"))
    return X, name, sha256_text(text)


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


# ---------------------------------------------------------------- cochains

def cochain_to_dict(f: Cochain) -> dict:
    return {
        "dimension": f.k,
        "group": str(f.group),
        "values": [{"face": list(face), "value": list(val)}
                   for face, val in sorted(f.values.items())],
    }


def cochain_from_dict(data, X: SimplicialComplex) -> Cochain:
    if not isinstance(data, dict):
        raise InputError("cochain file: top level must be an object")
    k = data.get("dimension")
    if not isinstance(k, int) or isinstance(k, bool):
        raise InputError("cochain file: field 'dimension' must be an integer")
    if not -1 <= k <= X.dimension:
        raise InputError(f"cochain file: dimension {k} outside -1..{X.dimension} of the complex")
    spec = data.get("group")
    if not isinstance(spec, str):
        raise InputError("cochain file: field 'group' must be a string such as 'z2'")
    G = FiniteAbelianGroup.parse(spec)
    vals = data.get("values", [])
    if not isinstance(vals, list):
        raise InputError("cochain file: field 'values' must be a list")
    values = {}
    offenders = []
    for i, item in enumerate(vals):
        where = f"cochain file: values[{i}]"
        if not isinstance(item, dict) or "face" not in item or "value" not in item:
            raise InputError(f"{where}: expected an object with 'face' and 'value'")
        face = item["face"]
        if not isinstance(face, list) or not all(isinstance(v, int) for v in face):
            raise InputError(f"{where}.face: expected a list of integers")
        if face != sorted(face):
            raise InputError(f"{where}.face: vertices must be ascending, got {face}")
        t = tuple(face)
        if len(t) != k + 1 or not X.has_face(t):
            offenders.append(t)
            continue
        if t in values:
            raise InputError(f"{where}.face: {face} listed twice")
        try:
            val = G.coerce(item["value"])
        except InputError as exc:
            raise InputError(f"{where}.value: {exc}") from exc
        if val == G.zero:
            raise InputError(f"{where}.value: zero entries must be omitted")
        values[t] = val
    if offenders:
        listing = ", ".join(str(list(t)) for t in offenders)
        raise NotAFaceError(offenders, f"cochain file: not {k}-faces of the complex: {listing}")
    return Cochain(X, k, G, values)


def read_cochain(path, X: SimplicialComplex) -> tuple[Cochain, str]:
    text = _read(path)
    return cochain_from_dict(_load_json(text, f"cochain file {path}"), X), sha256_text(text)

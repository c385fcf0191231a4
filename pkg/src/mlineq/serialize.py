"""JSON encoding of matrices and reports.

Complex arrays become nested lists of ``[re, im]`` pairs.  Floats are written
with 17 significant digits so that every value round-trips exactly.
"""
from __future__ import annotations

import json
import math
from numbers import Integral, Real

import numpy as np


def encode(x):
    """Recursively convert arrays/tuples/numpy scalars into JSON-ready values."""
    if isinstance(x, np.ndarray):
        if x.ndim == 0:
            return encode(x.item())
        if x.ndim >= 2:
            return _pairs(x.astype(complex))
        if np.iscomplexobj(x):
            return {"__vector__": _pairs(x)}
        return [float(v) for v in x]
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Real):
        return float(x)
    return x


def _pairs(a: np.ndarray):
    if a.ndim == 1:
        return [[float(v.real), float(v.imag)] for v in a]
    return [_pairs(row) for row in a]


def _is_pair(x) -> bool:
    return isinstance(x, list) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    )


def _depth_of_pairs(x) -> int:
    """Nesting depth above ``[re, im]`` leaves, or -1 if ``x`` is not such an array."""
    if _is_pair(x):
        return 0
    if isinstance(x, list) and x:
        depths = {_depth_of_pairs(v) for v in x}
        if len(depths) == 1 and -1 not in depths:
            return depths.pop() + 1
    return -1


def decode(x):
    """Inverse of :func:`encode`: matrices come back as complex arrays."""
    if isinstance(x, dict):
        if set(x) == {"__vector__"}:
            arr = np.asarray(x["__vector__"], dtype=float).reshape(-1, 2)
            return arr[:, 0] + 1j * arr[:, 1]
        return {k: decode(v) for k, v in x.items()}
    if isinstance(x, list):
        d = _depth_of_pairs(x)
        if d == 2:
            arr = np.asarray(x, dtype=float)
            return arr[..., 0] + 1j * arr[..., 1]
        return [decode(v) for v in x]
    return x


def _fmt_float(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    s = format(v, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int | None = 2, _level: int = 0) -> str:
    """Deterministic JSON writer with 17-significant-digit floats."""
    obj = encode(obj)
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ","
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[" + sep.join(items) + end + "]"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text: str):
    return json.loads(text)

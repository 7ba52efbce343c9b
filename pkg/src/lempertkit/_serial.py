"""JSON-friendly descriptions of catalogue entries."""
from __future__ import annotations

import enum
from dataclasses import fields, is_dataclass

import numpy as np


def describe_spec(obj) -> dict:
    out = {"kind": type(obj).__name__}
    if is_dataclass(obj):
        for f in fields(obj):
            if f.repr:
                out[f.name] = jsonable(getattr(obj, f.name))
    return out


def jsonable(val):
    if val is None or isinstance(val, (bool, int, str, float)):
        return val
    if isinstance(val, complex):
        return [val.real, val.imag]
    if isinstance(val, np.generic):
        return jsonable(val.item())
    if isinstance(val, np.ndarray):
        return [jsonable(v) for v in val.tolist()]
    if isinstance(val, enum.Enum):
        return val.value
    if hasattr(val, "describe"):
        return val.describe()
    if is_dataclass(val):
        return describe_spec(val)
    if isinstance(val, dict):
        return {str(k): jsonable(v) for k, v in val.items()}
    if isinstance(val, (list, tuple)):
        return [jsonable(v) for v in val]
    return repr(val)

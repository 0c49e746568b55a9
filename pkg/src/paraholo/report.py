from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .core import ParaComplex


@dataclass
class Check:
    """One verification outcome: the unit every report is built from."""

    name: str
    passed: bool
    violation: float
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "violation": jsonable(self.violation),
            "details": jsonable(self.details),
        }


def point_entry(check: str, point, violation: float, tol: float) -> dict:
    return {
        "check": check,
        "point": [[c.re, c.im] for c in point],
        "violation": float(violation),
        "pass": bool(violation < tol),
    }


def jsonable(obj):
    """Recursively convert values to plain JSON types with canonical ordering."""
    if isinstance(obj, ParaComplex):
        return [_num(obj.re), _num(obj.im)]
    if isinstance(obj, dict):
        return {str(k): jsonable(obj[k]) for k in sorted(obj, key=str)}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    try:
        return _num(float(obj))
    except (TypeError, ValueError):
        return str(obj)


def _num(x: float):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return x

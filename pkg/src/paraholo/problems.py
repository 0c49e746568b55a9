"""JSON problem files: metric problems and Lie-group problems."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .core import EPS_INV, as_pc
from .errors import SchemaError
from .expr import as_expr, as_point, parse_expr
from .liegroup import (
    LambdaFrame,
    LieAlgebraData,
    bch_lambda_series,
    probe_points,
    structure_from_entries,
    validate_structure,
)
from .metric import ParaMetric, build_metric, default_samples

MAX_DIM = 8
DEFAULT_TOL = 1e-9


@dataclass
class MetricProblem:
    n: int
    metric: ParaMetric
    samples: list
    tolerance: float


@dataclass
class LieProblem:
    m: int
    algebra: LieAlgebraData
    frame: LambdaFrame
    samples: list
    tolerance: float


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise SchemaError("problem file must contain a JSON object")
    return data


def _dim(data: dict, key: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= MAX_DIM:
        raise SchemaError(f"'{key}' must be an integer in 1..{MAX_DIM}")
    return v


def _tolerance(data: dict) -> float:
    t = data.get("tolerance", DEFAULT_TOL)
    if not isinstance(t, (int, float)) or isinstance(t, bool) or not t > 0:
        raise SchemaError("'tolerance' must be a positive number")
    return float(t)


def parse_samples(raw, n: int) -> list:
    if not isinstance(raw, list) or not raw:
        raise SchemaError("'samples' must be a non-empty list of points")
    pts = []
    for i, pt in enumerate(raw):
        if not isinstance(pt, list) or len(pt) != n:
            raise SchemaError(f"sample {i} must list {n} coordinates")
        try:
            pts.append(as_point([as_pc(c) for c in pt]))
        except (TypeError, ValueError):
            raise SchemaError(f"sample {i}: coordinates must be [re, im] pairs") from None
    return pts


def load_metric_problem(data: dict) -> MetricProblem:
    n = _dim(data, "dimension")
    G = data.get("G")
    if not isinstance(G, list) or len(G) != n or any(not isinstance(r, list) or len(r) != n for r in G):
        raise SchemaError(f"'G' must be an {n}x{n} array")
    for row in G:
        for v in row:
            if v is not None and not isinstance(v, (str, int, float)):
                raise SchemaError("entries of 'G' must be expression strings, numbers or null")
    samples = parse_samples(data["samples"], n) if "samples" in data else default_samples(n)
    metric = build_metric(n, G, samples=samples, eps_inv=EPS_INV)
    return MetricProblem(n, metric, samples, _tolerance(data))


_SERIES = re.compile(r"^series:(\d+)$")


def load_lie_problem(data: dict) -> LieProblem:
    m = _dim(data, "dim")
    raw = data.get("structure_constants")
    if not isinstance(raw, list):
        raise SchemaError("'structure_constants' must be a list")
    entries = []
    for i, item in enumerate(raw):
        try:
            a, (b, c), value = item["upper"], item["lower"], item["value"]
        except (KeyError, TypeError, ValueError):
            raise SchemaError(f"structure constant {i} needs 'upper', 'lower' [b, c] and 'value'") from None
        for idx in (a, b, c):
            if not isinstance(idx, int) or not 1 <= idx <= m:
                raise SchemaError(f"structure constant {i}: index {idx} out of range 1..{m}")
        try:
            entries.append((a, (b, c), as_pc(value)))
        except TypeError:
            raise SchemaError(f"structure constant {i}: value must be [re, im]") from None
    algebra = validate_structure(structure_from_entries(m, entries))
    lam = data.get("lambda", "series:6")
    if isinstance(lam, str):
        mt = _SERIES.match(lam.strip())
        if not mt:
            raise SchemaError("'lambda' must be 'series:N' or an m x m array of expressions")
        frame = bch_lambda_series(algebra, int(mt.group(1)))
    elif isinstance(lam, list) and len(lam) == m and all(isinstance(r, list) and len(r) == m for r in lam):
        rows = tuple(tuple(parse_expr(v, m) if isinstance(v, str) else as_expr(float(v)) for v in r) for r in lam)
        frame = LambdaFrame(m, rows)
    else:
        raise SchemaError("'lambda' must be 'series:N' or an m x m array of expressions")
    samples = parse_samples(data["samples"], m) if "samples" in data else probe_points(m, 1e-2)
    return LieProblem(m, algebra, frame, samples, _tolerance(data))


def load_problem(path) -> MetricProblem | LieProblem:
    data = read_json(path)
    if "structure_constants" in data:
        return load_lie_problem(data)
    if "G" in data:
        return load_metric_problem(data)
    raise SchemaError("problem file needs either 'G' (metric) or 'structure_constants' (Lie group)")

"""Para-complex Riemannian metrics in adapted coordinates and their realizations.

Only the holomorphic-index block G_ab is ever supplied.  The barred block is
its conjugate and the mixed blocks vanish, so the reality and type
conditions on the full 2n x 2n metric hold by construction.

Index conventions for full-index arrays: slots 0..n-1 are unbarred
(z^1..z^n), slots n..2n-1 are barred.  Derivative axes use the same slots.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import EPS_INV, PCArray, complete_by_mirror
from .errors import AsymmetricInput, NotNorden
from .expr import (
    E,
    ZERO,
    Expression,
    JetTable,
    add,
    as_expr,
    as_point,
    conj_expr,
    const,
    eval_expr,
    eval_many,
    is_paraholomorphic_expr,
    mul,
    parse_expr,
    sub,
)
from .report import Check, point_entry


def default_samples(n: int, limit: int = 16) -> list[tuple]:
    """Origin-avoiding grid {(0.3, 0.1), (0.7, -0.2)}^n, first ``limit`` points."""
    base = [(0.3, 0.1), (0.7, -0.2)]
    pts = []
    for combo in itertools.product(base, repeat=n):
        pts.append(as_point(combo))
        if len(pts) == limit:
            break
    return pts


@dataclass(frozen=True)
class IOperator:
    """The para-complex structure: I d/dx^a = d/dy^a and I d/dy^a = d/dx^a."""

    n: int

    def matrix(self) -> np.ndarray:
        n = self.n
        J = np.zeros((2 * n, 2 * n))
        J[:n, n:] = np.eye(n)
        J[n:, :n] = np.eye(n)
        return J

    def on_indices(self) -> PCArray:
        """Action on the para-complex frame: +e on d/dz^a, -e on d/dzb^a."""
        n = self.n
        im = np.concatenate([np.ones(n), -np.ones(n)])
        return PCArray(np.zeros((2 * n, 2 * n)), np.diag(im))


@dataclass(frozen=True, eq=False)
class ParaMetric:
    n: int
    G: tuple  # n x n tuple of Expressions, symmetric
    eps_inv: float = EPS_INV
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def upper(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in range(a, self.n)]

    def jets(self) -> JetTable:
        tab = self._cache.get("jets")
        if tab is None:
            tab = JetTable([self.G[a][b] for a, b in self.upper], self.n)
            self._cache["jets"] = tab
        return tab

    def barred_block(self) -> tuple:
        blk = self._cache.get("barred")
        if blk is None:
            memo: dict = {}
            blk = tuple(tuple(conj_expr(self.G[a][b], memo) for b in range(self.n)) for a in range(self.n))
            self._cache["barred"] = blk
        return blk

    def block_matrix(self) -> list[list[Expression]]:
        """The full 2n x 2n matrix (G_AB) of expressions."""
        n = self.n
        bar = self.barred_block()
        full = [[ZERO] * (2 * n) for _ in range(2 * n)]
        for a in range(n):
            for b in range(n):
                full[a][b] = self.G[a][b]
                full[n + a][n + b] = bar[a][b]
        return full

    def evaluate(self, p) -> PCArray:
        vals = eval_many([self.G[a][b] for a in range(self.n) for b in range(self.n)], p, self.eps_inv)
        return PCArray.from_values([vals[a * self.n:(a + 1) * self.n] for a in range(self.n)])

    def at(self, p) -> "MetricPoint":
        key = tuple(as_point(p))
        points = self._cache.setdefault("points", {})
        mp = points.get(key)
        if mp is None:
            mp = MetricPoint(self, key)
            if len(points) > 256:
                points.clear()
            points[key] = mp
        return mp

    def check_nondegenerate(self, samples) -> None:
        for p in samples:
            self.at(p).Ginv


class MetricPoint:
    """Values and coordinate derivatives of a metric at one point.

    Arrays are PCArrays; ``dG[a, b, V]`` is d G_ab / d z^V with V ranging
    over the 2n slots (unbarred then barred).
    """

    def __init__(self, metric: ParaMetric, point: tuple):
        self.metric = metric
        self.point = point
        self.n = metric.n
        self._derivs: list[PCArray] = []
        self._memo: dict = {}

    def derivs(self, order: int) -> list[PCArray]:
        if len(self._derivs) <= order:
            n = self.n
            tables = self.metric.jets().evaluate(self.point, order, self.metric.eps_inv)
            out = []
            for re, im in tables:
                full_shape = (n, n) + re.shape[1:]
                R = np.zeros(full_shape)
                I = np.zeros(full_shape)
                for i, (a, b) in enumerate(self.metric.upper):
                    R[a, b] = R[b, a] = re[i]
                    I[a, b] = I[b, a] = im[i]
                out.append(PCArray(R, I))
            self._derivs = out
        return self._derivs[: order + 1]

    def _get(self, key, fn):
        v = self._memo.get(key)
        if v is None:
            v = fn()
            self._memo[key] = v
        return v

    @property
    def G(self) -> PCArray:
        return self.derivs(0)[0]

    @property
    def dG(self) -> PCArray:
        return self.derivs(1)[1]

    @property
    def ddG(self) -> PCArray:
        return self.derivs(2)[2]

    @property
    def dddG(self) -> PCArray:
        return self.derivs(3)[3]

    @property
    def Ginv(self) -> PCArray:
        return self._get("Ginv", lambda: self.G.inv(self.metric.eps_inv))

    @property
    def dGinv(self) -> PCArray:
        def f():
            return -PCArray.einsum("cf,fgv,gd->cdv", self.Ginv, self.dG, self.Ginv)
        return self._get("dGinv", f)

    @property
    def ddGinv(self) -> PCArray:
        def f():
            Gi, dGi, dG, ddG = self.Ginv, self.dGinv, self.dG, self.ddG
            return -(
                PCArray.einsum("cfw,fgv,gd->cdvw", dGi, dG, Gi)
                + PCArray.einsum("cf,fgvw,gd->cdvw", Gi, ddG, Gi)
                + PCArray.einsum("cf,fgv,gdw->cdvw", Gi, dG, dGi)
            )
        return self._get("ddGinv", f)

    # full 2n-index versions, completed by the conjugate mirror

    def full(self, name: str) -> PCArray:
        def f():
            blk = getattr(self, name)
            n = self.n
            lead = PCArray.zeros((2 * n,) * blk.ndim)
            sl = (slice(0, n), slice(0, n)) + (slice(None),) * (blk.ndim - 2)
            lead[sl] = blk
            return complete_by_mirror(lead, n)
        return self._get(("full", name), f)


def _as_entry(value, n: int):
    if value is None:
        return None
    if isinstance(value, str):
        if value.strip() == "":
            return None
        return parse_expr(value, n)
    return as_expr(value)


def build_metric(n: int, entries: Sequence[Sequence], probes=None, samples=None,
                 eps_inv: float = EPS_INV, sym_tol: float = 1e-12) -> ParaMetric:
    """Assemble G_ab from an n x n table (strings, expressions, numbers or None).

    Lower-triangle entries may be omitted; if both G[a][b] and G[b][a] are
    given they must agree at the probe points.
    """
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ValueError(f"expected an {n}x{n} table of entries")
    probes = default_samples(n) if probes is None else [as_point(p) for p in probes]
    table = [[_as_entry(entries[a][b], n) for b in range(n)] for a in range(n)]
    G = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            up, low = table[a][b], table[b][a]
            if up is not None and low is not None and a != b:
                worst = 0.0
                for p in probes:
                    d = eval_expr(up, p, eps_inv) - eval_expr(low, p, eps_inv)
                    scale = 1.0 + max(abs(v) for v in eval_expr(up, p, eps_inv))
                    worst = max(worst, max(abs(d.re), abs(d.im)) / scale)
                if worst > sym_tol:
                    raise AsymmetricInput(a + 1, b + 1, worst)
            chosen = up if up is not None else (low if low is not None else ZERO)
            G[a][b] = G[b][a] = chosen
    metric = ParaMetric(n, tuple(tuple(row) for row in G), eps_inv)
    if samples is not None:
        metric.check_nondegenerate([as_point(p) for p in samples])
    return metric


def is_paraholomorphic_metric(M: ParaMetric, samples, tol: float) -> bool:
    samples = [as_point(p) for p in samples]
    return all(is_paraholomorphic_expr(M.G[a][b], samples, tol, M.n, M.eps_inv) for a, b in M.upper)


def twin_metric(M: ParaMetric) -> ParaMetric:
    """G o I: unbarred block e*G_ab (the barred block becomes -e*conj(G_ab))."""
    G = tuple(tuple(mul(E, M.G[a][b]) for b in range(M.n)) for a in range(M.n))
    return ParaMetric(M.n, G, M.eps_inv)


@dataclass(frozen=True, eq=False)
class RealizedMetric:
    """Real 2n x 2n metric in coordinates (x^1..x^n, y^1..y^n).

    Entries are expressions in z, zb whose values are real; write them with
    ``x_coord``/``y_coord`` to use real coordinates directly.
    """

    n: int
    entries: tuple  # 2n x 2n tuple of Expressions

    def evaluate(self, p) -> np.ndarray:
        return self.evaluate_with_leak(p)[0]

    def evaluate_with_leak(self, p) -> tuple[np.ndarray, float]:
        m = 2 * self.n
        vals = eval_many([self.entries[i][j] for i in range(m) for j in range(m)], p)
        re = np.array([v.re for v in vals]).reshape(m, m)
        leak = max(abs(v.im) for v in vals)
        return re, leak

    @classmethod
    def from_entries(cls, n: int, entries) -> "RealizedMetric":
        m = 2 * n
        if len(entries) != m or any(len(r) != m for r in entries):
            raise ValueError(f"expected a {m}x{m} table")
        return cls(n, tuple(tuple(_as_entry(v, n) or ZERO for v in row) for row in entries))


def realize_metric(M: ParaMetric) -> RealizedMetric:
    """g = 2 Re G(X^, Y^): blocks [[2 Re G, 2 Im G], [2 Im G, 2 Re G]].

    With (d/dx^a)^ = d/dz^a and (d/dy^a)^ = e d/dz^a one gets
    g(dx_a, dx_b) = g(dy_a, dy_b) = 2 Re G_ab and g(dx_a, dy_b) = 2 Im G_ab.
    As expressions 2 Re G = G + conj(G) and 2 Im G = e (G - conj(G)).
    """
    n = M.n
    bar = M.barred_block()
    m = 2 * n
    out = [[ZERO] * m for _ in range(m)]
    for a in range(n):
        for b in range(n):
            re2 = add(M.G[a][b], bar[a][b])
            im2 = mul(E, sub(M.G[a][b], bar[a][b]))
            out[a][b] = out[n + a][n + b] = re2
            out[a][n + b] = out[n + a][b] = im2
    return RealizedMetric(n, tuple(tuple(r) for r in out))


def norden_violation(g: np.ndarray, n: int) -> float:
    J = IOperator(n).matrix()
    v1 = np.max(np.abs(J @ g @ J - g))
    v2 = np.max(np.abs(g @ J - J @ g))
    return float(max(v1, v2))


def check_norden(g: RealizedMetric, samples, tol: float) -> Check:
    """Max violation of g(IX, IY) = g(X, Y) and g(IX, Y) = g(X, IY) over samples."""
    worst, leak_max, entries = 0.0, 0.0, []
    for p in samples:
        p = as_point(p)
        mat, leak = g.evaluate_with_leak(p)
        v = norden_violation(mat, g.n)
        worst, leak_max = max(worst, v), max(leak_max, leak)
        entries.append(point_entry("check_norden", p, v, tol))
    return Check("check_norden", worst < tol, worst, {"points": entries, "imaginary_leak": leak_max})


def complexify_metric(g: RealizedMetric, probes=None, tol: float = 1e-10,
                      eps_inv: float = EPS_INV) -> ParaMetric:
    """G(X^, Y^) = (g(X, Y) + e g(X, IY)) / 2 on the frame d/dz^a."""
    n = g.n
    probes = default_samples(n) if probes is None else [as_point(p) for p in probes]
    for p in probes:
        v = norden_violation(g.evaluate(p), n)
        if v > tol:
            raise NotNorden(p, v)
    half = const(0.5)
    G = tuple(
        tuple(mul(half, add(g.entries[a][b], mul(E, g.entries[a][n + b]))) for b in range(n))
        for a in range(n)
    )
    return ParaMetric(n, G, eps_inv)

"""Classical Riemannian geometry of a realized metric in real coordinates.

This module is the independent oracle for the para-complex pipeline.  It
shares no differentiation or contraction code with it: expressions are
evaluated as pairs of real second-order jets in (x^1..x^n, y^1..y^n) and
then fed to the textbook Levi-Civita, Riemann and Ricci formulas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularRealMetric, ZeroDivisor
from .expr import Add, Const, Div, Exp, Mul, Neg, Pow, Sub, Var, as_point


class Jet:
    """Value, gradient and Hessian of a real function of m variables."""

    __slots__ = ("v", "g", "h")

    def __init__(self, v: float, g: np.ndarray, h: np.ndarray):
        self.v, self.g, self.h = v, g, h

    @classmethod
    def constant(cls, v: float, m: int) -> "Jet":
        return cls(float(v), np.zeros(m), np.zeros((m, m)))

    @classmethod
    def variable(cls, v: float, i: int, m: int, sign: float = 1.0) -> "Jet":
        g = np.zeros(m)
        g[i] = sign
        return cls(float(v), g, np.zeros((m, m)))

    def __add__(self, o: "Jet") -> "Jet":
        return Jet(self.v + o.v, self.g + o.g, self.h + o.h)

    def __sub__(self, o: "Jet") -> "Jet":
        return Jet(self.v - o.v, self.g - o.g, self.h - o.h)

    def __neg__(self) -> "Jet":
        return Jet(-self.v, -self.g, -self.h)

    def __mul__(self, o: "Jet") -> "Jet":
        cross = np.outer(self.g, o.g)
        return Jet(self.v * o.v, self.g * o.v + self.v * o.g,
                   self.h * o.v + self.v * o.h + cross + cross.T)

    def scale(self, s: float) -> "Jet":
        return Jet(self.v * s, self.g * s, self.h * s)

    def apply(self, f0: float, f1: float, f2: float) -> "Jet":
        """Chain rule for a scalar function with f(v), f'(v), f''(v) given."""
        return Jet(f0, f1 * self.g, f1 * self.h + f2 * np.outer(self.g, self.g))


def _recip(u: Jet) -> Jet:
    return u.apply(1.0 / u.v, -1.0 / u.v**2, 2.0 / u.v**3)


class PairJet:
    """A para-complex function a + e b with a, b real jets."""

    __slots__ = ("a", "b")

    def __init__(self, a: Jet, b: Jet):
        self.a, self.b = a, b

    def __add__(self, o):
        return PairJet(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return PairJet(self.a - o.a, self.b - o.b)

    def __neg__(self):
        return PairJet(-self.a, -self.b)

    def __mul__(self, o):
        return PairJet(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a)

    def reciprocal(self, eps: float) -> "PairJet":
        # 1/(c + e d) = (c - e d)/(c^2 - d^2)
        m = self.a * self.a - self.b * self.b
        if abs(m.v) <= eps:
            raise ZeroDivisor((self.a.v, self.b.v), eps)
        r = _recip(m)
        return PairJet(self.a * r, -(self.b * r))

    def exp(self) -> "PairJet":
        ex = self.a.apply(math.exp(self.a.v), math.exp(self.a.v), math.exp(self.a.v))
        ch = self.b.apply(math.cosh(self.b.v), math.sinh(self.b.v), math.cosh(self.b.v))
        sh = self.b.apply(math.sinh(self.b.v), math.cosh(self.b.v), math.sinh(self.b.v))
        return PairJet(ex * ch, ex * sh)


def pair_jet(node, point, eps: float = 1e-12, _memo=None) -> PairJet:
    """Second-order jet of an expression in the real coordinates (x, y)."""
    point = as_point(point)
    memo = {} if _memo is None else _memo
    return _pj(node, point, 2 * len(point), eps, memo)


def _pj(node, p, m, eps, memo):
    hit = memo.get(id(node))
    if hit is not None:
        return hit[1]
    t = type(node)
    if t is Const:
        out = PairJet(Jet.constant(node.value.re, m), Jet.constant(node.value.im, m))
    elif t is Var:
        a = node.index - 1
        c = p[a]
        sign = -1.0 if node.barred else 1.0
        out = PairJet(Jet.variable(c.re, a, m), Jet.variable(sign * c.im, len(p) + a, m, sign))
    elif t is Add:
        out = _pj(node.left, p, m, eps, memo) + _pj(node.right, p, m, eps, memo)
    elif t is Sub:
        out = _pj(node.left, p, m, eps, memo) - _pj(node.right, p, m, eps, memo)
    elif t is Mul:
        out = _pj(node.left, p, m, eps, memo) * _pj(node.right, p, m, eps, memo)
    elif t is Div:
        out = _pj(node.left, p, m, eps, memo) * _pj(node.right, p, m, eps, memo).reciprocal(eps)
    elif t is Pow:
        base = _pj(node.base, p, m, eps, memo)
        if node.exponent < 0:
            base = base.reciprocal(eps)
        out = PairJet(Jet.constant(1.0, m), Jet.constant(0.0, m))
        for _ in range(abs(node.exponent)):
            out = out * base
    elif t is Exp:
        out = _pj(node.arg, p, m, eps, memo).exp()
    elif t is Neg:
        out = -_pj(node.arg, p, m, eps, memo)
    else:
        raise TypeError(f"unknown node {node!r}")
    memo[id(node)] = (node, out)
    return out


@dataclass
class RealGeometry:
    """Everything at one point; index order follows (x^1..x^n, y^1..y^n)."""

    g: np.ndarray
    ginv: np.ndarray
    dg: np.ndarray      # dg[i, j, k] = d_k g_ij
    gamma: np.ndarray   # gamma[i, j, k] = Gamma^i_jk
    riemann: np.ndarray  # riemann[i, j, k, l]: R(d_k, d_l) d_j = riemann[i, j, k, l] d_i
    ricci: np.ndarray   # ricci[j, k] = Ric(d_j, d_k)
    imag_leak: float = 0.0

    @property
    def scalar(self) -> float:
        return float(np.einsum("ij,ij->", self.ginv, self.ricci))

    def ricci_operator(self) -> np.ndarray:
        """Q with g(QX, Y) = Ric(X, Y); solved rather than inverted."""
        return np.linalg.solve(self.g, self.ricci)


def real_geometry(realized, point, eps: float = 1e-12) -> RealGeometry:
    point = as_point(point)
    m = 2 * realized.n
    memo: dict = {}
    g = np.zeros((m, m))
    dg = np.zeros((m, m, m))
    ddg = np.zeros((m, m, m, m))
    leak = 0.0
    for i in range(m):
        for j in range(m):
            pj = _pj(realized.entries[i][j], point, m, eps, memo)
            g[i, j], dg[i, j], ddg[i, j] = pj.a.v, pj.a.g, pj.a.h
            leak = max(leak, abs(pj.b.v), float(np.max(np.abs(pj.b.g))))
    det = float(np.linalg.det(g))
    if abs(det) <= eps:
        raise SingularRealMetric(det)
    ginv = np.linalg.inv(g)
    # Christoffel symbols of the first kind and their derivatives
    # [jk, l] = (d_j g_lk + d_k g_lj - d_l g_jk) / 2
    first = 0.5 * (np.einsum("lkj->ljk", dg) + np.einsum("ljk->ljk", dg) - np.einsum("jkl->ljk", dg))
    dfirst = 0.5 * (np.einsum("lkjq->ljkq", ddg) + np.einsum("ljkq->ljkq", ddg) - np.einsum("jklq->ljkq", ddg))
    gamma = np.einsum("il,ljk->ijk", ginv, first)
    dginv = -np.einsum("ia,abq,bl->ilq", ginv, dg, ginv)
    dgamma = np.einsum("ilq,ljk->ijkq", dginv, first) + np.einsum("il,ljkq->ijkq", ginv, dfirst)
    # R^i_{jkl} = d_k Gamma^i_lj - d_l Gamma^i_kj + Gamma^i_km Gamma^m_lj - Gamma^i_lm Gamma^m_kj
    riemann = (
        np.einsum("iljk->ijkl", dgamma)
        - np.einsum("ikjl->ijkl", dgamma)
        + np.einsum("ikm,mlj->ijkl", gamma, gamma)
        - np.einsum("ilm,mkj->ijkl", gamma, gamma)
    )
    ricci = np.einsum("ikij->jk", riemann)
    return RealGeometry(g, ginv, dg, gamma, riemann, ricci, leak)


def real_ricci_oracle(realized, point, eps: float = 1e-12) -> np.ndarray:
    return real_geometry(realized, point, eps).ricci


def covariant_derivative_I(geo: RealGeometry, J: np.ndarray) -> np.ndarray:
    """(nabla_k J)^i_j for a constant-coefficient endomorphism J; shape (k, i, j)."""
    return np.einsum("ikl,lj->kij", geo.gamma, J) - np.einsum("lkj,il->kij", geo.gamma, J)

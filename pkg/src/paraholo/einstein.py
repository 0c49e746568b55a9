"""Einstein diagnostics linking a para-holomorphic metric and its realization.

K and K* are the traces of Q and I Q, where Q is the real Ricci operator of
the realized metric; K_hat is the trace of the para-complex Ricci operator.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .connection import characteristic_connection
from .core import PCArray, ParaComplex
from .curvature import curvature_components
from .expr import as_point
from .metric import IOperator, ParaMetric, realize_metric, twin_metric
from .realgeom import real_geometry
from .report import Check

E_UNIT = ParaComplex(0.0, 1.0)


@dataclass
class EinsteinReport:
    is_einstein: bool
    lam: ParaComplex
    K: float
    K_star: float
    K_hat: ParaComplex
    residual: float
    spread: float
    mixed: float
    points: list = field(default_factory=list)

    def to_details(self) -> dict:
        return {
            "is_einstein": self.is_einstein,
            "einstein_constant": self.lam,
            "K": self.K,
            "K_star": self.K_star,
            "K_hat": self.K_hat,
            "residual": self.residual,
            "spread": self.spread,
            "mixed_ricci": self.mixed,
        }


def pointwise_lambda(M: ParaMetric, p, L=None) -> tuple[ParaComplex, float, float]:
    """(lambda_hat, |Ric_ab - lambda_hat G_ab|, |Ric_{c abar}|) at one point."""
    L = L if L is not None else characteristic_connection(M)
    curv = curvature_components(L, p)
    mp = M.at(p)
    lam = PCArray.einsum("ab,ab->", mp.Ginv, curv.ricci_hol)[()] * (1.0 / M.n)
    resid = (curv.ricci_hol - mp.G * lam).abs_max()
    return lam, resid, curv.ricci_mixed.abs_max()


def scalar_curvatures(M: ParaMetric, p) -> tuple[float, float, ParaComplex]:
    """(K, K*, K_hat) at p; K, K* come from the real oracle on the realization."""
    p = as_point(p)
    geo = real_geometry(realize_metric(M), p)
    Q = geo.ricci_operator()
    J = IOperator(M.n).matrix()
    K, K_star = float(np.trace(Q)), float(np.trace(J @ Q))
    curv = curvature_components(characteristic_connection(M), p)
    K_hat = PCArray.einsum("ab,ab->", M.at(p).Ginv, curv.ricci_hol)[()]
    return K, K_star, K_hat


def scalar_relation_violation(K: float, K_star: float, K_hat: ParaComplex) -> float:
    return max(abs(K_hat.re - 0.5 * K), abs(K_hat.im - 0.5 * K_star))


def extract_einstein_constant(M: ParaMetric, samples, tol: float) -> EinsteinReport:
    """lambda_hat = G^ab Ric_ab / n per sample; Einstein iff constant and Ric = lambda_hat G."""
    samples = [as_point(p) for p in samples]
    L = characteristic_connection(M)
    lams, resid, mixed, pts = [], 0.0, 0.0, []
    for p in samples:
        lam, r, mx = pointwise_lambda(M, p, L)
        lams.append(lam)
        resid, mixed = max(resid, r), max(mixed, mx)
        pts.append({"point": [[c.re, c.im] for c in p], "lambda": lam, "residual": r})
    spread = max(max(abs(l.re - lams[0].re), abs(l.im - lams[0].im)) for l in lams)
    K, K_star, K_hat = scalar_curvatures(M, samples[0])
    ok = spread < tol and resid < tol and mixed < tol
    return EinsteinReport(ok, lams[0], K, K_star, K_hat, resid, spread, mixed, pts)


def real_einstein_residual(M: ParaMetric, p, lam: ParaComplex) -> tuple[float, float, float]:
    """Residual of Ric(g) = l1 g + l2 g(., I .), plus the trace constants K/2n and K*/2n."""
    geo = real_geometry(realize_metric(M), p)
    J = IOperator(M.n).matrix()
    target = lam.re * geo.g + lam.im * geo.g @ J
    Q = geo.ricci_operator()
    two_n = 2 * M.n
    return float(np.max(np.abs(geo.ricci - target))), float(np.trace(Q)) / two_n, float(np.trace(J @ Q)) / two_n


def check_theorem_correspondence(M: ParaMetric, samples, tol: float) -> Check:
    """Ric(g_hat) = lambda g_hat with lambda real iff Ric(g) = lambda g (and the e I-twisted form)."""
    samples = [as_point(p) for p in samples]
    rep = extract_einstein_constant(M, samples, tol)
    real_resid = lambda_gap = 0.0
    real_pure = 0.0
    for p in samples:
        r, l1, l2 = real_einstein_residual(M, p, rep.lam)
        real_resid = max(real_resid, r)
        lambda_gap = max(lambda_gap, abs(l1 - rep.lam.re), abs(l2 - rep.lam.im))
        r0, _, _ = real_einstein_residual(M, p, ParaComplex(rep.lam.re, 0.0))
        real_pure = max(real_pure, r0)
    para_real = rep.is_einstein and abs(rep.lam.im) < tol
    real_einstein = real_pure < tol
    agree = para_real == real_einstein
    real_ok = (not rep.is_einstein) or (real_resid < tol and lambda_gap < tol)
    details = {
        "einstein": rep.to_details(),
        "real_residual": real_pure,
        "real_twisted_residual": real_resid,
        "lambda_vs_trace": lambda_gap,
        "paraholomorphic_einstein_real_constant": para_real,
        "real_einstein": real_einstein,
    }
    # the check is about agreement, so a non-Einstein metric on both sides scores 0
    violation = real_resid if rep.is_einstein else 0.0
    if not agree:
        violation = max(violation, 1.0)
    return Check("check_theorem_correspondence", agree and real_ok, violation, details)


def twin_transfer(M: ParaMetric, samples, tol: float) -> tuple[EinsteinReport, float]:
    """Einstein report for the twin metric and |lambda_twin - e lambda|."""
    base = extract_einstein_constant(M, samples, tol)
    tw = extract_einstein_constant(twin_metric(M), samples, tol)
    expected = E_UNIT * base.lam
    gap = max(abs(tw.lam.re - expected.re), abs(tw.lam.im - expected.im))
    return tw, gap

"""Christoffel symbols, the fundamental tensors and the characteristic connection.

All tensors here are pointwise fields over the full 2n index range.  Only
"lead" blocks are computed from formulas; the remaining blocks follow from
the conjugate mirror (see ``core.mirror``).  The inverse metric is never
formed symbolically: values and derivatives come from ``MetricPoint``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import PCArray, complete_by_mirror
from .expr import as_point
from .metric import IOperator, ParaMetric, realize_metric
from .realgeom import covariant_derivative_I, real_geometry
from .report import Check, point_entry


def slot(a: int, barred: bool, n: int) -> int:
    """Array position of the 1-based index a (barred or not)."""
    return a - 1 + (n if barred else 0)


@dataclass(eq=False)
class IndexedTensor:
    """A tensor field given by a function point -> [T, dT, ddT, ...].

    ``signature`` lists each index as '^' or '_'; derivative axes are appended
    after the tensor axes and range over all 2n slots.
    """

    name: str
    n: int
    signature: str
    fn: Callable[[tuple, int], list[PCArray]]
    max_order: int = 0
    _cache: dict = field(default_factory=dict, repr=False)

    def jet(self, p, order: int = 0) -> list[PCArray]:
        if order > self.max_order:
            raise ValueError(f"{self.name} provides derivatives up to order {self.max_order}")
        key = tuple(as_point(p))
        hit = self._cache.get(key)
        if hit is None or len(hit) <= order:
            hit = self.fn(key, order)
            if len(self._cache) > 256:
                self._cache.clear()
            self._cache[key] = hit
        return hit[: order + 1]

    def at(self, p) -> PCArray:
        return self.jet(p, 0)[0]

    def component(self, p, *slots: int):
        return self.at(p)[tuple(slots)]


def _embed(lead_blocks: list[tuple[tuple, PCArray]], n: int, ndim: int) -> PCArray:
    lead = PCArray.zeros((2 * n,) * ndim)
    for where, blk in lead_blocks:
        lead[where] = blk
    return complete_by_mirror(lead, n)


def _blk(n: int, *kinds: str) -> tuple:
    """Slices for a block: 'u' unbarred, 'b' barred, ':' full range."""
    out = []
    for k in kinds:
        out.append(slice(0, n) if k == "u" else slice(n, 2 * n) if k == "b" else slice(None))
    return tuple(out)


def christoffel(M: ParaMetric) -> IndexedTensor:
    """Levi-Civita symbols of G from the block formulas.

    Gamma^c_ab = G^cd (d_a G_bd + d_b G_ad - d_d G_ab) / 2
    Gamma^cbar_ab = -G^cbar dbar d_dbar G_ab / 2
    Gamma^c_abar b = Gamma^c_b abar = G^cd d_abar G_bd / 2
    and their conjugates.
    """
    n = M.n

    def fn(p, order):
        mp = M.at(p)
        Gi, dG = mp.Ginv, mp.dG
        dGu, dGb = dG[:, :, :n], dG[:, :, n:]
        T = _first_kind(dGu)
        g_cab = PCArray.einsum("cd,abd->cab", Gi, T) * 0.5
        g_cbar_ab = PCArray.einsum("cd,abd->cab", Gi.conj(), dGb) * -0.5
        g_c_abar_b = PCArray.einsum("cd,bda->cab", Gi, dGb) * 0.5
        full = _embed([
            (_blk(n, "u", "u", "u"), g_cab),
            (_blk(n, "b", "u", "u"), g_cbar_ab),
            (_blk(n, "u", "b", "u"), g_c_abar_b),
            (_blk(n, "u", "u", "b"), g_c_abar_b.transpose(0, 2, 1)),
        ], n, 3)
        return [full]

    return IndexedTensor("christoffel", n, "^__", fn)


def _first_kind(dGu: PCArray) -> PCArray:
    """T[a, b, d] = d_a G_bd + d_b G_ad - d_d G_ab with dGu[x, y, v] = d_v G_xy."""
    return dGu.transpose(2, 0, 1) + dGu.transpose(0, 2, 1) - dGu


def levi_civita_full(M: ParaMetric) -> IndexedTensor:
    """Brute-force Levi-Civita over the full 2n x 2n block metric."""
    n = M.n

    def fn(p, order):
        mp = M.at(p)
        G_inv, dG = mp.full("Ginv"), mp.full("dG")
        # dG[A, B, D] = d_D G_AB
        T = dG.transpose(2, 0, 1) + dG.transpose(0, 2, 1) - dG
        return [PCArray.einsum("cd,abd->cab", G_inv, T) * 0.5]

    return IndexedTensor("levi_civita_full", n, "^__", fn)


def fundamental_phi(M: ParaMetric) -> IndexedTensor:
    """Phi^cbar_ab = G^cbar dbar d_dbar G_ab and its conjugate; all else zero."""
    n = M.n

    def fn(p, order):
        mp = M.at(p)
        phi = PCArray.einsum("cd,abd->cab", mp.Ginv.conj(), mp.dG[:, :, n:])
        return [_embed([(_blk(n, "b", "u", "u"), phi)], n, 3)]

    return IndexedTensor("fundamental_phi", n, "^__", fn)


def fundamental_psi(M: ParaMetric) -> IndexedTensor:
    """Psi_ab,cbar = d_cbar G_ab and its conjugate."""
    n = M.n

    def fn(p, order):
        mp = M.at(p)
        return [_embed([(_blk(n, "u", "u", "b"), mp.dG[:, :, n:])], n, 3)]

    return IndexedTensor("fundamental_psi", n, "__,_", fn)


def _lead_connection_jets(mp, order: int) -> list[PCArray]:
    """L^c_ab = Gamma^c_ab and its derivatives in all 2n directions."""
    n = mp.n
    derivs = mp.derivs(order + 1)
    Ts = [_first_kind_deriv(derivs[k + 1], n) for k in range(order + 1)]
    Gi = mp.Ginv
    out = [PCArray.einsum("cd,abd->cab", Gi, Ts[0]) * 0.5]
    if order >= 1:
        dGi = mp.dGinv
        out.append((PCArray.einsum("cdv,abd->cabv", dGi, Ts[0])
                    + PCArray.einsum("cd,abdv->cabv", Gi, Ts[1])) * 0.5)
    if order >= 2:
        ddGi = mp.ddGinv
        mixed = PCArray.einsum("cdv,abdw->cabvw", dGi, Ts[1])
        out.append((PCArray.einsum("cdvw,abd->cabvw", ddGi, Ts[0])
                    + mixed + mixed.transpose(0, 1, 2, 4, 3)
                    + PCArray.einsum("cd,abdvw->cabvw", Gi, Ts[2])) * 0.5)
    if order >= 3:
        raise ValueError("connection derivatives are available up to order 2")
    return out


def _first_kind_deriv(D: PCArray, n: int) -> PCArray:
    """Apply _first_kind to D[x, y, v, ...] = d_v d... G_xy, keeping the first derivative unbarred."""
    Du = D[(slice(None), slice(None), slice(0, n))]
    rest = tuple(range(3, Du.ndim))
    return (Du.transpose(2, 0, 1, *rest) + Du.transpose(0, 2, 1, *rest) - Du)


def characteristic_connection(M: ParaMetric) -> IndexedTensor:
    """L = Gamma + Phi/2 - G^CD (Psi_DA,B + Psi_DB,A)/2.

    Every block except L^c_ab = Gamma^c_ab (and its conjugate) cancels, so
    the field is assembled from that block alone, with derivatives.
    """
    n = M.n

    def fn(p, order):
        mp = M.at(p)
        lead = _lead_connection_jets(mp, order)
        out = []
        for k, blk in enumerate(lead):
            full = PCArray.zeros((2 * n,) * (3 + k))
            full[_blk(n, "u", "u", "u")] = blk
            out.append(complete_by_mirror(full, n))
        return out

    return IndexedTensor("characteristic_connection", n, "^__", fn, max_order=2)


def characteristic_from_definition(M: ParaMetric) -> IndexedTensor:
    """L = Gamma + Phi/2 - G^CD (Psi_DA,B + Psi_DB,A)/2 over all blocks, term by term."""
    gam, phi, psi = christoffel(M), fundamental_phi(M), fundamental_psi(M)

    def fn(p, order):
        Gi = M.at(p).full("Ginv")
        ps = psi.at(p)
        corr = PCArray.einsum("cd,dab->cab", Gi, ps) + PCArray.einsum("cd,dba->cab", Gi, ps)
        return [gam.at(p) + phi.at(p) * 0.5 - corr * 0.5]

    return IndexedTensor("characteristic_connection", M.n, "^__", fn)


def covariant_metric(M: ParaMetric, p, L_full: PCArray) -> PCArray:
    """(D_A G)_BC over the full range, as array [B, C, A]."""
    mp = M.at(p)
    G, dG = mp.full("G"), mp.full("dG")
    return dG - PCArray.einsum("fab,fc->bca", L_full, G) - PCArray.einsum("fac,bf->bca", L_full, G)


def axiom_residuals(M: ParaMetric, p, L_full: PCArray) -> dict[str, float]:
    """Residuals of the three defining conditions for a candidate connection."""
    n = M.n
    sym = (L_full - L_full.transpose(0, 2, 1)).abs_max()
    type_ = max(L_full[_blk(n, "b", "u", "u")].abs_max(), L_full[_blk(n, "u", "u", "b")].abs_max(),
                L_full[_blk(n, "u", "b", "u")].abs_max())
    DG = covariant_metric(M, p, L_full)
    psi = fundamental_psi(M).at(p)
    holo = DG[_blk(n, "u", "u", "u")].abs_max()
    corollary = (DG - psi).abs_max()
    return {"symmetry": sym, "type": type_, "metric": holo, "corollary": corollary}


def verify_characteristic_axioms(M: ParaMetric, samples, tol: float, connection=None) -> Check:
    """Check symmetry, the vanishing mixed blocks and D_a G_bc = 0 (with D G = Psi)."""
    L = connection if connection is not None else characteristic_connection(M)
    worst = {"symmetry": 0.0, "type": 0.0, "metric": 0.0, "corollary": 0.0}
    points = []
    for p in samples:
        p = as_point(p)
        res = axiom_residuals(M, p, L.at(p))
        for k, v in res.items():
            worst[k] = max(worst[k], v)
        points.append(point_entry("verify_characteristic_axioms", p, max(res.values()), tol))
    v = max(worst.values())
    return Check("verify_characteristic_axioms", v < tol, v, {"axioms": worst, "points": points})


def is_paraholomorphic_connection(L: IndexedTensor, samples, tol: float) -> bool:
    """All d_abar L^c_bd vanish at the samples (checked on derivative values)."""
    n = L.n
    for p in samples:
        dL = L.jet(p, 1)[1]
        if dL[_blk(n, "u", "u", "u", "b")].abs_max() >= tol:
            return False
    return True


@dataclass
class EquivalenceReport:
    """The five conditions of the para-holomorphy equivalence, with residuals."""

    residuals: dict[str, float]
    tol: float

    @property
    def flags(self) -> dict[str, bool]:
        return {k: v < self.tol for k, v in self.residuals.items()}

    @property
    def consistent(self) -> bool:
        return len(set(self.flags.values())) == 1


def paraholomorphy_equivalence(M: ParaMetric, samples, tol: float) -> EquivalenceReport:
    """Evaluate Phi = 0, dbar G = 0, real nabla I = 0, D G = 0 and D = nabla."""
    n = M.n
    phi, L, lc = fundamental_phi(M), characteristic_connection(M), levi_civita_full(M)
    g_real = realize_metric(M)
    J = IOperator(n).matrix()
    res = {"phi_zero": 0.0, "metric_paraholomorphic": 0.0, "real_nabla_I": 0.0,
           "DG_zero": 0.0, "D_equals_nabla": 0.0}
    for p in samples:
        p = as_point(p)
        mp = M.at(p)
        Lp = L.at(p)
        res["phi_zero"] = max(res["phi_zero"], phi.at(p).abs_max())
        res["metric_paraholomorphic"] = max(res["metric_paraholomorphic"], mp.dG[:, :, n:].abs_max())
        geo = real_geometry(g_real, p)
        res["real_nabla_I"] = max(res["real_nabla_I"], float(np.max(np.abs(covariant_derivative_I(geo, J)))))
        res["DG_zero"] = max(res["DG_zero"], covariant_metric(M, p, Lp).abs_max())
        res["D_equals_nabla"] = max(res["D_equals_nabla"], (Lp - lc.at(p)).abs_max())
    return EquivalenceReport(res, tol)

"""Curvature, Ricci, scalar and Einstein tensors of the characteristic connection.

Index layout of the full curvature array: R[D, C, A, B] is R^D_{C,AB}, the
D-component of R(d_A, d_B) d_C.  The Ricci tensor is the trace
Ric(d_A, d_C) = R^B_{C,BA}, stored as ric[C, A].
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .connection import IndexedTensor, _blk, characteristic_connection
from .core import PCArray, ParaComplex, as_pc, complete_by_mirror, invert_pc
from .errors import DegeneratePlane, NonRealScalar, ZeroDivisor
from .expr import as_point
from .metric import ParaMetric
from .realgeom import real_ricci_oracle  # noqa: F401  (re-exported oracle)
from .report import Check, point_entry


@dataclass
class CurvatureData:
    n: int
    point: tuple
    R: PCArray             # full R^D_{C,AB}
    dR: PCArray | None     # d_V R^D_{C,AB}, last axis V
    ricci: PCArray         # full Ric_CA
    dricci: PCArray | None

    @property
    def R_hol(self) -> PCArray:
        """R^d_{c,ab}."""
        return self.R[_blk(self.n, "u", "u", "u", "u")]

    @property
    def R_mixed(self) -> PCArray:
        """R^d_{c,abar b}, as array [d, c, a, b]."""
        return self.R[_blk(self.n, "u", "u", "b", "u")]

    @property
    def ricci_hol(self) -> PCArray:
        return self.ricci[_blk(self.n, "u", "u")]

    @property
    def ricci_mixed(self) -> PCArray:
        """Ric_{c abar}."""
        return self.ricci[_blk(self.n, "u", "b")]


def _lead_curvature(L: PCArray, dL: PCArray, n: int) -> tuple[PCArray, PCArray]:
    """Holomorphic and mixed lead blocks from L^c_ab and dL[d, c, b, V] = d_V L^d_cb."""
    dLu = dL[(slice(None),) * 3 + (slice(0, n),)]
    quad = PCArray.einsum("fcb,dfa->dcab", L, L)
    hol = dLu.transpose(0, 1, 3, 2) - dLu + quad - quad.transpose(0, 1, 3, 2)
    mixed = dL[(slice(None),) * 3 + (slice(n, 2 * n),)].transpose(0, 2, 3, 1)
    return hol, mixed


def curvature_components(L: IndexedTensor, p, with_derivative: bool = False) -> CurvatureData:
    """R^d_{c,ab} = d_a L^d_cb - d_b L^d_ca + L^f_cb L^d_fa - L^f_ca L^d_fb and
    R^d_{c,abar b} = d_abar L^d_bc, completed by antisymmetry and conjugation."""
    n = L.n
    p = as_point(p)
    jets = L.jet(p, 2 if with_derivative else 1)
    Lf, dLf = jets[0], jets[1]
    u3 = _blk(n, "u", "u", "u")
    Ll = Lf[u3]
    dLl = dLf[u3 + (slice(None),)]
    hol, mixed = _lead_curvature(Ll, dLl, n)
    R = _assemble(hol, mixed, n)
    dR = None
    if with_derivative:
        ddLl = jets[2][u3 + (slice(None), slice(None))]
        # product rule on the quadratic term, derivative axis last
        ddLu = ddLl[(slice(None),) * 3 + (slice(0, n),)]
        dhol = ddLu.transpose(0, 1, 3, 2, 4) - ddLu
        q = PCArray.einsum("fcbv,dfa->dcabv", dLl, Ll) + PCArray.einsum("fcb,dfav->dcabv", Ll, dLl)
        dhol = dhol + q - q.transpose(0, 1, 3, 2, 4)
        dmixed = ddLl[(slice(None),) * 3 + (slice(n, 2 * n),)].transpose(0, 2, 3, 1, 4)
        dR = _assemble(dhol, dmixed, n)
    ric = ricci_components(R)
    dric = ricci_components(dR) if dR is not None else None
    return CurvatureData(n, p, R, dR, ric, dric)


def _assemble(hol: PCArray, mixed: PCArray, n: int) -> PCArray:
    extra = hol.ndim - 4
    lead = PCArray.zeros((2 * n,) * (4 + extra))
    tail = (slice(None),) * extra
    lead[_blk(n, "u", "u", "u", "u") + tail] = hol
    lead[_blk(n, "u", "u", "b", "u") + tail] = mixed
    lead[_blk(n, "u", "u", "u", "b") + tail] = -mixed.transpose(0, 1, 3, 2, *range(4, 4 + extra))
    return complete_by_mirror(lead, n)


def curvature_from_connection(L: PCArray, dL: PCArray) -> PCArray:
    """Generic R^D_{C,AB} from full arrays L[D, A, B] and dL[D, A, B, V]."""
    quad = PCArray.einsum("fcb,dfa->dcab", L, L)
    return dL.transpose(0, 1, 3, 2) - dL + quad - quad.transpose(0, 1, 3, 2)


def ricci_components(R: PCArray) -> PCArray:
    """Ric_CA = R^B_{C,BA}; any trailing derivative axes are kept."""
    return PCArray.einsum("bcba...->ca...", R)


def lower_curvature(R: PCArray, G_full: PCArray) -> PCArray:
    """R_ABCD = G_DF R^F_{C,AB}."""
    return PCArray.einsum("df,fcab->abcd", G_full, R)


def _embed_vector(Z, n: int) -> PCArray:
    v = PCArray.zeros((2 * n,))
    for i, c in enumerate(Z):
        v[i] = as_pc(c)
    return v


def sectional_curvature(curv: CurvatureData, M: ParaMetric, Z1, Z2, eps_inv: float | None = None) -> ParaComplex:
    """K(P) = R(Z1, Z2, Z1, Z2) / (G(Z1,Z1) G(Z2,Z2) - G(Z1,Z2)^2) for Z1, Z2 of type (1,0)."""
    n = M.n
    eps = M.eps_inv if eps_inv is None else eps_inv
    G = M.at(curv.point).full("G")
    z1, z2 = _embed_vector(Z1, n), _embed_vector(Z2, n)
    low = lower_curvature(curv.R, G)
    num = PCArray.einsum("abcd,a,b,c,d->", low, z1, z2, z1, z2)[()]
    g11 = PCArray.einsum("ab,a,b->", G, z1, z1)[()]
    g22 = PCArray.einsum("ab,a,b->", G, z2, z2)[()]
    g12 = PCArray.einsum("ab,a,b->", G, z1, z2)[()]
    den = g11 * g22 - g12 * g12
    try:
        return num * invert_pc(den, eps)
    except ZeroDivisor:
        raise DegeneratePlane(den) from None


def scalar_curvature(curv: CurvatureData, M: ParaMetric, tol: float = 1e-9) -> ParaComplex:
    """rho = G^CA Ric_CA; real by the reality condition."""
    Gi = M.at(curv.point).full("Ginv")
    rho = PCArray.einsum("ca,ca->", Gi, curv.ricci)[()]
    if abs(rho.im) > tol * max(1.0, abs(rho.re)):
        raise NonRealScalar(rho.im)
    return rho


@dataclass
class EinsteinTensorData:
    E: PCArray        # E_AB
    mixed: PCArray    # E^A_B
    T: PCArray        # stress tensor E / (8 pi c)
    rho: ParaComplex
    c: float
    vacuum: bool


def einstein_tensor(curv: CurvatureData, M: ParaMetric, c: float = 1.0, tol: float = 1e-9) -> EinsteinTensorData:
    mp = M.at(curv.point)
    G, Gi = mp.full("G"), mp.full("Ginv")
    rho = scalar_curvature(curv, M, tol)
    E = curv.ricci - G * (rho * 0.5)
    mixed = PCArray.einsum("ac,cb->ab", Gi, E)
    return EinsteinTensorData(E, mixed, E / (8.0 * math.pi * c), rho, c, curv.ricci.abs_max() < tol)


def divergence_at(M: ParaMetric, p, L: IndexedTensor | None = None) -> PCArray:
    """(div E)_B = d_A E^A_B + L^A_AF E^F_B - L^F_AB E^A_F."""
    L = L if L is not None else characteristic_connection(M)
    curv = curvature_components(L, p, with_derivative=True)
    mp = M.at(p)
    n2 = 2 * M.n
    Gi, dGi = mp.full("Ginv"), mp.full("dGinv")
    ric, dric = curv.ricci, curv.dricci
    rho = PCArray.einsum("ca,ca->", Gi, ric)
    drho = PCArray.einsum("cav,ca->v", dGi, ric) + PCArray.einsum("ca,cav->v", Gi, dric)
    eye = PCArray.eye(n2)
    mixed = PCArray.einsum("ac,cb->ab", Gi, ric) - eye * (rho[()] * 0.5)
    dmixed = (PCArray.einsum("acv,cb->abv", dGi, ric) + PCArray.einsum("ac,cbv->abv", Gi, dric)
              - PCArray.einsum("ab,v->abv", eye, drho) * 0.5)
    Lp = L.at(p)
    return (PCArray.einsum("aba->b", dmixed)
            + PCArray.einsum("aaf,fb->b", Lp, mixed)
            - PCArray.einsum("fab,af->b", Lp, mixed))


def divergence_einstein(M: ParaMetric, samples, tol: float, L: IndexedTensor | None = None) -> Check:
    worst, points = 0.0, []
    for p in samples:
        p = as_point(p)
        v = divergence_at(M, p, L).abs_max()
        worst = max(worst, v)
        points.append(point_entry("divergence_einstein", p, v, tol))
    return Check("divergence_einstein", worst < tol, worst, {"points": points})


def _rho0(M: ParaMetric, L: IndexedTensor, p) -> ParaComplex:
    curv = curvature_components(L, p)
    return PCArray.einsum("ca,ca->", M.at(p).Ginv, curv.ricci_hol)[()]


def classify_characteristic_einstein(M: ParaMetric, samples, tol: float, step: float = 1e-4,
                                     fd_threshold: float = 1e-5) -> Check:
    """Ric_{c abar} = 0 and Ric_ca = f G_ca with f = G^ca Ric_ca / n."""
    n = M.n
    L = characteristic_connection(M)
    mixed_max = resid_max = 0.0
    fs = []
    for p in samples:
        p = as_point(p)
        curv = curvature_components(L, p)
        mp = M.at(p)
        rho0 = PCArray.einsum("ca,ca->", mp.Ginv, curv.ricci_hol)[()]
        f = rho0 / n
        resid = (curv.ricci_hol - mp.G * f).abs_max()
        mixed_max = max(mixed_max, curv.ricci_mixed.abs_max())
        resid_max = max(resid_max, resid)
        fs.append(f)
    is_einstein = mixed_max < tol and resid_max < tol
    details = {"mixed_ricci": mixed_max, "residual": resid_max, "f": fs, "is_characteristic_einstein": is_einstein}
    violation = max(mixed_max, resid_max)
    if is_einstein and n >= 3:
        # rho0 must be annihilated by d/dz^a = (d/dx^a + e d/dy^a)/2
        worst = 0.0
        for p in samples:
            p = list(as_point(p))
            for a in range(n):
                dx = _central(lambda q: _rho0(M, L, q), p, a, ParaComplex(step, 0.0), step)
                dy = _central(lambda q: _rho0(M, L, q), p, a, ParaComplex(0.0, step), step)
                d = (dx + ParaComplex(0.0, 1.0) * dy) * 0.5
                worst = max(worst, abs(d.re), abs(d.im))
        details["rho0_dz"] = worst
        details["rho0_anti_paraholomorphic"] = worst < fd_threshold
        if worst >= fd_threshold:
            is_einstein = False
    return Check("classify_characteristic_einstein", is_einstein, violation, details)


def _central(fn, p, a, delta: ParaComplex, h: float) -> ParaComplex:
    up, dn = list(p), list(p)
    up[a] = p[a] + delta
    dn[a] = p[a] - delta
    return (fn(tuple(up)) - fn(tuple(dn))) * (1.0 / (2 * h))

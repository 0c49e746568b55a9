"""Para-complex Lie groups: Killing form, invariant metric, Maurer-Cartan frames.

Structure constants are stored as C[a, b, c] = C^a_bc.  A frame lambda^a_b(z)
is a matrix of expressions in z^1..z^m whose inverse is written lam_inv.

Curvature sign: the closed form used here,

    R^d_{c,ab} = 1/4 lam_inv^d_f C^f_pq C^q_rs lambda^p_c lambda^r_a lambda^s_b,

is the curvature of the connection computed from the generic formula
R(d_a, d_b) d_c = [D_a, D_b] d_c.  Traced as Ric_ca = R^b_{c,ba} it gives
Ric = -g/4.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .connection import IndexedTensor
from .core import EPS_INV, PCArray, ParaComplex, as_pc, complete_by_mirror, invert_pc, unsplit_pc
from .errors import (
    DegeneratePlane,
    JacobiViolation,
    NoSignWorks,
    NotAntisymmetric,
    NotSemisimple,
    NotSemisimpleWarning,
    ZeroDivisor,
)
from .expr import ONE, ZERO, JetTable, add, as_point, const, mul, total, z
from .metric import ParaMetric, RealizedMetric, realize_metric
from .report import Check, point_entry


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    m: int
    C: PCArray          # C[a, b, c] = C^a_bc
    killing: PCArray    # C_ab = C^c_ad C^d_bc
    killing_det: ParaComplex
    semisimple: bool


def killing_form(C: PCArray) -> PCArray:
    return PCArray.einsum("cad,dbc->ab", C, C)


def _pc_det(A: PCArray) -> ParaComplex:
    plus, minus = A.split()
    return unsplit_pc(float(np.linalg.det(plus)), float(np.linalg.det(minus)))


def jacobi_residual(C: PCArray) -> float:
    """max |C^a_bd C^d_ce + C^a_cd C^d_eb + C^a_ed C^d_bc|."""
    t = PCArray.einsum("abd,dce->abce", C, C)
    cyc = t + t.transpose(0, 2, 3, 1) + t.transpose(0, 3, 1, 2)
    return cyc.abs_max()


def validate_structure(C, tol: float = 1e-12, eps_inv: float = EPS_INV) -> LieAlgebraData:
    C = C if isinstance(C, PCArray) else PCArray.from_values(C)
    m = C.shape[0]
    if C.shape != (m, m, m):
        raise ValueError(f"structure constants must have shape (m, m, m), got {C.shape}")
    for a, b, c in itertools.product(range(m), repeat=3):
        if C.re[a, b, c] != -C.re[a, c, b] or C.im[a, b, c] != -C.im[a, c, b]:
            raise NotAntisymmetric(a + 1, b + 1, c + 1)
    scale = max(1.0, C.abs_max() ** 2)
    res = jacobi_residual(C)
    if res > tol * scale:
        raise JacobiViolation(res)
    K = killing_form(C)
    det = _pc_det(K)
    plus, minus = (det.re + det.im), (det.re - det.im)
    semisimple = abs(plus) > eps_inv and abs(minus) > eps_inv
    return LieAlgebraData(m, C, K, det, semisimple)


def structure_from_entries(m: int, entries) -> PCArray:
    """Build C from (upper, (b, c), value) triples with 1-based indices; mates are filled in."""
    C = PCArray.zeros((m, m, m))
    seen = {}
    for a, (b, c), value in entries:
        v = as_pc(value)
        key = (a, b, c)
        C[a - 1, b - 1, c - 1] = v
        seen[key] = v
    for (a, b, c), v in seen.items():
        if (a, c, b) not in seen:
            C[a - 1, c - 1, b - 1] = -v
    return C


# ---------------------------------------------------------------- frames

@dataclass(eq=False)
class LambdaFrame:
    """lambda^a_b(z) as an m x m matrix of expressions; entries[a][b] = lambda^a_b."""

    m: int
    entries: tuple
    sign: int = 1
    order: int | None = None
    _jets: JetTable | None = field(default=None, repr=False)

    def table(self) -> JetTable:
        if self._jets is None:
            self._jets = JetTable([e for row in self.entries for e in row], self.m)
        return self._jets

    def jets(self, p, order: int = 1) -> list[PCArray]:
        """[lam, dlam, ddlam, ...] with holomorphic derivative axes only (length m)."""
        m = self.m
        out = []
        for k, (re, im) in enumerate(self.table().evaluate(p, order)):
            arr = PCArray(re, im).transpose(*range(re.ndim))
            arr = PCArray(arr.re.reshape((m, m) + re.shape[1:]), arr.im.reshape((m, m) + re.shape[1:]))
            sl = (slice(None), slice(None)) + (slice(0, m),) * k
            out.append(arr[sl] if k else arr)
        return out

    def value(self, p) -> PCArray:
        return self.jets(p, 0)[0]


def identity_frame(m: int) -> LambdaFrame:
    return LambdaFrame(m, tuple(tuple(ONE if a == b else ZERO for b in range(m)) for a in range(m)), order=0)


def constant_frame(M) -> LambdaFrame:
    M = M if isinstance(M, PCArray) else PCArray.from_values(M)
    m = M.shape[0]
    return LambdaFrame(m, tuple(tuple(const(*M[a, b]) for b in range(m)) for a in range(m)))


def _series_entries(C: PCArray, N: int, s: int) -> tuple:
    m = C.shape[0]
    # (ad_z)^a_b = s C^a_cb z^c
    A = [[total(mul(const(s * C.re[a, c, b], s * C.im[a, c, b]), z(c + 1))
                for c in range(m) if C.re[a, c, b] != 0 or C.im[a, c, b] != 0)
          for b in range(m)] for a in range(m)]
    P = [[ONE if a == b else ZERO for b in range(m)] for a in range(m)]
    lam = [[ZERO] * m for _ in range(m)]
    for k in range(N + 1):
        coef = const(1.0 / math.factorial(k + 1))
        for a in range(m):
            for b in range(m):
                lam[a][b] = add(lam[a][b], mul(coef, P[a][b]))
        if k < N:
            P = [[total(mul(P[a][d], A[d][b]) for d in range(m)) for b in range(m)] for a in range(m)]
    return tuple(tuple(row) for row in lam)


def mc_residual_at(L: LieAlgebraData, frame: LambdaFrame, p) -> float:
    """max over (d, b, c) of |d_c lam^d_b - d_b lam^d_c + C^d_pq lam^p_b lam^q_c|."""
    lam, dlam = frame.jets(p, 1)
    # dlam[d, b, c] = d_c lam^d_b
    r = dlam - dlam.transpose(0, 2, 1) + PCArray.einsum("dpq,pb,qc->dbc", L.C, lam, lam)
    return r.abs_max()


def mc_check(L: LieAlgebraData, frame: LambdaFrame, samples, tol: float) -> Check:
    worst, points = 0.0, []
    for p in samples:
        p = as_point(p)
        v = mc_residual_at(L, frame, p)
        worst = max(worst, v)
        points.append(point_entry("mc_check", p, v, tol))
    return Check("mc_check", worst < tol, worst, {"points": points})


def probe_points(m: int, radius: float, count: int = 4, seed: int = 0) -> list[tuple]:
    """Deterministic para-complex points with max-norm ``radius``."""
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(count):
        v = rng.uniform(-1.0, 1.0, size=(m, 2))
        v *= radius / np.max(np.abs(v))
        pts.append(as_point([tuple(row) for row in v]))
    return pts


def bch_lambda_series(L: LieAlgebraData, order: int = 6, radius: float = 1e-2) -> LambdaFrame:
    """lambda = sum_k (s ad_z)^k / (k+1)!, k = 0..order, with the sign s fixed by mc_check."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if order == 0:
        return LambdaFrame(L.m, _series_entries(L.C, 0, 1), 1, 0)
    cmax = max(L.C.abs_max(), 1.0)
    bound = 10.0 * cmax ** (order + 1) * radius ** order
    probes = probe_points(L.m, radius)
    residuals = {}
    for s in (1, -1):
        frame = LambdaFrame(L.m, _series_entries(L.C, order, s), s, order)
        residuals[s] = max(mc_residual_at(L, frame, p) for p in probes)
        if residuals[s] <= bound:
            return frame
    raise NoSignWorks(residuals)


# ---------------------------------------------------------------- geometry

def invariant_metric(L: LieAlgebraData, frame: LambdaFrame) -> ParaMetric:
    """g_ab(z) = C_pq lambda^p_a lambda^q_b."""
    if not L.semisimple:
        warnings.warn(NotSemisimpleWarning(f"Killing form is degenerate (det={L.killing_det})"), stacklevel=2)
    m = L.m
    K = L.killing
    lam = frame.entries
    G = [[ZERO] * m for _ in range(m)]
    for a in range(m):
        for b in range(a, m):
            terms = []
            for p_, q in itertools.product(range(m), repeat=2):
                kv = K[p_, q]
                if kv.re == 0 and kv.im == 0:
                    continue
                terms.append(mul(const(kv.re, kv.im), mul(lam[p_][a], lam[q][b])))
            G[a][b] = G[b][a] = total(terms)
    return ParaMetric(m, tuple(tuple(r) for r in G))


def _frame_data(frame: LambdaFrame, p, order: int):
    jets = frame.jets(p, order + 1)
    lam = jets[0]
    lam_inv = lam.inv()
    return jets, lam_inv


def lie_connection_jets(L: LieAlgebraData, frame: LambdaFrame, p, order: int = 0) -> list[PCArray]:
    """Gamma^a_bc = lam_inv^a_d (d_c lam^d_b + d_b lam^d_c) / 2 and (order 1) its derivative."""
    jets, li = _frame_data(frame, p, order)
    dlam = jets[1]
    S = dlam + dlam.transpose(0, 2, 1)           # S[d, b, c]
    gam = PCArray.einsum("ad,dbc->abc", li, S) * 0.5
    out = [gam]
    if order >= 1:
        ddlam = jets[2]                         # ddlam[d, b, c, e]
        dS = ddlam + ddlam.transpose(0, 2, 1, 3)
        dli = -PCArray.einsum("af,fge,gd->ade", li, dlam, li)
        out.append((PCArray.einsum("ade,dbc->abce", dli, S) + PCArray.einsum("ad,dbce->abce", li, dS)) * 0.5)
    return out


def lie_connection_first_form(L: LieAlgebraData, frame: LambdaFrame, p) -> PCArray:
    """Gamma^a_bc = lam_inv^a_d (d_c lam^d_b + C^d_pq lam^p_b lam^q_c / 2)."""
    (lam, dlam), li = _frame_data(frame, p, 0)
    inner = dlam + PCArray.einsum("dpq,pb,qc->dbc", L.C, lam, lam) * 0.5
    return PCArray.einsum("ad,dbc->abc", li, inner)


def lie_connection(L: LieAlgebraData, frame: LambdaFrame) -> IndexedTensor:
    """The connection as a full-index field (holomorphic block plus its mirror)."""
    m = L.m

    def fn(p, order):
        lead = lie_connection_jets(L, frame, p, order)
        out = []
        for k, blk in enumerate(lead):
            full = PCArray.zeros((2 * m,) * (3 + k))
            full[(slice(0, m),) * (3 + k)] = blk
            out.append(complete_by_mirror(full, m))
        return out

    return IndexedTensor("lie_connection", m, "^__", fn, max_order=1)


def lie_curvature(L: LieAlgebraData, frame: LambdaFrame, p) -> PCArray:
    """R[d, c, a, b] = R^d_{c,ab} from the closed form (sign as in the module docstring)."""
    lam = frame.value(p)
    li = lam.inv()
    return PCArray.einsum("df,fpq,qrs,pc,ra,sb->dcab", li, L.C, L.C, lam, lam, lam) * 0.25


def lie_curvature_derivative(L: LieAlgebraData, frame: LambdaFrame, p) -> PCArray:
    """d_e R^d_{c,ab} of the closed form, last axis e."""
    lam, dlam = frame.jets(p, 1)
    li = lam.inv()
    dli = -PCArray.einsum("af,fge,gd->ade", li, dlam, li)
    CC = PCArray.einsum("fpq,qrs->fprs", L.C, L.C)
    t1 = PCArray.einsum("dfe,fprs,pc,ra,sb->dcabe", dli, CC, lam, lam, lam)
    t2 = PCArray.einsum("df,fprs,pce,ra,sb->dcabe", li, CC, dlam, lam, lam)
    t3 = PCArray.einsum("df,fprs,pc,rae,sb->dcabe", li, CC, lam, dlam, lam)
    t4 = PCArray.einsum("df,fprs,pc,ra,sbe->dcabe", li, CC, lam, lam, dlam)
    return (t1 + t2 + t3 + t4) * 0.25


@dataclass
class LieRicciReport:
    ricci: PCArray
    metric: PCArray
    residual: float
    scalar: ParaComplex | None
    einstein_constant: ParaComplex | None


def lie_ricci_and_einstein(L: LieAlgebraData, frame: LambdaFrame, p) -> LieRicciReport:
    """Ric_ca = R^b_{c,ba} = -C_pr lambda^p_c lambda^r_a / 4 and the scalar g^ab R_ab."""
    p = as_point(p)
    R = lie_curvature(L, frame, p)
    ric = PCArray.einsum("bcba->ca", R)
    lam = frame.value(p)
    g = PCArray.einsum("pq,pa,qb->ab", L.killing, lam, lam)
    residual = (ric + g * 0.25).abs_max()
    if not L.semisimple:
        return LieRicciReport(ric, g, residual, None, None)
    gi = g.inv()
    scalar = PCArray.einsum("ab,ab->", gi, ric)[()]
    return LieRicciReport(ric, g, residual, scalar, scalar * (1.0 / L.m))


def lie_lowered_curvature(L: LieAlgebraData, frame: LambdaFrame, p) -> tuple[PCArray, PCArray]:
    """(R_abcd closed form, R_abcd = g_df R^f_{c,ab} by composition)."""
    lam = frame.value(p)
    closed = PCArray.einsum("tf,fpq,qrs,pa,tb,rc,sd->abcd", L.killing, L.C, L.C, lam, lam, lam, lam) * 0.25
    g = PCArray.einsum("pq,pa,qb->ab", L.killing, lam, lam)
    composed = PCArray.einsum("df,fcab->abcd", g, lie_curvature(L, frame, p))
    return closed, composed


def lie_lowered_and_sectional(L: LieAlgebraData, frame: LambdaFrame, Z, W, p,
                              eps_inv: float = EPS_INV) -> ParaComplex:
    """k(Z, W) solved from k (g_ac g_bd - g_ad g_bc) Z^a Z^c W^b W^d = R_abcd Z^a Z^c W^b W^d."""
    if not L.semisimple:
        raise NotSemisimple(L.killing_det)
    lam = frame.value(p)
    g = PCArray.einsum("pq,pa,qb->ab", L.killing, lam, lam)
    low, _ = lie_lowered_curvature(L, frame, p)
    Zv = PCArray.from_values([as_pc(c) for c in Z])
    Wv = PCArray.from_values([as_pc(c) for c in W])
    num = PCArray.einsum("abcd,a,b,c,d->", low, Zv, Wv, Zv, Wv)[()]
    gzz = PCArray.einsum("ab,a,b->", g, Zv, Zv)[()]
    gww = PCArray.einsum("ab,a,b->", g, Wv, Wv)[()]
    gzw = PCArray.einsum("ab,a,b->", g, Zv, Wv)[()]
    den = gzz * gww - gzw * gzw
    try:
        return num * invert_pc(den, eps_inv)
    except ZeroDivisor:
        raise DegeneratePlane(den) from None


def right_invariant_field(frame: LambdaFrame, zeta, p) -> list[ParaComplex]:
    """Z^a(p) = lam_inv^a_b(p) zeta^b, the field dual to the right-invariant coframe."""
    li = frame.value(p).inv()
    v = PCArray.einsum("ab,b->a", li, PCArray.from_values([as_pc(c) for c in zeta]))
    return [v[a] for a in range(frame.m)]


def parallel_residual_at(L: LieAlgebraData, frame: LambdaFrame, p) -> float:
    """max |nabla_e R^d_{c,ab}| with the symmetrized connection."""
    p = as_point(p)
    R = lie_curvature(L, frame, p)
    dR = lie_curvature_derivative(L, frame, p)
    G = lie_connection_jets(L, frame, p, 0)[0]
    nab = (dR
           + PCArray.einsum("def,fcab->dcabe", G, R)
           - PCArray.einsum("fec,dfab->dcabe", G, R)
           - PCArray.einsum("fea,dcfb->dcabe", G, R)
           - PCArray.einsum("feb,dcaf->dcabe", G, R))
    return nab.abs_max()


def parallel_curvature_check(L: LieAlgebraData, frame: LambdaFrame, samples, tol: float) -> Check:
    worst, points = 0.0, []
    for p in samples:
        p = as_point(p)
        v = parallel_residual_at(L, frame, p)
        worst = max(worst, v)
        points.append(point_entry("parallel_curvature_check", p, v, tol))
    return Check("parallel_curvature_check", worst < tol, worst, {"points": points})


def para_kahler_norden_realization(L: LieAlgebraData, frame: LambdaFrame) -> RealizedMetric:
    if not L.semisimple:
        raise NotSemisimple(L.killing_det)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotSemisimpleWarning)
        return realize_metric(invariant_metric(L, frame))


def sl2_structure() -> PCArray:
    """sl(2) in the basis (h, e, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    return structure_from_entries(3, [(2, (1, 2), 2.0), (3, (1, 3), -2.0), (1, (2, 3), 1.0)])


def direct_sum(*algebras: PCArray) -> PCArray:
    m = sum(C.shape[0] for C in algebras)
    out = PCArray.zeros((m, m, m))
    o = 0
    for C in algebras:
        k = C.shape[0]
        out[o:o + k, o:o + k, o:o + k] = C
        o += k
    return out

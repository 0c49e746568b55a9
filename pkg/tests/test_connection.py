import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paraholo.connection import (
    _blk,
    axiom_residuals,
    covariant_metric,
    characteristic_connection,
    characteristic_from_definition,
    christoffel,
    fundamental_phi,
    fundamental_psi,
    is_paraholomorphic_connection,
    levi_civita_full,
    paraholomorphy_equivalence,
    slot,
    verify_characteristic_axioms,
)
from paraholo.core import PCArray, ParaComplex, complete_by_mirror
from paraholo.metric import IOperator, build_metric, default_samples, twin_metric

from conftest import HOLO, NONHOLO, metric, random_points, small_pcs

S1 = default_samples(1)
ALL = sorted({**HOLO, **NONHOLO})


def fd_full_metric_derivative(M, p, h=1e-5):
    """d_V G_AB by central differences in x, y: d/dz = (d/dx + e d/dy)/2, d/dzb = (d/dx - e d/dy)/2."""
    n = M.n

    def full(q):
        G = M.evaluate(q)
        out = PCArray.zeros((2 * n, 2 * n))
        out[:n, :n] = G
        out[n:, n:] = G.conj()
        return out

    dG = PCArray.zeros((2 * n, 2 * n, 2 * n))
    for a in range(n):
        parts = []
        for delta in (ParaComplex(h, 0), ParaComplex(0, h)):
            up, dn = list(p), list(p)
            up[a] = p[a] + delta
            dn[a] = p[a] - delta
            parts.append((full(tuple(up)) - full(tuple(dn))) / (2 * h))
        dx, dy = parts
        edy = PCArray(dy.im, dy.re)  # e * dy
        dG[:, :, a] = (dx + edy) * 0.5
        dG[:, :, n + a] = (dx - edy) * 0.5
    return dG, full(p)


def brute_force_levi_civita(M, p):
    """Gamma^C_AB = G^CD (d_A G_BD + d_B G_AD - d_D G_AB) / 2 over all 2n slots."""
    dG, G = fd_full_metric_derivative(M, p)
    Gi = G.inv()
    T = dG.transpose(2, 0, 1) + dG.transpose(0, 2, 1) - dG
    return PCArray.einsum("cd,abd->cab", Gi, T) * 0.5


# christoffel

def test_flat_christoffel_zero(flat2):
    assert christoffel(flat2).at(default_samples(2)[0]).abs_max() == 0.0


def test_christoffel_one_plus_z():
    M = build_metric(1, [["1 + z1"]])
    v = christoffel(M).component((ParaComplex(1, 0),), 0, 0, 0)
    assert v.re == pytest.approx(0.25) and v.im == 0


def test_christoffel_barred_block_sign():
    # full-block formula by hand for G_11 = zb1 (so G_1bar1bar = z1):
    # Gamma^1bar_11 = 1/2 G^{1bar 1bar} (0 + 0 - d_1bar G_11) = -1 / (2 z1) = -1/4 at z1 = 2
    M = build_metric(1, [["zb1"]])
    p = (ParaComplex(2, 0),)
    v = christoffel(M).component(p, slot(1, True, 1), 0, 0)
    assert v.re == pytest.approx(-0.25) and v.im == pytest.approx(0.0)
    assert levi_civita_full(M).component(p, 1, 0, 0) == v


@pytest.mark.parametrize("name", ALL)
def test_block_formulas_match_brute_force(name):
    M = metric(name)
    for p in random_points(M.n, 3, seed=5):
        ref = brute_force_levi_civita(M, p)
        assert (christoffel(M).at(p) - ref).abs_max() < 1e-7
        assert (levi_civita_full(M).at(p) - ref).abs_max() < 1e-7


# fundamental_phi / fundamental_psi

def test_phi_vanishes_for_holomorphic(holo_metric):
    for p in random_points(holo_metric.n, 3):
        assert fundamental_phi(holo_metric).at(p).abs_max() == 0.0
        assert fundamental_psi(holo_metric).at(p).abs_max() == 0.0


def test_phi_example():
    M = build_metric(1, [["zb1"]])
    p = (ParaComplex(2, 0),)
    phi = fundamental_phi(M).at(p)
    assert phi[1, 0, 0] == ParaComplex(0.5, 0)
    n = 1
    # Phi^c_{a bbar} never appears
    assert phi[_blk(n, "u", "u", "b")].abs_max() == 0.0


def test_psi_examples():
    p = (ParaComplex(1, 0),)
    assert fundamental_psi(build_metric(1, [["zb1"]])).at(p)[0, 0, 1] == ParaComplex(1, 0)
    psi = fundamental_psi(build_metric(1, [["z1 + zb1*zb1"]])).at(p)
    assert psi[0, 0, 1] == ParaComplex(2, 0)


# characteristic_connection

def test_flat_connection_zero(flat2):
    L = characteristic_connection(flat2)
    assert L.at(default_samples(2)[0]).abs_max() == 0.0


def test_holomorphic_connection_equals_christoffel(holo_metric):
    for p in random_points(holo_metric.n, 3):
        diff = characteristic_connection(holo_metric).at(p) - christoffel(holo_metric).at(p)
        assert diff.abs_max() < 1e-14


def test_type_blocks_vanish():
    M = build_metric(1, [["zb1"]])
    L = characteristic_connection(M).at((ParaComplex(2, 0),))
    assert L[1, 0, 0] == ParaComplex(0, 0) and L[0, 0, 1] == ParaComplex(0, 0)


@pytest.mark.parametrize("name", ALL)
def test_assembled_matches_term_by_term_definition(name):
    M = metric(name)
    for p in random_points(M.n, 3, seed=8):
        diff = characteristic_connection(M).at(p) - characteristic_from_definition(M).at(p)
        assert diff.abs_max() < 1e-13


def test_connection_derivatives_by_finite_differences():
    M = metric("cross2")
    L = characteristic_connection(M)
    p = random_points(2, 1, seed=9)[0]
    dL = L.jet(p, 1)[1]
    h = 1e-5
    for a in range(2):
        up, dn = list(p), list(p)
        up[a] = p[a] + ParaComplex(h, 0)
        dn[a] = p[a] - ParaComplex(h, 0)
        fx = (L.at(tuple(up)) - L.at(tuple(dn))) / (2 * h)
        # d/dx = d/dz + d/dzb
        assert (dL[..., a] + dL[..., 2 + a] - fx).abs_max() < 1e-8


# verify_characteristic_axioms

def test_axioms_hold(holo_metric, nonholo_metric):
    for M in (holo_metric, nonholo_metric):
        chk = verify_characteristic_axioms(M, random_points(M.n, 4), 1e-10)
        assert chk.passed, chk.details["axioms"]


def test_axioms_exact_on_flat(flat2):
    assert verify_characteristic_axioms(flat2, default_samples(2), 1e-10).violation == 0.0


def test_DG_equals_psi_example():
    M = build_metric(1, [["zb1"]])
    p = (ParaComplex(2, 0),)
    DG = covariant_metric(M, p, characteristic_connection(M).at(p))
    assert DG[0, 0, 1] == ParaComplex(1, 0)


# is_paraholomorphic_connection

def test_paraholomorphic_connection_examples(flat2):
    assert is_paraholomorphic_connection(characteristic_connection(metric("mixed2")), default_samples(2), 1e-12)
    assert not is_paraholomorphic_connection(characteristic_connection(build_metric(1, [["z1 + zb1"]])), S1, 1e-12)
    assert is_paraholomorphic_connection(characteristic_connection(flat2), default_samples(2), 1e-12)


# properties

names = st.sampled_from(ALL)


def _point(M, a, b):
    return (a, b)[: M.n]


@given(names, small_pcs, small_pcs)
def test_phi_symmetric_and_anticommutes_with_I(name, a, b):
    M = metric(name)
    p = _point(M, a, b)
    phi = fundamental_phi(M).at(p)
    assert (phi - phi.transpose(0, 2, 1)).abs_max() < 1e-12
    Iop = IOperator(M.n).on_indices()
    lhs = PCArray.einsum("cab,ad->cdb", phi, Iop)        # Phi(I Z1, Z2)
    rhs = PCArray.einsum("dc,cab->dab", Iop, phi) * -1.0  # -I Phi(Z1, Z2)
    assert (lhs - rhs).abs_max() < 1e-12


@given(names, small_pcs, small_pcs)
def test_psi_is_lowered_phi(name, a, b):
    M = metric(name)
    p = _point(M, a, b)
    phi, psi = fundamental_phi(M).at(p), fundamental_psi(M).at(p)
    G = M.at(p).full("G")
    assert (PCArray.einsum("dab,dc->abc", phi, G) - psi).abs_max() < 1e-10


@given(names, small_pcs, small_pcs)
def test_twin_christoffel_relations(name, a, b):
    M = metric(name)
    p = _point(M, a, b)
    n = M.n
    g, gt = christoffel(M).at(p), christoffel(twin_metric(M)).at(p)
    uuu, buu = _blk(n, "u", "u", "u"), _blk(n, "b", "u", "u")
    assert (gt[uuu] - g[uuu]).abs_max() < 1e-10
    assert (gt[buu] + g[buu]).abs_max() < 1e-10
    # Phi is the twin minus original difference
    assert (gt - g - fundamental_phi(M).at(p)).abs_max() < 1e-10


@settings(max_examples=40)
@given(names, small_pcs, small_pcs, st.integers(0, 2**31 - 1))
def test_uniqueness_probe(name, a, b, seed):
    # a symmetric perturbation that respects the type conditions must break D G = Psi
    M = metric(name)
    p = _point(M, a, b)
    n = M.n
    rng = np.random.default_rng(seed)
    D = PCArray(rng.normal(size=(n, n, n)), rng.normal(size=(n, n, n)))
    D = (D + D.transpose(0, 2, 1)) * 0.5
    lead = PCArray.zeros((2 * n,) * 3)
    lead[_blk(n, "u", "u", "u")] = D
    pert = complete_by_mirror(lead, n)
    res = axiom_residuals(M, p, characteristic_connection(M).at(p) + pert)
    assert res["symmetry"] < 1e-12 and res["type"] < 1e-12
    assert max(res["metric"], res["corollary"]) > 1e-6


@pytest.mark.parametrize("name", ALL)
def test_equivalence_of_five_conditions(name):
    M = metric(name)
    rep = paraholomorphy_equivalence(M, random_points(M.n, 4, seed=11), 1e-9)
    assert rep.consistent, rep.residuals
    assert all(rep.flags.values()) == (name in HOLO)

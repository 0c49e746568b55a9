import numpy as np
import pytest
from hypothesis import given, strategies as st

from paraholo.core import (
    PCArray,
    ParaComplex,
    complete_by_mirror,
    conj_pc,
    invert_pc,
    matrix_inverse_pc,
    mirror,
    modulus,
    mul_pc,
    split_pc,
    unsplit_pc,
)
from paraholo.errors import SingularProjection, ZeroDivisor

from conftest import pcs

ints = st.integers(min_value=-50, max_value=50)
int_pcs = st.builds(ParaComplex, ints.map(float), ints.map(float))


# mul_pc

def test_e_squared_is_one():
    assert mul_pc(ParaComplex(0, 1), ParaComplex(0, 1)) == ParaComplex(1, 0)


def test_null_product():
    assert mul_pc(ParaComplex(1, 1), ParaComplex(1, -1)) == ParaComplex(0, 0)


def test_modulus_example():
    assert mul_pc(ParaComplex(2, 1), ParaComplex(2, -1)) == ParaComplex(3, 0)


# conj_pc

def test_conj_examples():
    assert conj_pc(ParaComplex(3, 2)) == ParaComplex(3, -2)
    assert conj_pc(ParaComplex(5, 0)) == ParaComplex(5, 0)
    assert conj_pc(conj_pc(ParaComplex(1, 7))) == ParaComplex(1, 7)


# invert_pc

def test_invert_examples():
    w = invert_pc(ParaComplex(2, 1))
    assert w.re == pytest.approx(2 / 3) and w.im == pytest.approx(-1 / 3)
    assert invert_pc(ParaComplex(1, 0)) == ParaComplex(1, 0)
    with pytest.raises(ZeroDivisor):
        invert_pc(ParaComplex(1, 1))


# split_pc

def test_split_examples():
    assert split_pc(ParaComplex(3, 1)) == (4, 2)
    assert split_pc(ParaComplex(0, 1)) == (1, -1)


def test_split_of_product_brute_force():
    a, b = ParaComplex(1, 2), ParaComplex(3, 1)
    ab = mul_pc(a, b)
    # direct expansion: (1 + 2e)(3 + e) = 3 + e + 6e + 2e^2 = 5 + 7e
    assert ab == ParaComplex(5, 7)
    (ap, am), (bp, bm) = split_pc(a), split_pc(b)
    assert split_pc(ab) == (ap * bp, am * bm) == (12, -2)


# matrix_inverse_pc

def test_matrix_inverse_examples():
    inv = matrix_inverse_pc([[(2, 0), (0, 0)], [(0, 0), (3, 0)]])
    np.testing.assert_allclose(inv.re, np.diag([0.5, 1 / 3]))
    np.testing.assert_allclose(inv.im, 0)
    eye = matrix_inverse_pc(PCArray.eye(3))
    np.testing.assert_array_equal(eye.re, np.eye(3))
    with pytest.raises(SingularProjection) as err:
        matrix_inverse_pc([[(1, 1)]])
    assert err.value.which == "minus"


# properties

@given(int_pcs, int_pcs, int_pcs)
def test_ring_laws_exact(a, b, c):
    # integer-valued inputs keep every product exact in double precision
    assert mul_pc(a, b) == mul_pc(b, a)
    assert mul_pc(mul_pc(a, b), c) == mul_pc(a, mul_pc(b, c))


@given(pcs, pcs)
def test_modulus_multiplicative(a, b):
    lhs, rhs = modulus(mul_pc(a, b)), modulus(a) * modulus(b)
    # relative to the Euclidean sizes, since re^2 - im^2 cancels
    scale = (a.re**2 + a.im**2) * (b.re**2 + b.im**2)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, scale)


@given(pcs)
def test_split_round_trip(a):
    p, m = split_pc(a)
    back = unsplit_pc(p, m)
    assert back.re == pytest.approx(a.re, abs=1e-12) and back.im == pytest.approx(a.im, abs=1e-12)


@given(int_pcs, int_pcs)
def test_split_is_componentwise(a, b):
    (ap, am), (bp, bm) = split_pc(a), split_pc(b)
    assert split_pc(mul_pc(a, b)) == (ap * bp, am * bm)
    assert split_pc(a + b) == (ap + bp, am + bm)


@given(pcs, pcs)
def test_conj_is_automorphism(a, b):
    assert conj_pc(mul_pc(a, b)) == mul_pc(conj_pc(a), conj_pc(b))
    assert conj_pc(a + b) == conj_pc(a) + conj_pc(b)


@st.composite
def invertible_matrices(draw, size=st.integers(1, 4)):
    k = draw(size)
    seed = draw(st.integers(0, 2**31 - 1))
    rng = np.random.default_rng(seed)
    while True:
        A = PCArray(rng.normal(size=(k, k)), rng.normal(size=(k, k)))
        plus, minus = A.split()
        if min(abs(np.linalg.det(plus)), abs(np.linalg.det(minus))) > 1e-2:
            return A


@given(invertible_matrices())
def test_inverse_matches_split_inversion(A):
    inv = matrix_inverse_pc(A)
    plus, minus = A.split()
    ref = PCArray.from_split(np.linalg.inv(plus), np.linalg.inv(minus))
    assert (inv - ref).abs_max() < 1e-10
    # independent oracle: a + e b acts on R^2k as [[a, b], [b, a]]
    k = A.shape[0]
    big = np.block([[A.re, A.im], [A.im, A.re]])
    binv = np.linalg.inv(big)
    assert max(np.max(np.abs(binv[:k, :k] - inv.re)), np.max(np.abs(binv[:k, k:] - inv.im))) < 1e-10
    prod = PCArray.einsum("ij,jk->ik", A, inv)
    assert (prod - PCArray.eye(k)).abs_max() < 1e-10


def test_mirror_is_involution():
    rng = np.random.default_rng(3)
    T = PCArray(rng.normal(size=(4, 4, 4)), rng.normal(size=(4, 4, 4)))
    assert (mirror(mirror(T, 2), 2) - T).abs_max() == 0.0
    lead = PCArray.zeros((4, 4))
    lead[0:2, 0:2] = T[0:2, 0:2, 0]
    full = complete_by_mirror(lead, 2)
    assert (full[2:, 2:] - lead[0:2, 0:2].conj()).abs_max() == 0.0

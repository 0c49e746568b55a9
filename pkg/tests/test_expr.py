import pytest
from hypothesis import given, strategies as st

from paraholo.core import ParaComplex, conj_pc
from paraholo.errors import ExprSyntaxError, IndexOutOfRange, ZeroDivisor
from paraholo.expr import (
    Add,
    Const,
    Div,
    Mul,
    Var,
    conj_expr,
    diff_expr,
    eval_expr,
    is_paraholomorphic_expr,
    mul,
    add,
    parse_expr,
    real_partials,
    to_source,
)

from conftest import small_pcs

ONE = Const(ParaComplex(1.0, 0.0))


# parse_expr

def test_parse_sum_of_products():
    got = parse_expr("z1*z1 + e*zb2", 2)
    assert got == Add(Mul(Var(1), Var(1)), Mul(Const(ParaComplex(0, 1)), Var(2, True)))


def test_parse_reciprocal():
    assert parse_expr("1/(1+z1)", 1) == Div(ONE, Add(ONE, Var(1)))


def test_parse_index_out_of_range():
    with pytest.raises(IndexOutOfRange) as err:
        parse_expr("z3", 2)
    assert err.value.index == 3


def test_parse_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("z1 + * z2", 2)
    assert err.value.position == 5


# diff_expr

P = (ParaComplex(0.4, -0.3),)


def test_diff_square():
    d = diff_expr(parse_expr("z1*z1", 1), 1)
    for p in (P, (ParaComplex(1.5, 0.5),)):
        assert eval_expr(d, p) == eval_expr(parse_expr("2*z1", 1), p)


def test_diff_independent_variables():
    assert eval_expr(diff_expr(Var(1), 1, True), P) == ParaComplex(0, 0)
    assert eval_expr(diff_expr(Var(1, True), 1, False), P) == ParaComplex(0, 0)


# eval_expr

def test_eval_examples():
    # (1 + e)^2 = 1 + 2e + e^2 = 2 + 2e
    assert eval_expr(parse_expr("z1*z1", 1), (ParaComplex(1, 1),)) == ParaComplex(2, 2)
    assert eval_expr(parse_expr("e*z1", 1), (ParaComplex(2, 0),)) == ParaComplex(0, 2)
    with pytest.raises(ZeroDivisor):
        eval_expr(parse_expr("1/(z1-zb1)", 1), (ParaComplex(1, 0),))


# conj_expr

def test_conj_examples():
    p = (ParaComplex(0.7, 0.2),)
    assert eval_expr(conj_expr(Var(1)), p) == eval_expr(Var(1, True), p)
    ez = parse_expr("e*z1", 1)
    assert eval_expr(conj_expr(ez), p) == eval_expr(parse_expr("-e*zb1", 1), p)
    assert conj_expr(conj_expr(ez)) == ez


# is_paraholomorphic_expr

def test_paraholomorphic_examples():
    S = [(ParaComplex(0.3, 0.1),), (ParaComplex(0.7, -0.2),)]
    assert is_paraholomorphic_expr(parse_expr("z1^2", 1), S, 1e-12)
    assert not is_paraholomorphic_expr(parse_expr("zb1", 1), S, 1e-12)
    assert not is_paraholomorphic_expr(parse_expr("z1 + zb1", 1), S, 1e-12)


# random expressions in z1, z2, zb1, zb2

atoms = st.sampled_from(["z1", "z2", "zb1", "zb2", "e", "0.5", "2", "1.25"])


def _combine(children):
    bin_ = st.tuples(children, st.sampled_from(["+", "-", "*"]), children).map(lambda t: f"({t[0]} {t[1]} {t[2]})")
    powr = st.tuples(children, st.integers(0, 3)).map(lambda t: f"({t[0]})^{t[1]}")
    expo = children.map(lambda c: f"exp(0.5*{c})")
    recip = children.map(lambda c: f"1/(4 + {c})")
    neg = children.map(lambda c: f"-({c})")
    return st.one_of(bin_, powr, expo, recip, neg)


sources = st.recursive(atoms, _combine, max_leaves=8)
points = st.tuples(small_pcs, small_pcs)


def _close(a, b, tol, scale=1.0):
    return abs(a.re - b.re) <= tol * scale and abs(a.im - b.im) <= tol * scale


def _safe_eval(node, p):
    try:
        return eval_expr(node, p)
    except ZeroDivisor:
        return None


@given(sources)
def test_parse_print_round_trip(src):
    E = parse_expr(src, 2)
    assert parse_expr(to_source(E), 2) == E


@given(sources, points)
def test_conj_commutes_with_eval(src, p):
    E = parse_expr(src, 2)
    v = _safe_eval(E, p)
    if v is None:
        return
    w = eval_expr(conj_expr(E), p)
    scale = max(1.0, abs(v.re), abs(v.im))
    assert _close(w, conj_pc(v), 1e-12, scale)


@given(sources, sources, points, st.integers(1, 2), st.booleans())
def test_product_rule(s1, s2, p, a, barred):
    E, F = parse_expr(s1, 2), parse_expr(s2, 2)
    lhs = _safe_eval(diff_expr(mul(E, F), a, barred), p)
    rhs = _safe_eval(add(mul(diff_expr(E, a, barred), F), mul(E, diff_expr(F, a, barred))), p)
    if lhs is None or rhs is None:
        return
    scale = max(1.0, abs(rhs.re), abs(rhs.im))
    assert _close(lhs, rhs, 1e-10, scale)


@given(sources, points, st.integers(1, 2))
def test_symbolic_matches_finite_difference(src, p, a):
    E = parse_expr(src, 2)
    if _safe_eval(E, p) is None:
        return
    dx, dy = real_partials(E, a)
    h = 1e-4

    def shifted(delta):
        q = list(p)
        q[a - 1] = q[a - 1] + delta
        return eval_expr(E, tuple(q))

    try:
        fx = (shifted(ParaComplex(h, 0)) - shifted(ParaComplex(-h, 0))) * (1 / (2 * h))
        fy = (shifted(ParaComplex(0, h)) - shifted(ParaComplex(0, -h))) * (1 / (2 * h))
    except ZeroDivisor:
        return
    vx, vy = eval_expr(dx, p), eval_expr(dy, p)
    sx = max(1.0, abs(vx.re), abs(vx.im))
    sy = max(1.0, abs(vy.re), abs(vy.im))
    assert _close(vx, fx, 1e-6, sx) and _close(vy, fy, 1e-6, sy)

"""Expressions in para-holomorphic coordinates z^a and their conjugates.

Variables ``z<k>`` and ``zb<k>`` are treated as independent symbols, so
differentiation with respect to ``zb<k>`` is the para-Cauchy-Riemann
operator.  At evaluation time the barred value is always the conjugate of
the unbarred one.

Nodes are immutable and may be shared; evaluation, differentiation and
conjugation memoise on node identity so that DAG-shaped expressions (such as
truncated series built by repeated matrix products) stay linear in size.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Sequence

import numpy as np

from .core import EPS_INV, ParaComplex, as_pc, exp_pc, invert_pc
from .errors import ExprSyntaxError, IndexOutOfRange

EvalPoint = tuple  # tuple[ParaComplex, ...]: values of z^1..z^n


class Expression:
    __slots__ = ()

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return sub(self, as_expr(other))

    def __rsub__(self, other):
        return sub(as_expr(other), self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, k: int):
        return power(self, k)

    def __str__(self):
        return to_source(self)


@dataclass(frozen=True, eq=True, repr=True)
class Const(Expression):
    value: ParaComplex


@dataclass(frozen=True, eq=True, repr=True)
class Var(Expression):
    index: int
    barred: bool = False


@dataclass(frozen=True, eq=True, repr=True)
class Add(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True, eq=True, repr=True)
class Sub(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True, eq=True, repr=True)
class Mul(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True, eq=True, repr=True)
class Div(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True, eq=True, repr=True)
class Pow(Expression):
    base: Expression
    exponent: int


@dataclass(frozen=True, eq=True, repr=True)
class Exp(Expression):
    arg: Expression


@dataclass(frozen=True, eq=True, repr=True)
class Neg(Expression):
    arg: Expression


# these nodes compare by identity inside memo tables, never by value
for _cls in (Const, Var, Add, Sub, Mul, Div, Pow, Exp, Neg):
    _cls.__hash__ = object.__hash__


def const(re: float, im: float = 0.0) -> Const:
    return Const(ParaComplex(float(re), float(im)))


ZERO = const(0.0)
ONE = const(1.0)
E = const(0.0, 1.0)


def z(a: int) -> Var:
    return Var(a, False)


def zb(a: int) -> Var:
    return Var(a, True)


def x_coord(a: int) -> Expression:
    """Real part x^a = (z^a + zb^a)/2 as an expression."""
    return mul(const(0.5), add(z(a), zb(a)))


def y_coord(a: int) -> Expression:
    """Imaginary part y^a = e (z^a - zb^a)/2 as an expression."""
    return mul(const(0.0, 0.5), sub(z(a), zb(a)))


def as_expr(value) -> Expression:
    if isinstance(value, Expression):
        return value
    return Const(as_pc(value))


def _is_const(e, value=None) -> bool:
    if type(e) is not Const:
        return False
    return value is None or (e.value.re == value.re and e.value.im == value.im)


_Z = ParaComplex(0.0, 0.0)
_O = ParaComplex(1.0, 0.0)


# simplifying builders: constant folding and 0/1 identities only

def add(a: Expression, b: Expression) -> Expression:
    if _is_const(a, _Z):
        return b
    if _is_const(b, _Z):
        return a
    if type(a) is Const and type(b) is Const:
        return Const(a.value + b.value)
    return Add(a, b)


def sub(a: Expression, b: Expression) -> Expression:
    if _is_const(b, _Z):
        return a
    if _is_const(a, _Z):
        return neg(b)
    if type(a) is Const and type(b) is Const:
        return Const(a.value - b.value)
    return Sub(a, b)


def mul(a: Expression, b: Expression) -> Expression:
    if _is_const(a, _Z) or _is_const(b, _Z):
        return ZERO
    if _is_const(a, _O):
        return b
    if _is_const(b, _O):
        return a
    if type(a) is Const and type(b) is Const:
        return Const(a.value * b.value)
    return Mul(a, b)


def div(a: Expression, b: Expression) -> Expression:
    if _is_const(b, _O):
        return a
    if _is_const(a, _Z):
        return ZERO
    if type(a) is Const and type(b) is Const and abs(b.value.modulus()) > EPS_INV:
        return Const(a.value * invert_pc(b.value))
    return Div(a, b)


def neg(a: Expression) -> Expression:
    if type(a) is Const:
        return Const(-a.value)
    if type(a) is Neg:
        return a.arg
    return Neg(a)


def power(a: Expression, k: int) -> Expression:
    if k == 0:
        return ONE
    if k == 1:
        return a
    if type(a) is Const and (k > 0 or abs(a.value.modulus()) > EPS_INV):
        return Const(a.value**k)
    return Pow(a, k)


def exp_(a: Expression) -> Expression:
    if type(a) is Const:
        return Const(exp_pc(a.value))
    return Exp(a)


def total(terms: Iterable[Expression]) -> Expression:
    out = ZERO
    for t in terms:
        out = add(out, t)
    return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<zb>zb(?P<zbi>\d+))|(?P<z>z(?P<zi>\d+))"
    r"|(?P<exp>exp)|(?P<e>e)|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, src: str, n: int):
        self.src = src
        self.n = n
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(src):
            if src[pos:].strip() == "":
                break
            m = _TOKEN.match(src, pos)
            if m is None or m.end() == pos:
                raise ExprSyntaxError(pos, "a number, variable, 'e', 'exp' or operator", src)
            kind = next(k for k in ("num", "zb", "z", "exp", "e", "op") if m.group(k) is not None)
            if kind == "zb":
                self.tokens.append(("zb", m.group("zbi"), m.start("zb")))
            elif kind == "z":
                self.tokens.append(("z", m.group("zi"), m.start("z")))
            else:
                self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", len(src)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.take()
        if kind != "op" or text != op:
            raise ExprSyntaxError(pos, repr(op), self.src)

    def parse(self) -> Expression:
        node = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(pos, "end of input", self.src)
        return node

    def expr(self) -> Expression:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                rhs = self.term()
                node = Add(node, rhs) if text == "+" else Sub(node, rhs)
            else:
                return node

    def term(self) -> Expression:
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.take()
                rhs = self.factor()
                node = Mul(node, rhs) if text == "*" else Div(node, rhs)
            else:
                return node

    def factor(self) -> Expression:
        node = self.base()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            sign = 1
            kind, text, pos = self.peek()
            if kind == "op" and text == "-":
                self.take()
                sign = -1
                kind, text, pos = self.peek()
            if kind != "num" or not text.isdigit():
                raise ExprSyntaxError(pos, "integer exponent", self.src)
            self.take()
            node = Pow(node, sign * int(text))
        return node

    def _var_index(self, text: str, pos: int) -> int:
        a = int(text)
        if a < 1 or a > self.n:
            raise IndexOutOfRange(a, self.n)
        return a

    def base(self) -> Expression:
        kind, text, pos = self.take()
        if kind == "num":
            return Const(ParaComplex(float(text), 0.0))
        if kind == "e":
            return Const(ParaComplex(0.0, 1.0))
        if kind == "z":
            return Var(self._var_index(text, pos), False)
        if kind == "zb":
            return Var(self._var_index(text, pos), True)
        if kind == "exp":
            self.expect_op("(")
            node = self.expr()
            self.expect_op(")")
            return Exp(node)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "op" and text == "-":
            return Neg(self.base())
        raise ExprSyntaxError(pos, "a number, variable, 'e', 'exp(', '(' or '-'", self.src)


def parse_expr(src: str, n: int) -> Expression:
    """Parse ``src`` into an (unsimplified) AST over z1..zn, zb1..zbn."""
    return _Parser(src, n).parse()


def _fmt_real(x: float) -> str:
    text = repr(float(x))
    if "e" in text or "E" in text or "inf" in text or "nan" in text:
        text = format(Decimal(text), "f")
    return text


def to_source(node: Expression) -> str:
    """Fully parenthesised source text; re-parsing gives back the same tree
    for every tree produced by the parser."""
    t = type(node)
    if t is Const:
        re_, im_ = node.value
        if re_ == 0.0 and im_ == 1.0:
            return "e"
        if im_ == 0.0:
            return _fmt_real(re_) if re_ >= 0 else f"(-{_fmt_real(-re_)})"
        re_part = _fmt_real(abs(re_))
        im_part = _fmt_real(abs(im_))
        re_txt = re_part if re_ >= 0 else f"(-{re_part})"
        im_txt = f"e*{im_part}" if im_ >= 0 else f"(-(e*{im_part}))"
        return f"({re_txt}+{im_txt})"
    if t is Var:
        return f"{'zb' if node.barred else 'z'}{node.index}"
    if t is Add:
        return f"({to_source(node.left)}+{to_source(node.right)})"
    if t is Sub:
        return f"({to_source(node.left)}-{to_source(node.right)})"
    if t is Mul:
        return f"({to_source(node.left)}*{to_source(node.right)})"
    if t is Div:
        return f"({to_source(node.left)}/{to_source(node.right)})"
    if t is Pow:
        return f"({to_source(node.base)}^{node.exponent})"
    if t is Exp:
        return f"exp({to_source(node.arg)})"
    if t is Neg:
        return f"(-{to_source(node.arg)})"
    raise TypeError(f"unknown node {node!r}")


# ---------------------------------------------------------- differentiation

def _children(node):
    t = type(node)
    if t in (Add, Sub, Mul, Div):
        return (node.left, node.right)
    if t is Pow:
        return (node.base,)
    if t in (Exp, Neg):
        return (node.arg,)
    return ()


def diff_expr(node: Expression, a: int, barred: bool = False, _memo=None) -> Expression:
    """Partial derivative with respect to z^a (or zb^a when ``barred``)."""
    memo = {} if _memo is None else _memo
    return _diff(node, a, bool(barred), memo)


def _diff(node, a, barred, memo):
    key = id(node)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    t = type(node)
    if t is Const:
        out = ZERO
    elif t is Var:
        out = ONE if (node.index == a and node.barred == barred) else ZERO
    elif t is Add:
        out = add(_diff(node.left, a, barred, memo), _diff(node.right, a, barred, memo))
    elif t is Sub:
        out = sub(_diff(node.left, a, barred, memo), _diff(node.right, a, barred, memo))
    elif t is Mul:
        dl = _diff(node.left, a, barred, memo)
        dr = _diff(node.right, a, barred, memo)
        out = add(mul(dl, node.right), mul(node.left, dr))
    elif t is Div:
        dl = _diff(node.left, a, barred, memo)
        dr = _diff(node.right, a, barred, memo)
        out = sub(div(dl, node.right), div(mul(node.left, dr), power(node.right, 2)))
    elif t is Pow:
        db = _diff(node.base, a, barred, memo)
        k = node.exponent
        out = mul(mul(const(k), power(node.base, k - 1)), db)
    elif t is Exp:
        out = mul(node, _diff(node.arg, a, barred, memo))
    elif t is Neg:
        out = neg(_diff(node.arg, a, barred, memo))
    else:
        raise TypeError(f"unknown node {node!r}")
    memo[key] = (node, out)  # keep node alive so its id stays unique
    return out


def real_partials(node: Expression, a: int) -> tuple[Expression, Expression]:
    """(d/dx^a, d/dy^a) from d/dx = d/dz + d/dzb and d/dy = e(d/dz - d/dzb)."""
    dz = diff_expr(node, a, False)
    dzb = diff_expr(node, a, True)
    return add(dz, dzb), mul(E, sub(dz, dzb))


# ------------------------------------------------------------- evaluation

def as_point(coords) -> EvalPoint:
    return tuple(as_pc(c) for c in coords)


def eval_expr(node: Expression, p, eps_inv: float = EPS_INV, _memo=None) -> ParaComplex:
    """Value at the point p = (z^1, ..., z^n); zb^a is conj(z^a)."""
    memo = {} if _memo is None else _memo
    point = p if (type(p) is tuple and all(type(c) is ParaComplex for c in p)) else as_point(p)
    return _eval(node, point, eps_inv, memo)


def _eval(node, p, eps, memo):
    key = id(node)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    t = type(node)
    if t is Const:
        out = node.value
    elif t is Var:
        if node.index > len(p):
            raise IndexOutOfRange(node.index, len(p))
        v = p[node.index - 1]
        out = ParaComplex(v.re, -v.im) if node.barred else v
    elif t is Add:
        l, r = _eval(node.left, p, eps, memo), _eval(node.right, p, eps, memo)
        out = ParaComplex(l.re + r.re, l.im + r.im)
    elif t is Sub:
        l, r = _eval(node.left, p, eps, memo), _eval(node.right, p, eps, memo)
        out = ParaComplex(l.re - r.re, l.im - r.im)
    elif t is Mul:
        l, r = _eval(node.left, p, eps, memo), _eval(node.right, p, eps, memo)
        out = ParaComplex(l.re * r.re + l.im * r.im, l.re * r.im + l.im * r.re)
    elif t is Div:
        l, r = _eval(node.left, p, eps, memo), _eval(node.right, p, eps, memo)
        out = l * invert_pc(r, eps)
    elif t is Pow:
        b = _eval(node.base, p, eps, memo)
        if node.exponent < 0:
            b = invert_pc(b, eps)
        out = b ** abs(node.exponent)
    elif t is Exp:
        out = exp_pc(_eval(node.arg, p, eps, memo))
    elif t is Neg:
        v = _eval(node.arg, p, eps, memo)
        out = ParaComplex(-v.re, -v.im)
    else:
        raise TypeError(f"unknown node {node!r}")
    memo[key] = (node, out)
    return out


def eval_many(nodes: Sequence[Expression], p, eps_inv: float = EPS_INV) -> list[ParaComplex]:
    """Evaluate several expressions at one point with a shared memo."""
    memo: dict = {}
    point = as_point(p)
    return [_eval(nd, point, eps_inv, memo) for nd in nodes]


# ------------------------------------------------------------ conjugation

def conj_expr(node: Expression, _memo=None) -> Expression:
    """Swap barred/unbarred variables and conjugate constants."""
    memo = {} if _memo is None else _memo
    return _conj(node, memo)


def _conj(node, memo):
    key = id(node)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    t = type(node)
    if t is Const:
        out = Const(node.value.conj())
    elif t is Var:
        out = Var(node.index, not node.barred)
    elif t in (Add, Sub, Mul, Div):
        out = t(_conj(node.left, memo), _conj(node.right, memo))
    elif t is Pow:
        out = Pow(_conj(node.base, memo), node.exponent)
    elif t is Exp:
        out = Exp(_conj(node.arg, memo))
    elif t is Neg:
        out = Neg(_conj(node.arg, memo))
    else:
        raise TypeError(f"unknown node {node!r}")
    memo[key] = (node, out)
    return out


# ----------------------------------------------------------- inspection

def variables(node: Expression) -> set[tuple[int, bool]]:
    seen: set[int] = set()
    found: set[tuple[int, bool]] = set()
    stack = [node]
    while stack:
        nd = stack.pop()
        if id(nd) in seen:
            continue
        seen.add(id(nd))
        if type(nd) is Var:
            found.add((nd.index, nd.barred))
        stack.extend(_children(nd))
    return found


def max_index(node: Expression) -> int:
    return max((a for a, _ in variables(node)), default=0)


def is_zero(node: Expression) -> bool:
    return _is_const(node, _Z)


def is_paraholomorphic_expr(node: Expression, samples, tol: float, n: int | None = None,
                            eps_inv: float = EPS_INV) -> bool:
    """True when every d/dzb^a vanishes (below ``tol``) at all samples."""
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one sample point")
    n = max_index(node) if n is None else n
    for a in range(1, n + 1):
        d = diff_expr(node, a, True)
        if is_zero(d):
            continue
        for p in samples:
            v = eval_expr(d, p, eps_inv)
            if abs(v.re) >= tol or abs(v.im) >= tol:
                return False
    return True


class JetTable:
    """Derivative tables of a fixed list of expressions in 2n variables.

    Variable slot V < n is z^(V+1); slot V >= n is zb^(V-n+1).  Derivative
    expressions are built once and cached; mixed partials are stored only for
    sorted multi-indices.
    """

    def __init__(self, exprs: Sequence[Expression], n: int):
        self.exprs = list(exprs)
        self.n = n
        self._cache: dict[tuple[int, tuple[int, ...]], Expression] = {
            (i, ()): e for i, e in enumerate(self.exprs)
        }
        self._diff_memo: dict[int, dict] = {}

    def _slot(self, v: int) -> tuple[int, bool]:
        return (v + 1, False) if v < self.n else (v - self.n + 1, True)

    def derivative(self, i: int, slots: tuple[int, ...]) -> Expression:
        slots = tuple(sorted(slots))
        key = (i, slots)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        parent = self.derivative(i, slots[:-1])
        a, barred = self._slot(slots[-1])
        memo = self._diff_memo.setdefault(slots[-1], {})
        out = ZERO if is_zero(parent) else diff_expr(parent, a, barred, memo)
        self._cache[key] = out
        return out

    def evaluate(self, p, order: int, eps_inv: float = EPS_INV) -> list[tuple[np.ndarray, np.ndarray]]:
        """[(re, im)] arrays of shapes (N,), (N, 2n), (N, 2n, 2n), ... up to ``order``."""
        point = as_point(p)
        N, V = len(self.exprs), 2 * self.n
        memo: dict = {}
        out = []
        for k in range(order + 1):
            shape = (N,) + (V,) * k
            re = np.zeros(shape)
            im = np.zeros(shape)
            for i in range(N):
                for slots in itertools.combinations_with_replacement(range(V), k):
                    d = self.derivative(i, slots)
                    if is_zero(d):
                        continue
                    val = _eval(d, point, eps_inv, memo)
                    for perm in set(itertools.permutations(slots)):
                        re[(i,) + perm] = val.re
                        im[(i,) + perm] = val.im
            out.append((re, im))
        return out

"""Para-complex (split-complex) scalars and arrays.

The ring C = R + eR with e^2 = 1 is not a field: x + ey is a zero divisor
whenever x^2 = y^2.  Under the null-basis map

    x + ey  ->  (x + y, x - y)

multiplication becomes componentwise real multiplication, so C is
isomorphic to R (+) R.  Scalars are stored as (re, im); arrays switch to the
split form for contractions and inversion.
"""
from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import SingularProjection, ZeroDivisor

EPS_INV = 1e-12


class ParaComplex(NamedTuple):
    re: float = 0.0
    im: float = 0.0

    # tuple arithmetic (concatenation, repetition) is replaced by ring arithmetic

    def __add__(self, other):
        if type(other) is not ParaComplex:
            other = as_pc(other)
        return ParaComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not ParaComplex:
            other = as_pc(other)
        return ParaComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_pc(other) - self

    def __mul__(self, other):
        if type(other) is not ParaComplex:
            other = as_pc(other)
        a, b = self
        c, d = other
        return ParaComplex(a * c + b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * invert_pc(as_pc(other))

    def __rtruediv__(self, other):
        return as_pc(other) * invert_pc(self)

    def __neg__(self):
        return ParaComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("para-complex powers take integer exponents")
        if k < 0:
            return invert_pc(self) ** (-k)
        # componentwise in the null basis
        p, m = split_pc(self)
        return unsplit_pc(p**k, m**k)

    def __bool__(self):
        return self.re != 0.0 or self.im != 0.0

    def conj(self) -> "ParaComplex":
        return ParaComplex(self.re, -self.im)

    def modulus(self) -> float:
        return self.re * self.re - self.im * self.im

    def __repr__(self):
        return f"ParaComplex({self.re!r}, {self.im!r})"

    def __str__(self):
        sign = "-" if self.im < 0 or (self.im == 0 and math.copysign(1, self.im) < 0) else "+"
        return f"{self.re:g}{sign}{abs(self.im):g}e"


E_UNIT = ParaComplex(0.0, 1.0)
ONE = ParaComplex(1.0, 0.0)
ZERO = ParaComplex(0.0, 0.0)


def as_pc(value) -> ParaComplex:
    """Coerce a real, a ParaComplex or an [re, im] pair."""
    if type(value) is ParaComplex:
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        return ParaComplex(float(value), 0.0)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return ParaComplex(float(value[0]), float(value[1]))
    raise TypeError(f"cannot interpret {value!r} as a para-complex number")


def mul_pc(a: ParaComplex, b: ParaComplex) -> ParaComplex:
    return as_pc(a) * as_pc(b)


def conj_pc(z: ParaComplex) -> ParaComplex:
    return as_pc(z).conj()


def modulus(z: ParaComplex) -> float:
    return as_pc(z).modulus()


def is_invertible(z: ParaComplex, eps_inv: float = EPS_INV) -> bool:
    return abs(as_pc(z).modulus()) > eps_inv


def invert_pc(z: ParaComplex, eps_inv: float = EPS_INV) -> ParaComplex:
    z = as_pc(z)
    m = z.re * z.re - z.im * z.im
    if abs(m) <= eps_inv:
        raise ZeroDivisor(z, eps_inv)
    return ParaComplex(z.re / m, -z.im / m)


def split_pc(z: ParaComplex) -> tuple[float, float]:
    z = as_pc(z)
    return z.re + z.im, z.re - z.im


def unsplit_pc(plus: float, minus: float) -> ParaComplex:
    return ParaComplex(0.5 * (plus + minus), 0.5 * (plus - minus))


def exp_pc(z: ParaComplex) -> ParaComplex:
    z = as_pc(z)
    r = math.exp(z.re)
    return ParaComplex(r * math.cosh(z.im), r * math.sinh(z.im))


class PCArray:
    """Dense array of para-complex numbers held as two real numpy arrays."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        self.re = np.asarray(re, dtype=float)
        self.im = np.zeros_like(self.re) if im is None else np.asarray(im, dtype=float)
        if self.re.shape != self.im.shape:
            raise ValueError("re/im shape mismatch")

    @classmethod
    def zeros(cls, shape) -> "PCArray":
        return cls(np.zeros(shape), np.zeros(shape))

    @classmethod
    def eye(cls, n: int) -> "PCArray":
        return cls(np.eye(n), np.zeros((n, n)))

    @classmethod
    def from_split(cls, plus, minus) -> "PCArray":
        plus = np.asarray(plus, dtype=float)
        minus = np.asarray(minus, dtype=float)
        return cls(0.5 * (plus + minus), 0.5 * (plus - minus))

    @classmethod
    def from_values(cls, values) -> "PCArray":
        """Build from a nested sequence of ParaComplex (or [re, im]) entries."""
        arr = np.asarray(_nested_pairs(values), dtype=float)
        return cls(arr[..., 0], arr[..., 1])

    @property
    def shape(self):
        return self.re.shape

    @property
    def ndim(self):
        return self.re.ndim

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        return self.re + self.im, self.re - self.im

    def conj(self) -> "PCArray":
        return PCArray(self.re, -self.im)

    def copy(self) -> "PCArray":
        return PCArray(self.re.copy(), self.im.copy())

    def transpose(self, *axes) -> "PCArray":
        return PCArray(self.re.transpose(*axes), self.im.transpose(*axes))

    def __getitem__(self, key):
        re, im = self.re[key], self.im[key]
        if np.ndim(re) == 0:
            return ParaComplex(float(re), float(im))
        return PCArray(re, im)

    def __setitem__(self, key, value):
        if isinstance(value, PCArray):
            self.re[key] = value.re
            self.im[key] = value.im
        else:
            v = as_pc(value)
            self.re[key] = v.re
            self.im[key] = v.im

    def _coerce(self, other):
        if isinstance(other, PCArray):
            return other.re, other.im
        v = as_pc(other)
        return v.re, v.im

    def __add__(self, other):
        ore, oim = self._coerce(other)
        return PCArray(self.re + ore, self.im + oim)

    __radd__ = __add__

    def __sub__(self, other):
        ore, oim = self._coerce(other)
        return PCArray(self.re - ore, self.im - oim)

    def __rsub__(self, other):
        ore, oim = self._coerce(other)
        return PCArray(ore - self.re, oim - self.im)

    def __neg__(self):
        return PCArray(-self.re, -self.im)

    def __mul__(self, other):
        ore, oim = self._coerce(other)
        return PCArray(self.re * ore + self.im * oim, self.re * oim + self.im * ore)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return PCArray(self.re / other, self.im / other)
        return self * invert_pc(as_pc(other))

    def abs_max(self) -> float:
        """Largest |re| or |im| over all entries (0 for an empty array)."""
        if self.re.size == 0:
            return 0.0
        return float(max(np.max(np.abs(self.re)), np.max(np.abs(self.im))))

    def tolist(self):
        return np.stack([self.re, self.im], axis=-1).tolist()

    def __repr__(self):
        return f"PCArray(re={self.re!r}, im={self.im!r})"

    @staticmethod
    def einsum(subscripts: str, *operands: "PCArray") -> "PCArray":
        """Contraction carried out independently on the two null projections."""
        pluses, minuses = zip(*(op.split() for op in operands))
        p = np.einsum(subscripts, *pluses, optimize=len(operands) > 2)
        m = np.einsum(subscripts, *minuses, optimize=len(operands) > 2)
        return PCArray.from_split(p, m)

    def inv(self, eps_inv: float = EPS_INV) -> "PCArray":
        return matrix_inverse_pc(self, eps_inv)


PCMatrix = PCArray


def _nested_pairs(values):
    if isinstance(values, ParaComplex):
        return [values.re, values.im]
    if isinstance(values, (int, float, np.floating, np.integer)):
        return [float(values), 0.0]
    if isinstance(values, (list, tuple)) and len(values) == 2 and all(
        isinstance(v, (int, float, np.floating, np.integer)) for v in values
    ):
        return [float(values[0]), float(values[1])]
    return [_nested_pairs(v) for v in values]


def as_pcarray(values) -> PCArray:
    if isinstance(values, PCArray):
        return values
    return PCArray.from_values(values)


def _check_projection(mat: np.ndarray, which: str, eps_inv: float) -> None:
    det = float(np.linalg.det(mat)) if mat.size else 1.0
    if abs(det) <= eps_inv:
        raise SingularProjection(which, det)


def matrix_inverse_pc(M, eps_inv: float = EPS_INV) -> PCArray:
    """Invert a square para-complex matrix through its two real projections."""
    M = as_pcarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    plus, minus = M.split()
    _check_projection(plus, "plus", eps_inv)
    _check_projection(minus, "minus", eps_inv)
    return PCArray.from_split(np.linalg.inv(plus), np.linalg.inv(minus))


def matmul_pc(A, B) -> PCArray:
    return PCArray.einsum("ij,jk->ik", as_pcarray(A), as_pcarray(B))


def swap_permutation(n: int) -> np.ndarray:
    """Index permutation exchanging unbarred slots 0..n-1 with barred n..2n-1."""
    return np.concatenate([np.arange(n, 2 * n), np.arange(0, n)])


def mirror(T: PCArray, n: int) -> PCArray:
    """Conjugate mirror of a full-index array: T'[I] = conj(T[bar(I)]).

    Every axis must have length 2n.  Quantities obeying the reality
    condition of a para-complex metric are fixed by this map.
    """
    perm = swap_permutation(n)
    idx = np.ix_(*([perm] * T.ndim))
    return PCArray(T.re[idx], -T.im[idx])


def complete_by_mirror(lead: PCArray, n: int) -> PCArray:
    """Fill the conjugate blocks of an array whose lead blocks are set."""
    return lead + mirror(lead, n)


def pc_sum(values: Iterable[ParaComplex]) -> ParaComplex:
    re = im = 0.0
    for v in values:
        re += v.re
        im += v.im
    return ParaComplex(re, im)


def random_pc(rng: np.random.Generator, scale: float = 1.0) -> ParaComplex:
    x, y = rng.normal(scale=scale, size=2)
    return ParaComplex(float(x), float(y))


def pc_close(a: ParaComplex, b: ParaComplex, tol: float) -> bool:
    a, b = as_pc(a), as_pc(b)
    return abs(a.re - b.re) <= tol and abs(a.im - b.im) <= tol


def pc_abs(z: ParaComplex) -> float:
    """Componentwise max norm, the size measure used by all tolerances."""
    z = as_pc(z)
    return max(abs(z.re), abs(z.im))


def pc_from_seq(seq: Sequence) -> tuple[ParaComplex, ...]:
    return tuple(as_pc(v) for v in seq)

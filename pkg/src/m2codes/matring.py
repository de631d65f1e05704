"""The ring A_p = M_2(F_p): arithmetic, units, the generating character, ideals.

Matrices are stored row-major.  For bulk work a matrix is also identified
with its *index* ``m00*p^3 + m01*p^2 + m10*p + m11``, which is the position
in the canonical enumeration :func:`all_matrices`.  The ``*_array`` helpers
operate on integer arrays of shape ``(..., 4)`` in the same layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import MixedParams
from .exactalg import CycInt


@dataclass(frozen=True, order=True)
class Mat2:
    m00: int
    m01: int
    m10: int
    m11: int
    p: int

    def __post_init__(self):
        p = self.p
        object.__setattr__(self, "m00", self.m00 % p)
        object.__setattr__(self, "m01", self.m01 % p)
        object.__setattr__(self, "m10", self.m10 % p)
        object.__setattr__(self, "m11", self.m11 % p)

    @classmethod
    def from_rows(cls, rows, p: int) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d, p)

    @classmethod
    def identity(cls, p: int) -> "Mat2":
        return cls(1, 0, 0, 1, p)

    @classmethod
    def zero(cls, p: int) -> "Mat2":
        return cls(0, 0, 0, 0, p)

    @classmethod
    def scalar(cls, lam: int, p: int) -> "Mat2":
        return cls(lam, 0, 0, lam, p)

    @classmethod
    def from_index(cls, idx: int, p: int) -> "Mat2":
        m11 = idx % p
        idx //= p
        m10 = idx % p
        idx //= p
        m01 = idx % p
        m00 = idx // p
        return cls(m00, m01, m10, m11, p)

    @property
    def index(self) -> int:
        p = self.p
        return ((self.m00 * p + self.m01) * p + self.m10) * p + self.m11

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.m00, self.m01, self.m10, self.m11)

    def rows(self) -> list[list[int]]:
        return [[self.m00, self.m01], [self.m10, self.m11]]

    def _same(self, other: "Mat2") -> None:
        if not isinstance(other, Mat2):
            raise TypeError(f"expected Mat2, got {type(other).__name__}")
        if other.p != self.p:
            raise MixedParams(f"matrices over p={self.p} and p={other.p}")

    def __add__(self, other: "Mat2") -> "Mat2":
        self._same(other)
        return Mat2(self.m00 + other.m00, self.m01 + other.m01,
                    self.m10 + other.m10, self.m11 + other.m11, self.p)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.m00, -self.m01, -self.m10, -self.m11, self.p)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return self + (-other)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        self._same(other)
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return Mat2(self.m00 * other, self.m01 * other,
                        self.m10 * other, self.m11 * other, self.p)
        return self @ other

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> "Mat2":
        result = Mat2.identity(self.p)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.entries)

    def is_zero(self) -> bool:
        return not self

    def det(self) -> int:
        return (self.m00 * self.m11 - self.m01 * self.m10) % self.p

    def trace(self) -> int:
        return (self.m00 + self.m11) % self.p

    def transpose(self) -> "Mat2":
        return Mat2(self.m00, self.m10, self.m01, self.m11, self.p)

    def __str__(self) -> str:
        return f"[[{self.m00},{self.m01}],[{self.m10},{self.m11}]]"


def mat_mul(A: Mat2, B: Mat2) -> Mat2:
    return A @ B


def mat_add(A: Mat2, B: Mat2) -> Mat2:
    return A + B


def mat_neg(A: Mat2) -> Mat2:
    return -A


def is_unit(A: Mat2) -> bool:
    return A.det() != 0


def all_matrices(p: int) -> Iterator[Mat2]:
    """All p^4 matrices in canonical (index) order."""
    for i in range(p ** 4):
        yield Mat2.from_index(i, p)


def matrix_units(p: int) -> tuple[Mat2, ...]:
    """E_00, E_01, E_10, E_11 -- an F_p-basis of A_p."""
    return tuple(Mat2(*(int(i == j) for j in range(4)), p) for i in range(4))


def gl_order(p: int) -> int:
    return (p * p - 1) * (p * p - p)


@lru_cache(maxsize=None)
def enumerate_units(p: int) -> tuple[Mat2, ...]:
    units = tuple(A for A in all_matrices(p) if A.det())
    if len(units) != gl_order(p):
        raise AssertionError(f"|GL(2,{p})| scan gave {len(units)}")
    return units


def character_exponent(A: Mat2) -> int:
    """Exponent k with chi(A) = zeta_p^k; for a prime field this is Tr(A)."""
    return A.trace()


# -- bulk (array) helpers --------------------------------------------------


@lru_cache(maxsize=None)
def all_matrices_array(p: int) -> np.ndarray:
    idx = np.arange(p ** 4, dtype=np.int64)
    out = np.empty((p ** 4, 4), dtype=np.int64)
    for k in range(4):
        out[:, 3 - k] = (idx // p ** k) % p
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def units_array(p: int) -> np.ndarray:
    mats = all_matrices_array(p)
    units = mats[det_array(mats, p) != 0]
    units.setflags(write=False)
    return units


def det_array(m: np.ndarray, p: int) -> np.ndarray:
    return (m[..., 0] * m[..., 3] - m[..., 1] * m[..., 2]) % p


def matmul_array(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """Entrywise-broadcast product of matrix arrays of shape (..., 4)."""
    a, b, c, d = (x[..., k] for k in range(4))
    e, f, g, h = (y[..., k] for k in range(4))
    return np.stack(
        [(a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p],
        axis=-1,
    )


def index_array(m: np.ndarray, p: int) -> np.ndarray:
    return ((m[..., 0] * p + m[..., 1]) * p + m[..., 2]) * p + m[..., 3]


# -- character sums ----------------------------------------------------------


def unit_trace_counts(A: Mat2) -> np.ndarray:
    """How many units u give Tr(uA) = k, for k = 0..p-1."""
    p = A.p
    U = units_array(p)
    # Tr(uA) = u00*a00 + u01*a10 + u10*a01 + u11*a11
    tr = (U[:, 0] * A.m00 + U[:, 1] * A.m10 + U[:, 2] * A.m01 + U[:, 3] * A.m11) % p
    return np.bincount(tr, minlength=p)


def char_sum_over_units(A: Mat2) -> CycInt:
    """``sum_{u in GL(2,p)} chi(uA)`` as an exact cyclotomic integer."""
    return CycInt.from_counts(A.p, unit_trace_counts(A).tolist())


def char_sum_expected(A: Mat2) -> int:
    """Closed-form value of the unit character sum for the three classes of A."""
    p = A.p
    if not A:
        return gl_order(p)
    if A.det():
        return p
    return p - p * p


def char_sum_over_ring(p: int) -> CycInt:
    """``sum_{A in M_2(F_p)} chi(A)``."""
    tr = (all_matrices_array(p)[:, 0] + all_matrices_array(p)[:, 3]) % p
    return CycInt.from_counts(p, np.bincount(tr, minlength=p).tolist())


# -- ideals ------------------------------------------------------------------


@dataclass(frozen=True)
class LeftIdeal:
    elements: frozenset
    generator_form: str

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, A: Mat2) -> bool:
        return A in self.elements


def minimal_left_ideals(p: int) -> list[LeftIdeal]:
    """The p+1 minimal left ideals of A_p.

    Each is the set of matrices whose rows lie on a fixed line of F_p^2:
    the line through (1, r) for r in F_p, or the line through (0, 1).
    """
    ideals = []
    for r in range(p):
        elems = frozenset(Mat2(a, r * a, c, r * c, p) for a in range(p) for c in range(p))
        ideals.append(LeftIdeal(elems, f"row-span-{r}"))
    elems = frozenset(Mat2(0, b, 0, d, p) for b in range(p) for d in range(p))
    ideals.append(LeftIdeal(elems, "column-last"))
    return ideals


def principal_left_ideal(A: Mat2) -> frozenset:
    """``R*A = {M @ A : M in M_2(F_p)}``."""
    p = A.p
    prods = matmul_array(all_matrices_array(p), np.array(A.entries), p)
    idx = np.unique(index_array(prods, p))
    return frozenset(Mat2.from_index(int(i), p) for i in idx)


def principal_left_ideal_indices(A: Mat2) -> np.ndarray:
    """Sorted matrix indices of R*A (array form of :func:`principal_left_ideal`)."""
    p = A.p
    prods = matmul_array(all_matrices_array(p), np.array(A.entries), p)
    return np.unique(index_array(prods, p))

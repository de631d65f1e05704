"""Exact arithmetic: F_p, F_{p^2} = F_p[w] with w^2 + w + (p-1) = 0, and Z[zeta_p].

Elements of F_{p^2} are written ``a + b*w``.  Reduction uses ``w^2 = 1 - w``,
which is the same relation for every p, including p = 2.

Rationals are plain :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import (
    BadResidueClass,
    InternalInconsistency,
    MixedParams,
    NotPrime,
    NotRationalInteger,
)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n``, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldParams:
    p: int

    @property
    def q(self) -> int:
        return self.p * self.p


def quadratic_has_root(p: int) -> bool:
    """Does x^2 + x + (p-1) have a root in F_p?  Exhaustive search."""
    return any((x * x + x + p - 1) % p == 0 for x in range(p))


@lru_cache(maxsize=None)
def validate_params(p: int) -> FieldParams:
    """Check that ``p`` is a prime with p = 2 or 3 (mod 5).

    The residue test is cross-checked against a direct root search of
    x^2 + x + (p-1); the two must agree.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"p={p!r} is not prime")
    residue_ok = p % 5 in (2, 3)
    irreducible = not quadratic_has_root(p)
    if residue_ok != irreducible:
        raise InternalInconsistency(
            f"p={p}: residue test says {residue_ok}, root search says {irreducible}"
        )
    if not residue_ok:
        raise BadResidueClass(f"p={p} is {p % 5} mod 5; need 2 or 3")
    return FieldParams(p)


def _check_same(x, y) -> int:
    if x.p != y.p:
        raise MixedParams(f"cannot combine elements over p={x.p} and p={y.p}")
    return x.p


@dataclass(frozen=True, order=True)
class Fp2Elem:
    """``a + b*w`` in F_{p^2}.  Coordinates are reduced mod p on construction."""

    a: int
    b: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    @classmethod
    def zero(cls, p: int) -> "Fp2Elem":
        return cls(0, 0, p)

    @classmethod
    def one(cls, p: int) -> "Fp2Elem":
        return cls(1, 0, p)

    @classmethod
    def omega(cls, p: int) -> "Fp2Elem":
        return cls(0, 1, p)

    @classmethod
    def all(cls, p: int) -> Iterator["Fp2Elem"]:
        """Every element, ordered by (a, b)."""
        for a in range(p):
            for b in range(p):
                yield cls(a, b, p)

    def coerce(self, other) -> "Fp2Elem":
        if isinstance(other, Fp2Elem):
            _check_same(self, other)
            return other
        if isinstance(other, int):
            return Fp2Elem(other, 0, self.p)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def is_zero(self) -> bool:
        return not self

    def __add__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return other
        return Fp2Elem(self.a + other.a, self.b + other.b, self.p)

    __radd__ = __add__

    def __neg__(self):
        return Fp2Elem(-self.a, -self.b, self.p)

    def __sub__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return other
        return Fp2Elem(self.a - other.a, self.b - other.b, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        # w^2 = 1 - w
        return Fp2Elem(a * c + b * d, a * d + b * c - b * d, self.p)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Fp2Elem":
        if e < 0:
            return self.inverse() ** (-e)
        result = Fp2Elem.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self) -> "Fp2Elem":
        # w^p = (p-1)w + (p-1)
        return Fp2Elem(self.a - self.b, -self.b, self.p)

    def norm(self) -> int:
        return (self.a * self.a - self.a * self.b - self.b * self.b) % self.p

    def inverse(self) -> "Fp2Elem":
        if not self:
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        n_inv = pow(self.norm(), -1, self.p)
        return self.frobenius() * n_inv

    def __truediv__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def in_base_field(self) -> bool:
        return self.b == 0

    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        wb = "w" if self.b == 1 else f"{self.b}w"
        return wb if self.a == 0 else f"{self.a}+{wb}"


def fp2_mul(x: Fp2Elem, y: Fp2Elem) -> Fp2Elem:
    _check_same(x, y)
    return x * y


def frobenius(x: Fp2Elem) -> Fp2Elem:
    return x.frobenius()


def fp2_inv(x: Fp2Elem) -> Fp2Elem:
    return x.inverse()


class CycInt:
    """An element of Z[zeta_p] in the basis 1, zeta, ..., zeta^(p-2).

    ``zeta^(p-1)`` is eliminated with ``zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))``,
    so two values are equal iff their coefficient tuples are equal.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) == p:
            top = coeffs[-1]
            coeffs = tuple(c - top for c in coeffs[:-1])
        if len(coeffs) != p - 1:
            raise ValueError(f"need {p - 1} or {p} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def from_counts(cls, p: int, counts: Iterable[int]) -> "CycInt":
        """``sum_k counts[k] * zeta^k`` for k = 0..p-1."""
        return cls(p, counts)

    @classmethod
    def integer(cls, p: int, m: int) -> "CycInt":
        return cls(p, (m,) + (0,) * (p - 2))

    def _full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        _check_same(self, other)
        return CycInt(self.p, (x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, (-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, (c * other for c in self.coeffs))
        _check_same(self, other)
        p = self.p
        out = [0] * p
        for i, x in enumerate(self._full()):
            if x:
                for j, y in enumerate(other._full()):
                    out[(i + j) % p] += x * y
        return CycInt(p, out)

    __rmul__ = __mul__

    def is_rational_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self) -> str:
        return f"CycInt(p={self.p}, coeffs={self.coeffs})"


def cyc_accumulate(p: int, exponents: Iterable[int]) -> CycInt:
    """``sum zeta_p^e`` over a multiset of exponents."""
    counts = Counter(e % p for e in exponents)
    return CycInt(p, [counts.get(k, 0) for k in range(p)])


def cyc_as_rational_integer(z: CycInt) -> int:
    if not z.is_rational_integer():
        raise NotRationalInteger(f"{z!r} is not a rational integer")
    return z.coeffs[0]

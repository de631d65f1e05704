"""The chain ring F_{p^2} + u F_{p^2} with u^2 = 0."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import MixedParams
from .exactalg import Fp2Elem


@dataclass(frozen=True, order=True)
class ChainElem:
    """``x + u*y`` with x, y in F_{p^2}."""

    x: Fp2Elem
    y: Fp2Elem

    def __post_init__(self):
        if self.x.p != self.y.p:
            raise MixedParams("free part and u-part over different primes")

    @property
    def p(self) -> int:
        return self.x.p

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int, p: int) -> "ChainElem":
        """``(a + b w) + u (c + d w)``."""
        return cls(Fp2Elem(a, b, p), Fp2Elem(c, d, p))

    @classmethod
    def zero(cls, p: int) -> "ChainElem":
        return cls(Fp2Elem.zero(p), Fp2Elem.zero(p))

    @classmethod
    def one(cls, p: int) -> "ChainElem":
        return cls(Fp2Elem.one(p), Fp2Elem.zero(p))

    @classmethod
    def u(cls, p: int) -> "ChainElem":
        return cls(Fp2Elem.zero(p), Fp2Elem.one(p))

    @classmethod
    def all(cls, p: int) -> Iterator["ChainElem"]:
        """All p^4 elements, ordered by (x, y) with F_{p^2} ordered by (a, b)."""
        elems = list(Fp2Elem.all(p))
        for x in elems:
            for y in elems:
                yield cls(x, y)

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.x.a, self.x.b, self.y.a, self.y.b)

    def __bool__(self) -> bool:
        return bool(self.x) or bool(self.y)

    def __add__(self, other: "ChainElem") -> "ChainElem":
        return ChainElem(self.x + other.x, self.y + other.y)

    def __neg__(self) -> "ChainElem":
        return ChainElem(-self.x, -self.y)

    def __sub__(self, other: "ChainElem") -> "ChainElem":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fp2Elem)):
            return ChainElem(self.x * other, self.y * other)
        return ChainElem(self.x * other.x, self.x * other.y + self.y * other.x)

    def __rmul__(self, other):
        if isinstance(other, (int, Fp2Elem)):
            return self * other
        return NotImplemented

    def __str__(self) -> str:
        if not self.y:
            return f"({self.x})"
        return f"({self.x})+u({self.y})"

"""Polynomials over F_{p^2} and over A_p, and the factorization of x^n - 1.

The factorization is deterministic: cyclotomic cosets of p^2 mod n give the
factor degrees, an explicit splitting field F_{p^2}[y]/(g) supplies a
primitive n-th root of unity, and every coset yields one factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    DivisionByZeroPoly,
    InternalSplitFailure,
    MixedParams,
    NotCoprime,
    NotMonic,
    PreconditionViolated,
)
from .exactalg import Fp2Elem, prime_factors, validate_params
from .matring import Mat2
from .structure import decompose_u, tau


# -- polynomials over F_{p^2} --------------------------------------------------


@dataclass(frozen=True)
class PolyF:
    """Dense polynomial over F_{p^2}, lowest degree first, no trailing zeros."""

    coeffs: tuple
    p: int

    def __post_init__(self):
        c = list(self.coeffs)
        for x in c:
            if x.p != self.p:
                raise MixedParams("coefficient over a different prime")
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_pairs(cls, pairs: Iterable, p: int) -> "PolyF":
        return cls(tuple(Fp2Elem(a, b, p) for a, b in pairs), p)

    @classmethod
    def const(cls, c: Fp2Elem) -> "PolyF":
        return cls((c,), c.p)

    @classmethod
    def one(cls, p: int) -> "PolyF":
        return cls((Fp2Elem.one(p),), p)

    @classmethod
    def x(cls, p: int) -> "PolyF":
        return cls((Fp2Elem.zero(p), Fp2Elem.one(p)), p)

    @classmethod
    def xn_minus_1(cls, n: int, p: int) -> "PolyF":
        c = [Fp2Elem.zero(p)] * (n + 1)
        c[0] = Fp2Elem(p - 1, 0, p)
        c[n] = Fp2Elem.one(p)
        return cls(tuple(c), p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fp2Elem:
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fp2Elem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fp2Elem.zero(self.p)

    def _same(self, other: "PolyF") -> None:
        if other.p != self.p:
            raise MixedParams(f"polynomials over p={self.p} and p={other.p}")

    def __add__(self, other: "PolyF") -> "PolyF":
        self._same(other)
        n = max(len(self), len(other))
        return PolyF(tuple(self[k] + other[k] for k in range(n)), self.p)

    def __neg__(self) -> "PolyF":
        return PolyF(tuple(-c for c in self.coeffs), self.p)

    def __sub__(self, other: "PolyF") -> "PolyF":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Fp2Elem):
            return PolyF(tuple(c * other for c in self.coeffs), self.p)
        self._same(other)
        if not self or not other:
            return PolyF((), self.p)
        out = [Fp2Elem.zero(self.p)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return PolyF(tuple(out), self.p)

    def __divmod__(self, other: "PolyF"):
        self._same(other)
        if not other:
            raise DivisionByZeroPoly("division by the zero polynomial")
        inv = other.lead.inverse()
        rem = list(self.coeffs)
        dq = len(rem) - len(other)
        quot = [Fp2Elem.zero(self.p)] * max(dq + 1, 0)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return PolyF(tuple(quot), self.p), PolyF(tuple(rem), self.p)

    def __mod__(self, other: "PolyF") -> "PolyF":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "PolyF") -> "PolyF":
        return divmod(self, other)[0]

    def monic(self) -> "PolyF":
        if not self:
            return self
        return self * self.lead.inverse()

    def __call__(self, t: Fp2Elem) -> Fp2Elem:
        acc = Fp2Elem.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def frobenius(self) -> "PolyF":
        return PolyF(tuple(c.frobenius() for c in self.coeffs), self.p)

    def pow_mod(self, e: int, mod: "PolyF") -> "PolyF":
        result = PolyF.one(self.p) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def sort_key(self) -> tuple:
        return (self.degree, tuple(c.pair() for c in self.coeffs))

    def pairs(self) -> list[list[int]]:
        return [list(c.pair()) for c in self.coeffs]

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k and c == Fp2Elem.one(self.p):
                terms.append(mon)
            elif k:
                terms.append(f"({c})*{mon}")
            else:
                terms.append(f"({c})" if c.b and c.a else str(c))
        return " + ".join(terms)


def poly_mul(f: PolyF, g: PolyF) -> PolyF:
    return f * g


def poly_divmod(f: PolyF, g: PolyF) -> tuple[PolyF, PolyF]:
    return divmod(f, g)


def poly_gcd(f: PolyF, g: PolyF) -> PolyF:
    """Monic gcd (zero only if both inputs are zero)."""
    while g:
        f, g = g, f % g
    return f.monic()


def poly_product(polys: Iterable[PolyF], p: int) -> PolyF:
    out = PolyF.one(p)
    for f in polys:
        out = out * f
    return out


def is_irreducible(f: PolyF) -> bool:
    """Rabin's test over F_{p^2}."""
    m = f.degree
    if m < 1:
        return False
    if m == 1:
        return True
    q = f.p ** 2
    f = f.monic()
    x = PolyF.x(f.p)

    def frob_power(k: int) -> PolyF:
        h = x
        for _ in range(k):
            h = h.pow_mod(q, f)
        return h

    if (frob_power(m) - x) % f:
        return False
    for r in prime_factors(m):
        if poly_gcd(frob_power(m // r) - x, f).degree > 0:
            return False
    return True


# -- x^n - 1 -------------------------------------------------------------------


def cyclotomic_cosets(q: int, n: int) -> list[list[int]]:
    """Orbits of multiplication by q on Z_n, each sorted, ordered by least element."""
    seen = set()
    out = []
    for s in range(n):
        if s in seen:
            continue
        coset = []
        j = s
        while j not in coset:
            coset.append(j)
            j = (j * q) % n
        seen.update(coset)
        out.append(sorted(coset))
    return out


@dataclass(frozen=True)
class FactorSet:
    p: int
    n: int
    factors: tuple

    @property
    def degrees(self) -> list[int]:
        return [f.degree for f in self.factors]

    def product(self) -> PolyF:
        return poly_product(self.factors, self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "factors": [f.pairs() for f in self.factors]}


class _Ext:
    """F_{p^2}[y]/(g) with elements stored as reduced PolyF."""

    def __init__(self, g: PolyF):
        self.g = g
        self.p = g.p
        self.m = g.degree
        self.order = (g.p ** 2) ** self.m

    def elements(self):
        base = list(Fp2Elem.all(self.p))
        for tup in itertools.product(base, repeat=self.m):
            yield PolyF(tuple(reversed(tup)), self.p)

    def mul(self, a: PolyF, b: PolyF) -> PolyF:
        return (a * b) % self.g

    def pow(self, a: PolyF, e: int) -> PolyF:
        return a.pow_mod(e, self.g)


def _first_irreducible(p: int, m: int) -> PolyF:
    """First monic irreducible of degree m over F_{p^2}, lexicographic in the lower coefficients."""
    base = list(Fp2Elem.all(p))
    for tup in itertools.product(base, repeat=m):
        f = PolyF(tuple(reversed(tup)) + (Fp2Elem.one(p),), p)
        if is_irreducible(f):
            return f
    raise InternalSplitFailure(f"no irreducible polynomial of degree {m} found")


def _primitive_root_of_unity(ext: _Ext, n: int) -> PolyF:
    one = PolyF.one(ext.p)
    cofactor = (ext.order - 1) // n
    primes = prime_factors(n)
    for h in ext.elements():
        if not h:
            continue
        theta = ext.pow(h, cofactor)
        if all(ext.pow(theta, n // r) != one for r in primes):
            return theta
    raise InternalSplitFailure(f"no primitive {n}-th root of unity in the splitting field")


def factor_xn_minus_1(p: int, n: int) -> FactorSet:
    """Complete factorization of x^n - 1 over F_{p^2} into monic irreducibles."""
    validate_params(p)
    if n < 1:
        raise PreconditionViolated(f"n must be positive, got {n}")
    if gcd(n, p) != 1:
        raise NotCoprime(f"gcd(n={n}, p={p}) != 1")
    q = p * p
    cosets = cyclotomic_cosets(q, n)
    m = len(cosets[1]) if n > 1 else 1
    ext = _Ext(_first_irreducible(p, m))
    theta = _primitive_root_of_unity(ext, n)

    zero_e = PolyF((), p)
    factors = []
    for coset in cosets:
        # coefficients (over the extension) of prod_{j in coset} (x - theta^j)
        poly = [PolyF.one(p)]
        for j in coset:
            t = ext.pow(theta, j)
            nxt = [zero_e] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k + 1] = nxt[k + 1] + c
                nxt[k] = nxt[k] - ext.mul(c, t)
            poly = nxt
        if any(c.degree > 0 for c in poly):
            raise InternalSplitFailure(f"factor for coset {coset} does not descend to F_{p}^2")
        factors.append(PolyF(tuple(c[0] for c in poly), p))

    factors.sort(key=PolyF.sort_key)
    fs = FactorSet(p, n, tuple(factors))
    if fs.product() != PolyF.xn_minus_1(n, p):
        raise InternalSplitFailure(f"factors of x^{n}-1 over F_{p}^2 do not multiply back")
    return fs


# -- polynomials over A_p (x central) ----------------------------------------


@dataclass(frozen=True)
class PolyA:
    coeffs: tuple
    p: int

    def __post_init__(self):
        c = list(self.coeffs)
        for A in c:
            if A.p != self.p:
                raise MixedParams("coefficient over a different prime")
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_mats(cls, mats: Sequence[Mat2]) -> "PolyA":
        return cls(tuple(mats), mats[0].p)

    @classmethod
    def xn_minus_1(cls, n: int, p: int) -> "PolyA":
        c = [Mat2.zero(p)] * (n + 1)
        c[0] = Mat2.scalar(p - 1, p)
        c[n] = Mat2.identity(p)
        return cls(tuple(c), p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Mat2:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Mat2.zero(self.p)

    def __add__(self, other: "PolyA") -> "PolyA":
        if other.p != self.p:
            raise MixedParams("polynomials over different primes")
        n = max(len(self), len(other))
        return PolyA(tuple(self[k] + other[k] for k in range(n)), self.p)

    def __neg__(self) -> "PolyA":
        return PolyA(tuple(-c for c in self.coeffs), self.p)

    def __sub__(self, other: "PolyA") -> "PolyA":
        return self + (-other)

    def __mul__(self, other: "PolyA") -> "PolyA":
        return polyA_mul(self, other)

    def left_scale(self, M: Mat2) -> "PolyA":
        return PolyA(tuple(M @ c for c in self.coeffs), self.p)

    def reduce_cyclic(self, n: int) -> "PolyA":
        """Reduce modulo x^n - I (x^n -> I)."""
        out = [Mat2.zero(self.p)] * n
        for k, c in enumerate(self.coeffs):
            out[k % n] = out[k % n] + c
        return PolyA(tuple(out), self.p)

    def padded(self, n: int) -> list[Mat2]:
        return [self[k] for k in range(n)]

    def is_monic(self) -> bool:
        return bool(self) and self.coeffs[-1] == Mat2.identity(self.p)


def polyA_mul(f: PolyA, g: PolyA, n: int | None = None) -> PolyA:
    """Product with f's coefficients on the left; optionally reduced mod x^n - I."""
    if f.p != g.p:
        raise MixedParams("polynomials over different primes")
    p = f.p
    if not f or not g:
        out = PolyA((), p)
    else:
        acc = [Mat2.zero(p)] * (len(f) + len(g) - 1)
        for i, a in enumerate(f.coeffs):
            if a:
                for j, b in enumerate(g.coeffs):
                    acc[i + j] = acc[i + j] + a @ b
        out = PolyA(tuple(acc), p)
    return out.reduce_cyclic(n) if n else out


def lift(f: PolyF) -> PolyA:
    return PolyA(tuple(tau(c) for c in f.coeffs), f.p)


def mu_reduce(f: PolyA) -> PolyF:
    """Coefficientwise reduction modulo u_p: A -> x-part of its u-decomposition."""
    return PolyF(tuple(decompose_u(c).x for c in f.coeffs), f.p)


def is_basic_irreducible(f: PolyA) -> bool:
    if not f.is_monic():
        raise NotMonic("basic irreducibility is defined for monic polynomials")
    return is_irreducible(mu_reduce(f))

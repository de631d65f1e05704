"""Cyclic codes C = <F1hat, u_p F2hat> over A_p and their images over F_{p^2}+uF_{p^2}.

A code is stored as an F_p generator matrix: each A_p symbol is flattened
to its four entries (row-major), so a word of length n is a vector of
length 4n.  Cardinalities are certified by F_p-rank; distances and closure
properties come from exhaustive enumeration, gated by ``cap``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .chainring import ChainElem
from .errors import BadAssignment, CapExceeded, CardinalityMismatch, NotCoprime, PreconditionViolated
from .linalg import rref_mod_p
from .matring import Mat2, all_matrices_array, det_array, matmul_array, matrix_units
from .polyfactor import (
    FactorSet,
    PolyA,
    PolyF,
    factor_xn_minus_1,
    is_basic_irreducible,
    lift,
    mu_reduce,
    poly_gcd,
    poly_product,
    polyA_mul,
)
from .structure import phi_array, u_matrix

DEFAULT_CAP = 1 << 20
CONSTRUCTIONS = ("module", "pullback")


@dataclass(frozen=True)
class CodeSpec:
    """A factor set of x^n - 1 together with a class (0, 1 or 2) for each factor."""

    p: int
    n: int
    factor_set: FactorSet
    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(a) for a in self.assignment))
        if gcd(self.n, self.p) != 1:
            raise NotCoprime(f"gcd(n={self.n}, p={self.p}) != 1")
        if (self.factor_set.p, self.factor_set.n) != (self.p, self.n):
            raise BadAssignment("factor set belongs to different (p, n)")
        if len(self.assignment) != len(self.factor_set.factors):
            raise BadAssignment(
                f"need {len(self.factor_set.factors)} class indices, got {len(self.assignment)}"
            )
        if any(a not in (0, 1, 2) for a in self.assignment):
            raise BadAssignment(f"class indices must be 0, 1 or 2: {self.assignment}")

    @classmethod
    def from_assignment(cls, p: int, n: int, assignment: Sequence[int]) -> "CodeSpec":
        return cls(p, n, factor_xn_minus_1(p, n), tuple(assignment))

    def part(self, k: int) -> PolyF:
        """F_k: product of the factors assigned to class k."""
        return poly_product(
            (f for f, a in zip(self.factor_set.factors, self.assignment) if a == k), self.p
        )

    @cached_property
    def F0(self) -> PolyF:
        return self.part(0)

    @cached_property
    def F1(self) -> PolyF:
        return self.part(1)

    @cached_property
    def F2(self) -> PolyF:
        return self.part(2)

    @property
    def s(self) -> int:
        return 2 * self.F1.degree + self.F2.degree

    @property
    def expected_rank(self) -> int:
        return 2 * self.s

    @property
    def module_rank(self) -> int:
        """F_p-rank of the left A_p-module code, from its CRT structure.

        Components belonging to F1 contribute 4 * deg each.  The u-part is
        only an F_p[x]-span of F2hat, so an F2 factor whose Frobenius
        conjugate is absent from F2 contributes twice its degree.
        """
        F2 = self.F2
        conj = F2.frobenius()
        lcm_deg = F2.degree + conj.degree - poly_gcd(F2, conj).degree
        return 4 * self.F1.degree + 2 * lcm_deg

    def label(self) -> str:
        return ",".join(str(a) for a in self.assignment)


@dataclass
class GeneratorMatrix:
    p: int
    n: int
    rows: np.ndarray
    rank: int
    construction: str = "module"
    spec: CodeSpec | None = None

    @property
    def cardinality(self) -> int:
        return self.p ** self.rank


def _shift(coeffs: list, i: int) -> list:
    n = len(coeffs)
    return [coeffs[(k - i) % n] for k in range(n)]


def _chain_to_matrix_coords(a, b, c, d, p):
    return [a % p, b % p, (b - c) % p, (a - b - d) % p]


def generator_rows(spec: CodeSpec, construction: str = "module") -> list[list[int]]:
    """Spanning set (over F_p) of the code, before row reduction."""
    p, n = spec.p, spec.n
    F1hat = spec.F0 * spec.F2
    F2hat = spec.F0 * spec.F1
    rows = []
    if construction == "module":
        g1 = lift(F1hat).reduce_cyclic(n).padded(n)
        g2 = polyA_mul(PolyA((u_matrix(p),), p), lift(F2hat), n).padded(n)
        units = np.array([M.entries for M in matrix_units(p)], dtype=np.int64)
        for g in (g1, g2):
            base = np.array([c.entries for c in g], dtype=np.int64)
            for i in range(n):
                sh = np.roll(base, i, axis=0)
                prods = matmul_array(units[:, None, :], sh[None, :, :], p)
                rows.extend(prods.reshape(4, 4 * n).tolist())
    elif construction == "pullback":
        one = ChainElem.one(p)
        u = ChainElem.u(p)
        scalars = [one, one * ChainElem.make(0, 1, 0, 0, p), u, u * ChainElem.make(0, 1, 0, 0, p)]

        def reduce(f: PolyF) -> list[ChainElem]:
            out = [ChainElem.zero(p)] * n
            for k, c in enumerate(f.coeffs):
                out[k % n] = out[k % n] + ChainElem(c, c * 0)
            return out

        g1 = reduce(F1hat)
        g2 = [u * c for c in reduce(F2hat)]
        for g in (g1, g2):
            for i in range(n):
                sh = _shift(g, i)
                for s in scalars:
                    word = [s * c for c in sh]
                    rows.append([e for z in word for e in _chain_to_matrix_coords(*z.coords, p)])
    else:
        raise ValueError(f"construction must be one of {CONSTRUCTIONS}")
    return rows


def build_code(spec: CodeSpec, strict: bool = True, construction: str = "module") -> GeneratorMatrix:
    """Generator matrix of C = <F1hat, u_p F2hat>.

    ``construction="module"`` builds the left A_p-submodule of A_p[x]/(x^n - I)
    generated by lift(F1hat) and u_p lift(F2hat).  ``construction="pullback"``
    pulls the chain-ring code <F1hat, u F2hat> back through Phi_p.

    With ``strict`` a rank different from 2s raises :class:`CardinalityMismatch`
    (the exception carries the generator matrix).
    """
    rows = generator_rows(spec, construction)
    R, piv = rref_mod_p(rows, spec.p) if rows else (np.zeros((0, 4 * spec.n), np.int64), [])
    G = GeneratorMatrix(spec.p, spec.n, R, len(piv), construction, spec)
    if strict and G.rank != spec.expected_rank:
        raise CardinalityMismatch(
            f"rank {G.rank} != 2s = {spec.expected_rank} for assignment {spec.label()}",
            generator=G, expected_rank=spec.expected_rank,
        )
    return G


# -- enumeration -----------------------------------------------------------


def _check_cap(G: GeneratorMatrix, cap: int) -> None:
    if G.cardinality > cap:
        raise CapExceeded(f"{G.cardinality} codewords exceed cap {cap}")


def gray_digits(start: int, stop: int, r: int, p: int) -> np.ndarray:
    """Modular p-ary Gray code digits for ranks start..stop-1 (shape (stop-start, r))."""
    k = np.arange(start, stop, dtype=np.int64)
    d = np.empty((k.size, r + 1), dtype=np.int64)
    for i in range(r):
        d[:, i] = (k // p ** i) % p
    d[:, r] = 0
    return (d[:, :r] - d[:, 1:]) % p


def _all_combinations(rows: np.ndarray, p: int) -> np.ndarray:
    """sum_i d_i rows[i] for every digit tuple, in order of k = sum_i d_i p^i."""
    W = np.zeros((1, rows.shape[1]), dtype=np.uint8)
    for row in rows:
        W = np.concatenate([(W + d * row) % p for d in range(p)], axis=0).astype(np.uint8)
    return W


def codeword_blocks(G: GeneratorMatrix, cap: int = DEFAULT_CAP, block: int = 1 << 16) -> Iterator[np.ndarray]:
    """All codewords as uint8 arrays of shape (B, n, 4), in Gray order.

    The word of rank k is sum_i g_i(k) R_i with Gray digits g_i = d_i - d_{i+1};
    rewritten as sum_i d_i (R_i - R_{i-1}) it splits into a low-digit table
    and a high-digit table that are combined by addition alone.
    """
    _check_cap(G, cap)
    p, r, n = G.p, G.rank, G.n
    if r == 0:
        yield np.zeros((1, n, 4), dtype=np.uint8)
        return
    R = G.rows.astype(np.int64) % p
    D = (R - np.vstack([np.zeros((1, R.shape[1]), np.int64), R[:-1]])) % p
    h = 0
    while h < r and p ** (h + 1) <= block:
        h += 1
    h = max(h, 1)
    low = _all_combinations(D[:h], p)
    high = _all_combinations(D[h:], p)
    per = max(1, block // low.shape[0])
    for start in range(0, high.shape[0], per):
        hi = high[start:start + per]
        words = (hi[:, None, :] + low[None, :, :]) % p
        yield words.reshape(-1, n, 4)


def codeword_array(G: GeneratorMatrix, cap: int = DEFAULT_CAP) -> np.ndarray:
    return np.concatenate(list(codeword_blocks(G, cap)), axis=0)


def enumerate_codewords(G: GeneratorMatrix, cap: int = DEFAULT_CAP) -> Iterator[tuple]:
    """Every codeword exactly once, as a tuple of Mat2, in Gray order."""
    p = G.p
    for blk in codeword_blocks(G, cap):
        for w in blk.tolist():
            yield tuple(Mat2(*e, p) for e in w)


class WordSet:
    """Hash set of fixed-length words over F_p, for closure checks."""

    def __init__(self, words: np.ndarray, p: int):
        flat = words.reshape(words.shape[0], -1)
        self.p = p
        self.length = flat.shape[1]
        self._int = p ** self.length < 2 ** 62
        # float64 dot products are exact below 2^53 and much faster than int64 ones
        self._float = p ** self.length < 2 ** 53
        if self._int:
            self._pow = np.array([p ** k for k in range(self.length)], dtype=np.int64)
            self.keys = np.unique(self._key(flat))
        else:
            self.keys = {row.tobytes() for row in np.ascontiguousarray(flat, dtype=np.uint8)}

    def _key(self, flat: np.ndarray) -> np.ndarray:
        if self._float:
            return (flat.astype(np.float64) @ self._pow.astype(np.float64)).astype(np.int64)
        return flat.astype(np.int64) @ self._pow

    def __len__(self) -> int:
        return len(self.keys)

    def contains_all(self, words: np.ndarray) -> bool:
        flat = words.reshape(words.shape[0], -1)
        if self._int:
            k = self._key(flat)
            pos = np.searchsorted(self.keys, k)
            pos[pos == len(self.keys)] = 0
            return bool(np.all(self.keys[pos] == k))
        return all(row.tobytes() in self.keys
                   for row in np.ascontiguousarray(flat, dtype=np.uint8))


# -- metrics -----------------------------------------------------------------


@dataclass
class CodeMetrics:
    p: int
    n: int
    rank: int
    cardinality: int
    s: int | None = None
    expected_rank: int | None = None
    d_ham: int | None = None
    d_b: int | None = None
    d_nhom: Fraction | None = None
    d_l: int | None = None
    enumerated: bool = False
    assignment: str | None = None
    construction: str = "module"

    @property
    def matches_formula(self) -> bool | None:
        if self.expected_rank is None:
            return None
        return self.rank == self.expected_rank

    def to_json(self) -> dict:
        return {
            "assignment": self.assignment,
            "construction": self.construction,
            "p": self.p,
            "n": self.n,
            "s": self.s,
            "rank": self.rank,
            "expected_rank": self.expected_rank,
            "cardinality": self.cardinality,
            "matches_formula": self.matches_formula,
            "d_Ham": self.d_ham,
            "d_B": self.d_b,
            "d_nhom": None if self.d_nhom is None else str(self.d_nhom),
            "d_L": self.d_l,
            "enumerated": self.enumerated,
        }


@lru_cache(maxsize=None)
def symbol_weight_tables(p: int) -> dict:
    """Weights of every A_p symbol, indexed by matrix index.

    Homogeneous weights are integer numerators over ``(p^2-1)(p-1)``;
    the Lee weight is that of the Phi_p image.
    """
    M = all_matrices_array(p)
    nz = np.any(M != 0, axis=-1)
    unit = det_array(M, p) != 0
    D = (p * p - 1) * (p - 1)
    Z = phi_array(M, p)
    a, b, c, d = Z[..., 0], Z[..., 1], Z[..., 2], Z[..., 3]
    xnz = (a != 0) | (b != 0)
    ynz = (c != 0) | (d != 0)
    par = (a * d - b * c) % p == 0
    return {
        "ham": nz.astype(np.int64),
        "bachoc": np.where(nz, np.where(unit, 1, p), 0),
        "nhom_num": np.where(nz, np.where(unit, D - 1, p * p * (p - 1)), 0),
        "lee": np.where(xnz, np.where(par, 1, p), np.where(ynz, p, 0)),
    }


_WEIGHT_KEYS = ("ham", "bachoc", "nhom_num", "lee")


@lru_cache(maxsize=None)
def _packed_table(p: int) -> np.ndarray:
    # four 16-bit fields per symbol, so one gather and one sum give all weights
    t = symbol_weight_tables(p)
    out = np.zeros(p ** 4, dtype=np.int64)
    for j, k in enumerate(_WEIGHT_KEYS):
        out |= t[k].astype(np.int64) << (16 * j)
    return out


def block_weights(W: np.ndarray, p: int) -> dict:
    """Per-word weights for a block of words W (B, n, 4) over A_p."""
    n = W.shape[1]
    W = W.astype(np.int32)
    idx = ((W[..., 0] * p + W[..., 1]) * p + W[..., 2]) * p + W[..., 3]
    if n * p * p * (p - 1) < 1 << 16:
        packed = _packed_table(p)[idx].sum(axis=1)
        out = {k: (packed >> (16 * j)) & 0xFFFF for j, k in enumerate(_WEIGHT_KEYS)}
    else:
        out = {k: t[idx].sum(axis=1) for k, t in symbol_weight_tables(p).items()}
    out["nhom_den"] = (p * p - 1) * (p - 1)
    return out


def min_distances(G: GeneratorMatrix, cap: int = DEFAULT_CAP) -> CodeMetrics:
    """Minimum nonzero weights of the code (distances, since the code is additive)."""
    spec = G.spec
    m = CodeMetrics(
        p=G.p, n=G.n, rank=G.rank, cardinality=G.cardinality,
        s=spec.s if spec else None,
        expected_rank=spec.expected_rank if spec else None,
        assignment=spec.label() if spec else None,
        construction=G.construction,
    )
    _check_cap(G, cap)
    m.enumerated = True
    if G.rank == 0:
        return m
    best = None
    for blk in codeword_blocks(G, cap):
        w = block_weights(blk, G.p)
        keep = w["ham"] > 0
        if not keep.any():
            continue
        cur = [int(w[k][keep].min()) for k in ("ham", "bachoc", "nhom_num", "lee")]
        best = cur if best is None else [min(x, y) for x, y in zip(best, cur)]
    D = (G.p ** 2 - 1) * (G.p - 1)
    m.d_ham, m.d_b, num, m.d_l = best
    m.d_nhom = Fraction(num, D)
    return m


def code_metrics(G: GeneratorMatrix, cap: int = DEFAULT_CAP) -> CodeMetrics:
    """Like :func:`min_distances` but returns rank-only metrics when over the cap."""
    if G.cardinality <= cap:
        return min_distances(G, cap)
    spec = G.spec
    return CodeMetrics(
        p=G.p, n=G.n, rank=G.rank, cardinality=G.cardinality,
        s=spec.s if spec else None,
        expected_rank=spec.expected_rank if spec else None,
        assignment=spec.label() if spec else None,
        construction=G.construction,
    )


# -- closure and images ---------------------------------------------------


def closure_report(G: GeneratorMatrix, cap: int = DEFAULT_CAP) -> dict:
    """Exhaustive closure of the codeword set under shift and scalar multiplication.

    ``left_module``/``right_module``: closed under multiplying every symbol
    on the left/right by each matrix unit of A_p.
    """
    p = G.p
    words = codeword_array(G, cap).astype(np.int64)
    ws = WordSet(words, p)
    units = [np.array(E.entries) for E in matrix_units(p)]
    return {
        "size": len(ws),
        "cyclic": ws.contains_all(np.roll(words, 1, axis=1)),
        "left_module": all(ws.contains_all(matmul_array(E, words, p)) for E in units),
        "right_module": all(ws.contains_all(matmul_array(words, E, p)) for E in units),
    }


def cyclic_closure_check(G: GeneratorMatrix, cap: int = DEFAULT_CAP) -> bool:
    rep = closure_report(G, cap)
    return rep["cyclic"] and rep["left_module"]


@dataclass
class ImageCode:
    p: int
    n: int
    array: np.ndarray
    additive: bool
    cyclic: bool
    size: int

    @property
    def words(self) -> list[tuple]:
        return [tuple(ChainElem.make(*z, self.p) for z in w) for w in self.array.tolist()]


def image_code(G: GeneratorMatrix, cap: int = DEFAULT_CAP) -> ImageCode:
    """Apply Phi_p to every codeword and test the image for additivity and cyclicity.

    Additivity: the image contains 0 and is closed under adding the image of
    every basis row, which together with its size forces it to be a group.
    """
    p = G.p
    img = phi_array(codeword_array(G, cap).astype(np.int64), p)
    ws = WordSet(img, p)
    additive = len(ws) == G.cardinality and ws.contains_all(np.zeros((1,) + img.shape[1:], np.int64))
    if additive:
        for row in G.rows.astype(np.int64):
            step = phi_array(row.reshape(G.n, 4), p)
            if not ws.contains_all((img + step) % p):
                additive = False
                break
    cyclic = ws.contains_all(np.roll(img, 1, axis=1))
    return ImageCode(p, G.n, img, additive, cyclic, len(ws))


def image_min_lee(img: ImageCode) -> int | None:
    """Minimum Lee weight of the nonzero words of an image code, computed on chain coordinates."""
    p = img.p
    a, b, c, d = (img.array[..., k] for k in range(4))
    xnz = (a != 0) | (b != 0)
    ynz = (c != 0) | (d != 0)
    par = (a * d - b * c) % p == 0
    lee = np.where(xnz, np.where(par, 1, p), np.where(ynz, p, 0)).sum(axis=1)
    nonzero = (xnz | ynz).any(axis=1)
    return int(lee[nonzero].min()) if nonzero.any() else None


# -- quotient lattices -------------------------------------------------------


def _rem_left(g: PolyA, f: PolyA) -> PolyA:
    """Remainder of g modulo the left ideal A_p[x] f (f monic)."""
    d = f.degree
    while g.degree >= d:
        k = g.degree
        lead = g.coeffs[-1]
        shift = PolyA(tuple([Mat2.zero(g.p)] * (k - d)) + (lead,), g.p)
        g = g - polyA_mul(shift, f)
    return g


def chain_quotient_ideals(f: PolyA, p: int | None = None) -> dict:
    """Left A_p[x]-submodule lattice of A_p[x]/(f) for a monic linear basic irreducible f.

    Each submodule is an F_p-subspace of the p^4 remainders; it is generated
    by closing one element under left multiplication by the matrix units and
    by x, then all pairwise sums are added until nothing new appears.
    """
    p = f.p if p is None else p
    if f.p != p or p not in (2, 3):
        raise PreconditionViolated("quotient lattices are enumerated for p in {2, 3} only")
    if not f.is_monic() or f.degree != 1 or mu_reduce(f).degree != 1:
        raise PreconditionViolated("f must be monic of degree 1")
    if not is_basic_irreducible(f):
        raise PreconditionViolated("f must be basic irreducible")

    units = matrix_units(p)
    xpoly = PolyA((Mat2.zero(p), Mat2.identity(p)), p)

    def x_action(v) -> tuple:
        r = _rem_left(polyA_mul(xpoly, PolyA((Mat2(*v, p),), p)), f)
        return r[0].entries

    def ops(v):
        A = Mat2(*v, p)
        yield from ((E @ A).entries for E in units)
        yield x_action(v)

    def canon(vectors) -> tuple:
        if not vectors:
            return ()
        R, _ = rref_mod_p(vectors, p)
        return tuple(tuple(int(e) for e in row) for row in R)

    def close(vectors) -> tuple:
        basis = canon(vectors)
        while True:
            grown = canon(list(basis) + [w for v in basis for w in ops(v)])
            if grown == basis:
                return basis
            basis = grown

    subs = {close([v]) for v in itertools.product(range(p), repeat=4)}
    while True:
        new = {canon(list(a) + list(b)) for a in subs for b in subs} - subs
        if not new:
            break
        subs |= new

    def contains(big, small) -> bool:
        return len(canon(list(big) + list(small))) == len(big)

    ordered = sorted(subs, key=lambda b: (len(b), b))
    chain = all(contains(b, a) or contains(a, b) for a, b in itertools.combinations(ordered, 2))
    sizes = [p ** len(b) for b in ordered]
    u_sub = close([u_matrix(p).entries])
    return {
        "p": p,
        "f": [A.rows() for A in f.coeffs],
        "submodules": len(ordered),
        "sizes": sizes,
        "is_chain": chain,
        "is_three_chain": chain and sizes == [1, p ** 2, p ** 4],
        "u_submodule_size": p ** len(u_sub),
    }


# -- sweeps ------------------------------------------------------------------


def search_assignments(p: int, n: int, cap: int = DEFAULT_CAP, construction: str = "module") -> list[CodeMetrics]:
    """Build and measure the code for every one of the 3^t assignments.

    Sorted by (d_B descending, cardinality descending, assignment); codes
    over the cap keep rank-only metrics.
    """
    fs = factor_xn_minus_1(p, n)
    out = []
    for asg in itertools.product(range(3), repeat=len(fs.factors)):
        spec = CodeSpec(p, n, fs, asg)
        G = build_code(spec, strict=False, construction=construction)
        out.append(code_metrics(G, cap))
    out.sort(key=lambda m: (m.d_b is None, -(m.d_b or 0), -m.cardinality, m.assignment))
    return out

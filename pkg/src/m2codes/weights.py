"""Symbol weights on A_p, F_q and F_{p^2}+uF_{p^2}, and their extension to words.

All values are exact: integer-valued weights are ``int``, homogeneous
weights are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chainring import ChainElem
from .errors import MixedParams
from .exactalg import Fp2Elem, cyc_as_rational_integer
from .matring import Mat2, all_matrices, char_sum_over_units, gl_order


@dataclass(frozen=True)
class WeightKind:
    tag: str
    gamma: Fraction | None = None

    def __post_init__(self):
        if self.tag not in ("bachoc", "homogeneous", "nhom_field", "lee", "hamming"):
            raise ValueError(f"unknown weight kind {self.tag!r}")
        if self.tag == "homogeneous":
            g = Fraction(1) if self.gamma is None else Fraction(self.gamma)
            if g <= 0:
                raise ValueError("average value must be positive")
            object.__setattr__(self, "gamma", g)

    @classmethod
    def homogeneous(cls, gamma=1) -> "WeightKind":
        return cls("homogeneous", Fraction(gamma))


BACHOC = WeightKind("bachoc")
HAMMING = WeightKind("hamming")
LEE = WeightKind("lee")
NHOM_FIELD = WeightKind("nhom_field")
NHOM = WeightKind.homogeneous(1)


def bachoc_weight(A: Mat2) -> int:
    if not A:
        return 0
    return 1 if A.det() else A.p


def hom_weight(A: Mat2, gamma=1) -> Fraction:
    """Closed-form homogeneous weight with average value ``gamma``."""
    gamma = Fraction(gamma)
    p = A.p
    if not A:
        return Fraction(0)
    if A.det():
        return gamma * (1 - Fraction(1, (p * p - 1) * (p - 1)))
    return gamma * Fraction(p * p, p * p - 1)


def hom_weight_via_character(A: Mat2, gamma=1) -> Fraction:
    """``gamma * (1 - (1/|GL|) * sum_u chi(uA))`` with the sum computed exactly."""
    s = cyc_as_rational_integer(char_sum_over_units(A))
    return Fraction(gamma) * (1 - Fraction(s, gl_order(A.p)))


def nhom_field(x, q: int) -> Fraction:
    """Normalized homogeneous weight on F_q (x an int or an Fp2Elem)."""
    if not x:
        return Fraction(0)
    return Fraction(q, q - 1)


def in_B_set(z: ChainElem) -> bool:
    """Membership in {alpha*t + u*beta*t : alpha in F_p^*, t in F_{p^2}, beta in F_p}.

    Nonzero z = x + u y belongs iff x != 0 and y is an F_p-multiple of x,
    i.e. the 2x2 determinant of the coordinate pairs of x and y vanishes.
    """
    if not z:
        return True
    x, y = z.x, z.y
    if not x:
        return False
    return (x.a * y.b - x.b * y.a) % z.p == 0


def b_set_by_enumeration(p: int) -> frozenset:
    """The same set built straight from its parametrisation (test oracle)."""
    out = set()
    for alpha in range(1, p):
        for a1 in range(p):
            for b1 in range(p):
                for beta in range(p):
                    out.add(ChainElem.make(alpha * a1, alpha * b1, beta * a1, beta * b1, p))
    return frozenset(out)


def lee_weight(z: ChainElem) -> int:
    if not z:
        return 0
    return 1 if in_B_set(z) else z.p


def symbol_weight(s, kind: WeightKind):
    tag = kind.tag
    if tag == "hamming":
        return 1 if s else 0
    if tag == "bachoc":
        return bachoc_weight(s)
    if tag == "homogeneous":
        return hom_weight(s, kind.gamma)
    if tag == "lee":
        return lee_weight(s)
    if isinstance(s, Fp2Elem):
        return nhom_field(s, s.p ** 2)
    raise TypeError("nhom_field weight on a bare int needs the field size; use nhom_field()")


def word_weight(v: Sequence, kind: WeightKind):
    """Sum of symbol weights (Hamming counts nonzero symbols)."""
    if v:
        ps = {s.p for s in v}
        if len(ps) > 1:
            raise MixedParams(f"word mixes primes {sorted(ps)}")
    total = sum((symbol_weight(s, kind) for s in v), 0)
    return total


# -- tables ------------------------------------------------------------------


def weight_table(p: int, ring: str) -> list[dict]:
    """Every element of A_p ("matrix") or F_{p^2}+uF_{p^2} ("chain") with its weights.

    Matrix rows are in index order; chain rows are in (x, y) order.
    """
    if ring == "matrix":
        return [
            {"element": A, "w_B": bachoc_weight(A), "w_nhom": hom_weight(A)}
            for A in all_matrices(p)
        ]
    if ring == "chain":
        return [{"element": z, "w_L": lee_weight(z)} for z in ChainElem.all(p)]
    raise ValueError(f"ring must be 'matrix' or 'chain', not {ring!r}")


# F_3 + uF_3 reference values, keyed by (x, y) for x + u*y.
LEE_F3_REFERENCE = {
    (0, 0): 0, (1, 0): 1, (2, 0): 1, (1, 1): 1, (2, 2): 1,
    (0, 1): 3, (2, 1): 3, (0, 2): 3, (1, 2): 3,
}


def lee_weight_f3_variant(x: int, y: int) -> int:
    """Lee weight on F_3+uF_3 with weight-1 set {x + u*y : x != 0, y in {0, x}}."""
    x, y = x % 3, y % 3
    if x == 0 and y == 0:
        return 0
    return 1 if x and y in (0, x) else 3


def lee_weight_f3_scalar_multiple(x: int, y: int) -> int:
    """The generic rule (y an F_3-multiple of x) applied over base field F_3."""
    x, y = x % 3, y % 3
    if x == 0 and y == 0:
        return 0
    return 1 if x else 3


def lee_f3_table() -> list[dict]:
    """Reference Lee weights on F_3+uF_3 next to the two candidate rules."""
    rows = []
    for (x, y), w in LEE_F3_REFERENCE.items():
        rows.append({
            "element": _f3_str(x, y),
            "w_L": w,
            "variant_rule": lee_weight_f3_variant(x, y),
            "scalar_multiple_rule": lee_weight_f3_scalar_multiple(x, y),
        })
    return rows


def _f3_str(x: int, y: int) -> str:
    if y == 0:
        return str(x)
    uy = "u" if y == 1 else f"{y}u"
    return uy if x == 0 else f"{x}+{uy}"


# -- serialization -----------------------------------------------------------


def element_json(e):
    if isinstance(e, Mat2):
        return e.rows()
    if isinstance(e, ChainElem):
        return {"x": list(e.x.pair()), "y": list(e.y.pair())}
    if isinstance(e, Fp2Elem):
        return list(e.pair())
    return e


def value_json(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


def table_to_json(rows: list[dict]) -> list[dict]:
    return [{k: (element_json(v) if k == "element" else value_json(v)) for k, v in r.items()}
            for r in rows]


def table_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = list(rows[0])
    w.writerow(cols)
    for r in rows:
        w.writerow([str(r[c]) if c == "element" else value_json(r[c]) for c in cols])
    return buf.getvalue()


def table_to_text(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[str(c) for c in cols]]
    cells += [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    return "\n".join("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip()
                     for row in cells) + "\n"

"""Two reference codes with their expected parameters, and a runner that diffs them.

Factors are matched by their constant terms so the class assignment does
not depend on the sort order of :func:`factor_xn_minus_1`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .codes import CodeSpec, build_code, image_code, image_min_lee, min_distances
from .errors import CardinalityMismatch
from .polyfactor import factor_xn_minus_1


@dataclass(frozen=True)
class ReferenceCode:
    name: str
    p: int
    n: int
    classes: dict  # constant term (a, b) of a linear factor -> class index
    cardinality: int
    d_ham: int
    d_b: int
    d_nhom: Fraction
    d_l: int
    # fields whose disagreement is a documented finding rather than a failure
    soft: tuple = ()

    def spec(self) -> CodeSpec:
        fs = factor_xn_minus_1(self.p, self.n)
        asg = []
        for f in fs.factors:
            if f.degree != 1:
                raise ValueError("reference codes use linear factors only")
            asg.append(self.classes[f.coeffs[0].pair()])
        return CodeSpec(self.p, self.n, fs, tuple(asg))


# Length 3 over A_2.  F0 = x+(1+w), F1 = x+w, F2 = x+1 (with F0 and F1
# swappable) reproduces every expected number; see binary_literal_spec.
BINARY_LENGTH3 = ReferenceCode(
    name="binary-length-3", p=2, n=3,
    classes={(1, 1): 0, (0, 1): 1, (1, 0): 2},
    cardinality=64, d_ham=2, d_b=3, d_nhom=Fraction(2), d_l=3,
)

# Length 4 over A_3.  F0 = (x+1)(x+(1+2w)), F1 = x+(2+w), F2 = x-1.
TERNARY_LENGTH4 = ReferenceCode(
    name="ternary-length-4", p=3, n=4,
    classes={(1, 0): 0, (1, 2): 0, (2, 1): 1, (2, 0): 2},
    cardinality=729, d_ham=3, d_b=4, d_nhom=Fraction(27, 8), d_l=4,
    soft=("d_L",),
)

REFERENCE_CODES = (BINARY_LENGTH3, TERNARY_LENGTH4)


def binary_literal_spec() -> CodeSpec:
    """F0 = x+1, F1 = x+w, F2 = x+(1+w): the assignment read off the factor labels.

    Under the left-module construction this gives 2^8 codewords, not 2^6.
    """
    fs = factor_xn_minus_1(2, 3)
    classes = {(1, 0): 0, (0, 1): 1, (1, 1): 2}
    return CodeSpec(2, 3, fs, tuple(classes[f.coeffs[0].pair()] for f in fs.factors))


def run_reference(ref: ReferenceCode, cap: int = 1 << 20) -> dict:
    """Build the code, measure it, and compare every expected number."""
    spec = ref.spec()
    G = build_code(spec)
    m = min_distances(G, cap)
    img = image_code(G, cap)
    measured = {
        "cardinality": m.cardinality,
        "d_nhom": m.d_nhom,
        "d_B": m.d_b,
        "d_Ham": m.d_ham,
        "d_L": image_min_lee(img),
    }
    expected = {
        "cardinality": ref.cardinality,
        "d_nhom": ref.d_nhom,
        "d_B": ref.d_b,
        "d_Ham": ref.d_ham,
        "d_L": ref.d_l,
    }
    diffs = []
    for key, want in expected.items():
        got = measured[key]
        if got == want:
            status = "pass"
        else:
            status = "reported" if key in ref.soft else "fail"
        diffs.append({"quantity": key, "expected": _js(want), "measured": _js(got), "status": status})
    image_ok = img.additive and img.cyclic and img.size == ref.cardinality
    diffs.append({"quantity": "image_additive_cyclic", "expected": True,
                  "measured": image_ok, "status": "pass" if image_ok else "fail"})
    return {
        "name": ref.name,
        "p": ref.p,
        "n": ref.n,
        "assignment": spec.label(),
        "factors": [str(f) for f in spec.factor_set.factors],
        "F0": str(spec.F0), "F1": str(spec.F1), "F2": str(spec.F2),
        "metrics": m.to_json(),
        "image_size": img.size,
        "diffs": diffs,
        "status": _worst(d["status"] for d in diffs),
    }


def run_binary_literal(cap: int = 1 << 20) -> dict:
    spec = binary_literal_spec()
    try:
        build_code(spec)
        return {"assignment": spec.label(), "status": "pass"}
    except CardinalityMismatch as exc:
        m = min_distances(exc.generator, cap)
        return {"assignment": spec.label(), "status": "reported",
                "expected_rank": exc.expected_rank, "metrics": m.to_json()}


def _js(v):
    return str(v) if isinstance(v, Fraction) and v.denominator != 1 else (
        int(v) if isinstance(v, Fraction) else v)


def _worst(statuses) -> str:
    order = {"pass": 0, "reported": 1, "fail": 2}
    return max(statuses, key=order.__getitem__, default="pass")

"""Cyclic codes over M_2(F_p) and their images over F_{p^2}+uF_{p^2}."""

from __future__ import annotations

__version__ = "0.1.0"

from .chainring import ChainElem
from .codes import (
    CodeMetrics,
    CodeSpec,
    GeneratorMatrix,
    build_code,
    chain_quotient_ideals,
    closure_report,
    cyclic_closure_check,
    enumerate_codewords,
    image_code,
    min_distances,
    search_assignments,
)
from .errors import FalsificationError, M2CodesError, PreconditionError
from .exactalg import CycInt, FieldParams, Fp2Elem, validate_params
from .matring import Mat2, minimal_left_ideals
from .polyfactor import FactorSet, PolyA, PolyF, factor_xn_minus_1
from .structure import phi, phi_inv, tau, tau_inv, verify_isometry
from .weights import WeightKind, bachoc_weight, hom_weight, lee_weight, word_weight

__all__ = [
    "ChainElem", "CodeMetrics", "CodeSpec", "CycInt", "FactorSet", "FalsificationError",
    "FieldParams", "Fp2Elem", "GeneratorMatrix", "M2CodesError", "Mat2", "PolyA", "PolyF",
    "PreconditionError", "WeightKind", "bachoc_weight", "build_code", "chain_quotient_ideals",
    "closure_report", "cyclic_closure_check", "enumerate_codewords", "factor_xn_minus_1",
    "hom_weight", "image_code", "lee_weight", "min_distances", "minimal_left_ideals", "phi",
    "phi_inv", "search_assignments", "tau", "tau_inv", "validate_params", "verify_isometry",
    "word_weight",
]

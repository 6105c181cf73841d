"""Genus-2 integrable system on T*P^3, its Kummer quartic, and local models of Higgs fields."""

from .genus2 import (
    CANONICAL_VARIANT,
    CurveParams,
    HFormulaVariant,
    PhasePoint,
    QuadDiff,
    commutation_report,
    eval_F,
    fiber_solve,
    jacobian_rank,
)
from .kummer import kummer_eval, kummer_polynomial, kummer_singular_search
from .localhiggs import MatPoly2, classify_zero, hecke_transform, nondegeneracy_check

__version__ = "0.1.0"

__all__ = [
    "CANONICAL_VARIANT",
    "CurveParams",
    "HFormulaVariant",
    "MatPoly2",
    "PhasePoint",
    "QuadDiff",
    "classify_zero",
    "commutation_report",
    "eval_F",
    "fiber_solve",
    "hecke_transform",
    "jacobian_rank",
    "kummer_eval",
    "kummer_polynomial",
    "kummer_singular_search",
    "nondegeneracy_check",
]

"""The genus-2 Higgs-bundle integrable system in explicit coordinates.

The curve is ``w^2 = z (z-1) (z-r) (z-s) (z-t)`` with branch points
``0, 1, oo, r, s, t``.  Phase space is the affine chart of T*P^3 with
coordinates ``u0, u1, u2`` and momenta ``eta0, eta1, eta2``.  The map F
sends a point to the quadratic differential
``(h0 + h1 z + h2 z^2) dz^2 / f(z)``, up to an overall constant.

Three transcriptions of (h0, h1, h2) are provided:

``as_printed``
    The published formulas verbatim.
``eta1_corrected``
    The fourth bracket of h0 reads ``eta0(u0^2+1) + eta1(u0 u1 + u2) + ...``
    instead of repeating ``eta0``.
``corrected``
    As ``eta1_corrected``, and the third bracket of h2 uses
    ``eta1(u1^2+1)`` in place of ``eta1(u2^2+1)``.

Every bracket ``eta . X`` must be the cotangent lift of a signed permutation
of C^4 acting on the affine chart; both printed brackets fail that test and
their replacements pass it.  Only ``corrected`` Poisson-commutes, which
:func:`commutation_report` checks by full expansion.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactmath import MPoly, PreconditionError, as_rational, exact_rank, numeric_rank
from .numerics import CompiledPolys, levenberg_marquardt

U_NAMES = ("u0", "u1", "u2")
ETA_NAMES = ("eta0", "eta1", "eta2")
PHASE_NAMES = U_NAMES + ETA_NAMES
ODD_UNDER_INVOLUTION = ("u1", "u2", "eta1", "eta2")

DEFAULT_RANK_TOL = 1e-8


class HFormulaVariant(enum.Enum):
    AS_PRINTED = "as_printed"
    ETA1_CORRECTED = "eta1_corrected"
    CORRECTED = "corrected"

    @classmethod
    def parse(cls, text: str) -> "HFormulaVariant":
        aliases = {
            "printed": cls.AS_PRINTED,
            "as_printed": cls.AS_PRINTED,
            "eta1": cls.ETA1_CORRECTED,
            "eta1_corrected": cls.ETA1_CORRECTED,
            "corrected": cls.CORRECTED,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise PreconditionError(f"unknown variant {text!r}; use printed, eta1 or corrected") from None


# The variant whose brackets vanish identically; asserted by the test suite.
CANONICAL_VARIANT = HFormulaVariant.CORRECTED

# On the fixed locus u1=u2=eta1=eta2=0 the printed h1 satisfies r*h1 + h0 = 0.
FIXED_LOCUS_SIGN = 1


@dataclass(frozen=True)
class CurveParams:
    r: object
    s: object
    t: object

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        vals = (self.r, self.s, self.t)
        if len({_key(v) for v in vals}) < 3:
            raise PreconditionError(f"branch points r, s, t must be distinct, got {vals}")
        for v in vals:
            if v == 0 or v == 1:
                raise PreconditionError(f"branch point {v} collides with 0 or 1")

    @classmethod
    def parse(cls, text: str) -> "CurveParams":
        parts = [p for p in text.split(",")]
        if len(parts) != 3:
            raise PreconditionError("curve must be given as r,s,t")
        return cls(*(as_rational(p) for p in parts))

    def as_dict(self) -> Dict[str, object]:
        return {"r": self.r, "s": self.s, "t": self.t}

    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in (self.r, self.s, self.t))


def _key(v):
    return complex(v) if not isinstance(v, (int, Fraction)) else v


@dataclass(frozen=True)
class PhasePoint:
    u0: object
    u1: object
    u2: object
    eta0: object
    eta1: object
    eta2: object

    @classmethod
    def from_seq(cls, values: Sequence) -> "PhasePoint":
        if len(values) != 6:
            raise PreconditionError("a phase point has six coordinates")
        return cls(*values)

    @classmethod
    def parse(cls, text: str) -> "PhasePoint":
        return cls.from_seq([as_rational(p) for p in text.split(",")])

    def as_tuple(self) -> Tuple:
        return (self.u0, self.u1, self.u2, self.eta0, self.eta1, self.eta2)

    def as_dict(self) -> Dict[str, object]:
        return dict(zip(PHASE_NAMES, self.as_tuple()))

    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.as_tuple())


@dataclass(frozen=True)
class QuadDiff:
    """Numerator coefficients of ``(a0 + a1 z + a2 z^2) dz^2 / f(z)``."""

    a0: object
    a1: object
    a2: object

    def as_tuple(self):
        return (self.a0, self.a1, self.a2)

    def is_zero(self) -> bool:
        return not any(self.as_tuple())

    @classmethod
    def parse(cls, text: str) -> "QuadDiff":
        parts = [as_rational(p) for p in text.split(",")]
        if len(parts) != 3:
            raise PreconditionError("target must be a0,a1,a2")
        return cls(*parts)


# ---------------------------------------------------------------------------
# the Hamiltonians


@lru_cache(maxsize=None)
def h_polynomials(variant: HFormulaVariant = CANONICAL_VARIANT) -> Tuple[MPoly, MPoly, MPoly]:
    """(h0, h1, h2) as polynomials in u, eta, r, s, t."""
    variant = HFormulaVariant(variant)
    u0, u1, u2, e0, e1, e2, r, s, t = (MPoly.var(n) for n in PHASE_NAMES + ("r", "s", "t"))
    one = MPoly.const(1)
    p = e0 * u0 + e1 * u1 + e2 * u2

    h0_last = e1 if variant is not HFormulaVariant.AS_PRINTED else e0
    h0 = (
        r * s * t * (e0 * (u0**2 - 1) + e1 * (u0 * u1 + u2) + e2 * (u2 * u0 + u1)) ** 2
        - s * t * (e0 * (u0 * u1 - u2) + e1 * (u1**2 + 1) + e2 * (u1 * u2 + u0)) ** 2
        + 4 * r * s * (e0 * u0 + e1 * u1) ** 2
        - r * t * (e0 * (u0**2 + 1) + h0_last * (u0 * u1 + u2) + e2 * (u2 * u0 - u1)) ** 2
    )
    h1 = (
        t * (u0**2 + u1**2 + u2**2 + 1) * ((e0**2 + e1**2 + e2**2) + p**2)
        + s * t * (u0**2 - u1**2 + u2**2 - 1) * ((e0**2 - e1**2 + e2**2) - p**2)
        + 4 * r * (u0 * u2 - u1) * (e0 * e2 + p * e1)
        + 4 * s * r * (u2 * u0 + u1) * (e2 * e0 - p * e1)
        + 4 * s * (u1 * u2 + u0) * (e1 * e2 - p * e0)
        + 4 * r * t * (u0 * u1 + u2) * (e0 * e1 - p * e2)
    )
    h2_sq = u1 if variant is HFormulaVariant.CORRECTED else u2
    h2 = (
        s * (e0 * (u2 * u0 + u1) + e1 * (u1 * u2 + u0) + e2 * (u2**2 - 1)) ** 2
        - (e0 * (u2 * u0 - u1) + e1 * (u1 * u2 + u0) + e2 * (u2**2 + one)) ** 2
        - t * (e0 * (u0 * u1 + u2) + e2 * (u1 * u2 - u0) + e1 * (h2_sq**2 + 1)) ** 2
        + 4 * r * (e1 * u1 + e2 * u2) ** 2
    )
    return h0, h1, h2


@lru_cache(maxsize=None)
def _specialised(variant: HFormulaVariant, r, s, t) -> Tuple[MPoly, MPoly, MPoly]:
    vals = {"r": r, "s": s, "t": t}
    return tuple(h.substitute(vals) for h in h_polynomials(variant))


@lru_cache(maxsize=None)
def _jacobian_polys(variant: HFormulaVariant) -> Tuple[Tuple[MPoly, ...], ...]:
    return tuple(tuple(h.diff(v) for v in PHASE_NAMES) for h in h_polynomials(variant))


def eval_F(curve: CurveParams, pt: PhasePoint, variant: HFormulaVariant = CANONICAL_VARIANT) -> QuadDiff:
    curve.validate()
    values = {**pt.as_dict(), **curve.as_dict()}
    return QuadDiff(*(h.evaluate(values) for h in h_polynomials(HFormulaVariant(variant))))


# ---------------------------------------------------------------------------
# Poisson structure


def poisson_bracket(f: MPoly, g: MPoly) -> MPoly:
    """Canonical bracket sum_i df/du_i dg/deta_i - df/deta_i dg/du_i."""
    out = MPoly.zero()
    for u, e in zip(U_NAMES, ETA_NAMES):
        out = out + f.diff(u) * g.diff(e) - f.diff(e) * g.diff(u)
    return out


@dataclass
class CommutationReport:
    variant: HFormulaVariant
    pairs: Dict[Tuple[int, int], MPoly]
    all_zero: bool
    smallest_terms: Dict[Tuple[int, int], List[str]] = field(default_factory=dict)


def commutation_report(variant: HFormulaVariant = CANONICAL_VARIANT, diagnostics: int = 3) -> CommutationReport:
    """Expand {h0,h1}, {h0,h2}, {h1,h2}; list low-degree terms of any that survive."""
    variant = HFormulaVariant(variant)
    h = h_polynomials(variant)
    keys = [(0, 1), (0, 2), (1, 2)]
    with ThreadPoolExecutor(max_workers=3) as pool:
        brackets = list(pool.map(lambda ij: poisson_bracket(h[ij[0]], h[ij[1]]), keys))
    pairs = dict(zip(keys, brackets))
    smallest = {}
    for key, b in pairs.items():
        if b:
            terms = sorted(b.terms.items(), key=lambda item: (sum(item[0]), item[0]))[:diagnostics]
            smallest[key] = [MPoly._raw(b.variables, {e: c}).to_text() for e, c in terms]
    return CommutationReport(variant, pairs, not smallest, smallest)


# ---------------------------------------------------------------------------
# critical points


@dataclass(frozen=True)
class JacobianRank:
    rank: int
    d: int
    kernel_dim: int


def jacobian_matrix(curve: CurveParams, pt: PhasePoint, variant: HFormulaVariant = CANONICAL_VARIANT):
    """3x6 matrix [dh_i/d(u, eta)] evaluated at a point."""
    values = {**pt.as_dict(), **curve.as_dict()}
    return [[p.evaluate(values) for p in row] for row in _jacobian_polys(HFormulaVariant(variant))]


def jacobian_rank(
    curve: CurveParams,
    pt: PhasePoint,
    variant: HFormulaVariant = CANONICAL_VARIANT,
    tol: float = DEFAULT_RANK_TOL,
) -> JacobianRank:
    """Rank of DF.  Exact inputs use exact elimination; anything else uses SVD with ``tol``."""
    curve.validate()
    jac = jacobian_matrix(curve, pt, variant)
    if curve.is_exact() and pt.is_exact():
        rank = exact_rank(jac)
    else:
        rank = numeric_rank(np.array(jac, dtype=complex), tol)
    return JacobianRank(rank=rank, d=3 - rank, kernel_dim=6 - rank)


# ---------------------------------------------------------------------------
# the involution


def involution_apply(pt: PhasePoint) -> PhasePoint:
    return PhasePoint(pt.u0, -pt.u1, -pt.u2, pt.eta0, -pt.eta1, -pt.eta2)


def is_involution_fixed(pt: PhasePoint) -> bool:
    return not any((pt.u1, pt.u2, pt.eta1, pt.eta2))


def involution_pullback(p: MPoly) -> MPoly:
    return p.scale_variables({v: -1 for v in ODD_UNDER_INVOLUTION})


def invariance_check(variant: HFormulaVariant = CANONICAL_VARIANT, polys: Optional[Sequence[MPoly]] = None) -> bool:
    """True iff every h_i (or every given polynomial) is unchanged by the sign flip."""
    polys = h_polynomials(HFormulaVariant(variant)) if polys is None else polys
    return all(involution_pullback(p) == p for p in polys)


def fixed_locus_restriction(variant: HFormulaVariant = CANONICAL_VARIANT) -> Tuple[MPoly, MPoly, MPoly]:
    """(h0, h1, h2) restricted to u1 = u2 = eta1 = eta2 = 0."""
    zero = {v: 0 for v in ODD_UNDER_INVOLUTION}
    return tuple(h.substitute(zero).compact() for h in h_polynomials(HFormulaVariant(variant)))


def fixed_locus_sign(variant: HFormulaVariant = CANONICAL_VARIANT) -> Optional[int]:
    """The eps in {+1, -1} with r*h1 + eps*h0 = 0 on the fixed locus, or None."""
    h0, h1, _ = fixed_locus_restriction(variant)
    r = MPoly.var("r")
    for eps in (1, -1):
        if (r * h1 + eps * h0).is_zero():
            return eps
    return None


# ---------------------------------------------------------------------------
# numeric fibre solver

def _critical_covector(curve: CurveParams, target: QuadDiff):
    """Weights (1, z_i, z_i^2) (or (0,0,1) at infinity) for a branch point where the target vanishes."""
    a0, a1, a2 = target.as_tuple()
    if target.is_zero():
        return None
    candidates = [(0, (1, 0, 0)), (1, (1, 1, 1)), (None, (0, 0, 1))]
    candidates += [(z, (1, z, z * z)) for z in (curve.r, curve.s, curve.t)]
    for z, lam in candidates:
        if lam[0] * a0 + lam[1] * a1 + lam[2] * a2 == 0:
            return lam
    return None


def fiber_solve(
    curve: CurveParams,
    target: QuadDiff,
    seeds: int = 50,
    tol: float = 1e-9,
    variant: HFormulaVariant = CANONICAL_VARIANT,
    critical: bool = False,
    rng: np.random.Generator | int | None = None,
    initial: Optional[Sequence[PhasePoint]] = None,
) -> List[PhasePoint]:
    """Complex points with ``|F(pt) - target| <= tol`` by damped Gauss-Newton from random seeds.

    With ``critical=True`` and a target vanishing at a branch point z_i, the
    system is augmented by ``d(h0 + z_i h1 + z_i^2 h2) = 0`` so that solutions
    lie on the first critical locus over z_i.  Empty output is a valid answer.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    curve.validate()
    variant = HFormulaVariant(variant)
    rng = np.random.default_rng(rng)
    h = _specialised(variant, *(Fraction(v) if isinstance(v, int) else v for v in (curve.r, curve.s, curve.t)))
    goal = np.array([complex(v) for v in target.as_tuple()])
    equations = list(h)
    if critical:
        lam = _critical_covector(curve, target)
        if lam is None:
            raise PreconditionError("critical solve needs a target vanishing at a branch point")
        combo = lam[0] * h[0] + lam[1] * h[1] + lam[2] * h[2]
        equations += [combo.diff(v) for v in PHASE_NAMES]
        goal = np.concatenate([goal, np.zeros(6)])
    fun_c = CompiledPolys(equations, PHASE_NAMES)
    jac_c = CompiledPolys([p.diff(v) for p in equations for v in PHASE_NAMES], PHASE_NAMES)
    n_eq = len(equations)

    def fun(x):
        return fun_c(x) - goal

    def jac(x):
        return jac_c(x).reshape(n_eq, 6)

    starts = [np.array([complex(v) for v in p.as_tuple()]) for p in (initial or [])]
    while len(starts) < seeds + len(initial or []):
        starts.append(rng.normal(size=6) + 1j * rng.normal(size=6))

    found = []
    for x0 in starts:
        x, resid = levenberg_marquardt(fun, jac, x0, tol)
        if resid <= tol:
            found.append(PhasePoint.from_seq([_clean(v) for v in x]))
    return found


def _clean(v: complex):
    return complex(v.real, v.imag) if v.imag else complex(v.real, 0.0)


def residual(curve: CurveParams, pt: PhasePoint, target: QuadDiff, variant=CANONICAL_VARIANT) -> float:
    val = eval_F(curve, pt, variant)
    return float(np.linalg.norm([complex(a) - complex(b) for a, b in zip(val.as_tuple(), target.as_tuple())]))


# ---------------------------------------------------------------------------
# the companion curve over a C1 critical value

INFINITY = "oo"


def branch_points(curve: CurveParams) -> List[object]:
    return [Fraction(0), Fraction(1), INFINITY, curve.r, curve.s, curve.t]


def c1_companion_branch_points(z1_index: int, a, b, curve: CurveParams) -> List[object]:
    """Branch points of w~^2 = (a z + b) prod_{j != i} (z - z_j): the root -b/a and the other five."""
    curve.validate()
    if z1_index not in range(1, 7):
        raise PreconditionError("z1_index must be in 1..6")
    a, b = as_rational(a), as_rational(b)
    if a == 0:
        raise PreconditionError("degenerate companion curve: a z + b is constant")
    root = -b / a
    kept = [p for k, p in enumerate(branch_points(curve), start=1) if k != z1_index]
    if any(p == root for p in kept):
        raise PreconditionError(f"degenerate companion curve: -b/a = {root} is already a branch point")
    return [root] + kept

"""Kummer quartic of the genus-2 curve, its pencil in r, and the C2 elliptic fibre.

The quartic is used in the affine chart of P^3 exactly as printed (the
fourth homogeneous coordinate set to 1).  :func:`kummer_homogeneous`
restores it as ``w`` by matching each ``+1`` or bare ``u_i^2`` term with
the missing powers of ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from .exactmath import MPoly, univariate_discriminant
from .genus2 import U_NAMES, CurveParams
from .numerics import CompiledPolys, levenberg_marquardt


@lru_cache(maxsize=None)
def kummer_polynomial() -> MPoly:
    u0, u1, u2, r, s, t = (MPoly.var(n) for n in ("u0", "u1", "u2", "r", "s", "t"))
    return (
        t * (s - 1) * (u0**4 + u1**4 + u2**4 + 1)
        - 8 * (r * (s - t + 1) - s) * u0 * u1 * u2
        - 2 * (s * t + t - 2 * s) * (u1**2 * u2**2 + u0**2)
        - 2 * (s - 1) * (2 * r - t) * (u2**2 * u0**2 + u1**2)
        + t * (2 * r - (s + 1)) * (u0**2 * u1**2 + u2**2)
    )


@lru_cache(maxsize=None)
def kummer_homogeneous() -> MPoly:
    u0, u1, u2, w, r, s, t = (MPoly.var(n) for n in ("u0", "u1", "u2", "w", "r", "s", "t"))
    return (
        t * (s - 1) * (u0**4 + u1**4 + u2**4 + w**4)
        - 8 * (r * (s - t + 1) - s) * u0 * u1 * u2 * w
        - 2 * (s * t + t - 2 * s) * (u1**2 * u2**2 + u0**2 * w**2)
        - 2 * (s - 1) * (2 * r - t) * (u2**2 * u0**2 + u1**2 * w**2)
        + t * (2 * r - (s + 1)) * (u0**2 * u1**2 + u2**2 * w**2)
    )


def kummer_eval(curve: CurveParams, u):
    curve.validate()
    u0, u1, u2 = u
    return kummer_polynomial().evaluate({"u0": u0, "u1": u1, "u2": u2, **curve.as_dict()})


def pencil_degree() -> int:
    """Degree of the Kummer quartic in r (1 means a pencil)."""
    return kummer_polynomial().degree("r")


SIGN_FLIPS = (("u1", "u2"), ("u0", "u1"), ("u0", "u2"))


def parity_audit(p: MPoly | None = None) -> dict:
    """For each pair flip (u_i, u_j) -> (-u_i, -u_j), whether the quartic is invariant."""
    p = kummer_polynomial() if p is None else p
    return {pair: p.scale_variables({v: -1 for v in pair}) == p for pair in SIGN_FLIPS}


# ---------------------------------------------------------------------------
# singular points


@dataclass(frozen=True)
class SingularPoint:
    point: Tuple[complex, complex, complex]
    value_residual: float
    gradient_residual: float


def kummer_singular_search(
    curve: CurveParams,
    seeds: int = 400,
    tol: float = 1e-9,
    rng: np.random.Generator | int | None = None,
    dedupe: float = 1e-6,
) -> List[SingularPoint]:
    """Nodes of the affine Kummer quartic via damped Newton on Q = grad Q = 0.

    Each node found is completed to its orbit under the pair sign flips,
    which preserve Q; images are re-checked against ``tol``.  Points at
    infinity (w = 0) are not searched.  Distinct nodes are kept
    once, merged when closer than ``dedupe``.
    """
    curve.validate()
    rng = np.random.default_rng(rng)
    q = kummer_polynomial().substitute(curve.as_dict())
    polys = [q] + [q.diff(v) for v in U_NAMES]
    f = CompiledPolys(polys, U_NAMES)
    j = CompiledPolys([p.diff(v) for p in polys for v in U_NAMES], U_NAMES)

    def fun(x):
        return f(x)

    def jac(x):
        return j(x).reshape(4, 3)

    found: List[SingularPoint] = []

    def accept(x) -> bool:
        vals = f(x)
        qres, gres = abs(vals[0]), float(np.linalg.norm(vals[1:]))
        if qres > tol or gres > tol:
            return False
        if not any(np.linalg.norm(np.array(sp.point) - x) < dedupe for sp in found):
            found.append(SingularPoint(tuple(complex(v) for v in x), float(qres), gres))
        return True

    for _ in range(seeds):
        x0 = rng.normal(size=3) * 1.5 + 1j * rng.normal(size=3) * 1.5
        x, _res = levenberg_marquardt(fun, jac, x0, tol)
        if accept(x):
            # Q is even under each pair flip, so the orbit consists of nodes too
            for signs in _FLIP_SIGNS:
                accept(x * signs)
    return found


_FLIP_SIGNS = tuple(
    np.array([-1.0 if v in pair else 1.0 for v in U_NAMES]) for pair in SIGN_FLIPS
)


# ---------------------------------------------------------------------------
# the C2 fibre


@dataclass(frozen=True)
class EllipticQuartic:
    """Right-hand side of y^2 = A x^4 + B x^3 + C x^2 + D x + E."""

    coefficients: Tuple[object, object, object, object, object]  # (A, B, C, D, E)

    def as_mpoly(self) -> MPoly:
        x = MPoly.var("x")
        return sum((MPoly.coerce(c) * x ** (4 - k) for k, c in enumerate(self.coefficients)), MPoly.zero())


def c2_fiber_display(s=None, t=None) -> MPoly:
    """st(x^2-1)^2 + 4 s x^2 - t(x^2+1)^2, symbolic unless s, t are given."""
    x = MPoly.var("x")
    s_ = MPoly.var("s") if s is None else MPoly.coerce(s)
    t_ = MPoly.var("t") if t is None else MPoly.coerce(t)
    return s_ * t_ * (x**2 - 1) ** 2 + 4 * s_ * x**2 - t_ * (x**2 + 1) ** 2


def c2_fiber_quartic(s=None, t=None) -> EllipticQuartic:
    p = c2_fiber_display(s, t)
    coeffs = []
    for k in range(4, -1, -1):
        c = p.coefficient("x", k).compact()
        coeffs.append(c.constant_term() if not c.variables else c)
    return EllipticQuartic(tuple(coeffs))


@dataclass(frozen=True)
class DiscriminantIdentity:
    lhs: MPoly
    rhs: MPoly
    equal: bool


def closed_form_discriminant() -> MPoly:
    s, t = MPoly.var("s"), MPoly.var("t")
    return 4096 * s**2 * t**2 * (s - 1) ** 2 * (s - t) ** 2 * (t - 1) ** 2


def c2_discriminant_identity() -> DiscriminantIdentity:
    lhs = univariate_discriminant(c2_fiber_display(), "x")
    rhs = closed_form_discriminant()
    return DiscriminantIdentity(lhs, rhs, lhs == rhs)


def c2_discriminant_value(s, t) -> Fraction:
    return univariate_discriminant(c2_fiber_display(s, t), "x").constant_term()

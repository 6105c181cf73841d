"""Dense univariate polynomials over Q and the quartic discriminant.

A dense polynomial is a list of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .mpoly import MPoly
from .scalars import PreconditionError

Dense = List[Fraction]


def trim(p: Sequence) -> Dense:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def derivative(p: Sequence) -> Dense:
    return trim([k * c for k, c in enumerate(p)][1:])


def mul(p: Sequence, q: Sequence) -> Dense:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_(p: Sequence, q: Sequence):
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        c = rem[-1] / lead
        quot[shift] = c
        for j, b in enumerate(q):
            rem[shift + j] -= c * b
        rem = trim(rem)
    return trim(quot), rem


def gcd(p: Sequence, q: Sequence) -> Dense:
    """Monic gcd over Q."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def squarefree_part(p: Sequence) -> Dense:
    p = trim(p)
    g = gcd(p, derivative(p))
    return divmod_(p, g)[0] if g else p


def from_mpoly(p: MPoly, var: str) -> List[MPoly]:
    """Coefficients of ``p`` as a polynomial in ``var`` (lowest first)."""
    return [p.coefficient(var, k) for k in range(p.degree(var) + 1)]


def quartic_discriminant(a, b, c, d, e):
    """Discriminant of ``a x^4 + b x^3 + c x^2 + d x + e``.

    Standard normalisation: equals ``a^6 * prod_{i<j} (x_i - x_j)^2``, the
    resultant of p and p' divided by ``a``.  Works for any commutative ring
    elements (Fractions, MPoly).
    """
    return (
        256 * a**3 * e**3
        - 192 * a**2 * b * d * e**2
        - 128 * a**2 * c**2 * e**2
        + 144 * a**2 * c * d**2 * e
        - 27 * a**2 * d**4
        + 144 * a * b**2 * c * e**2
        - 6 * a * b**2 * d**2 * e
        - 80 * a * b * c**2 * d * e
        + 18 * a * b * c * d**3
        + 16 * a * c**4 * e
        - 4 * a * c**3 * d**2
        - 27 * b**4 * e**2
        + 18 * b**3 * c * d * e
        - 4 * b**3 * d**3
        - 4 * b**2 * c**3 * e
        + b**2 * c**2 * d**2
    )


def univariate_discriminant(p: MPoly, var: str | None = None) -> MPoly:
    """Discriminant of a quartic in ``var``; other symbols may appear in coefficients."""
    if var is None:
        used = p.compact().variables
        if len(used) != 1:
            raise PreconditionError(f"specify the variable; polynomial uses {used}")
        var = used[0]
    if p.degree(var) != 4:
        raise PreconditionError(f"expected degree 4 in {var}, got {p.degree(var)}")
    e, d, c, b, a = from_mpoly(p, var)
    return quartic_discriminant(a, b, c, d, e).compact()

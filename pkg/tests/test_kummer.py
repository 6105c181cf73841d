import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import latex_oracle
from conftest import from_sympy, rationals
from g2higgs.exactmath import MPoly, PreconditionError
from g2higgs.genus2 import CurveParams, involution_pullback
from g2higgs.kummer import (
    SIGN_FLIPS,
    c2_discriminant_identity,
    c2_discriminant_value,
    c2_fiber_quartic,
    kummer_eval,
    kummer_homogeneous,
    kummer_polynomial,
    kummer_singular_search,
    closed_form_discriminant,
    parity_audit,
    pencil_degree,
)

KNAMES = ("u0", "u1", "u2", "r", "s", "t")
CURVE = CurveParams(Fraction(2), Fraction(3), Fraction(5))


def test_matches_latex_transcription():
    assert kummer_polynomial() == from_sympy(latex_oracle.kummer(), KNAMES)


def test_coefficients():
    q = kummer_polynomial()
    r, s, t = (MPoly.var(n) for n in "rst")
    assert q.coefficient("u0", 4).substitute({"u1": 0, "u2": 0}) == t * (s - 1)
    mono = q.coefficient("u0", 1).coefficient("u1", 1).coefficient("u2", 1)
    assert mono == -8 * (r * (s - t + 1) - s)
    assert q.coefficient("u0", 2).substitute({"u1": 0, "u2": 0}) == -2 * (s * t + t - 2 * s)
    u0 = MPoly.var("u0")
    assert q.substitute({"u1": 0, "u2": 0}) == t * (s - 1) * (u0**4 + 1) - 2 * (s * t + t - 2 * s) * u0**2


def test_pencil_in_r():
    assert pencil_degree() == 1
    q = kummer_polynomial()
    s, t = MPoly.var("s"), MPoly.var("t")
    u0, u1, u2 = (MPoly.var(n) for n in ("u0", "u1", "u2"))
    by_hand = (
        -8 * (s - t + 1) * u0 * u1 * u2
        - 4 * (s - 1) * (u2**2 * u0**2 + u1**2)
        + 2 * t * (u0**2 * u1**2 + u2**2)
    )
    assert q.diff("r") == by_hand


def test_homogeneous_form_dehomogenises():
    qh = kummer_homogeneous()
    assert qh.is_homogeneous_in(("u0", "u1", "u2", "w"), 4)
    assert qh.substitute({"w": 1}) == kummer_polynomial()


def test_eval_examples():
    assert kummer_eval(CURVE, (0, 0, 0)) == 10
    assert kummer_eval(CURVE, (1, 1, 1)) == kummer_polynomial().evaluate({"u0": 1, "u1": 1, "u2": 1, "r": 2, "s": 3, "t": 5})
    with pytest.raises(PreconditionError):
        kummer_eval(CurveParams.parse("2,2,5"), (0, 0, 0))


def test_parity_audit():
    audit = parity_audit()
    assert set(audit) == set(SIGN_FLIPS) and all(audit.values())
    assert involution_pullback(kummer_polynomial()) == kummer_polynomial()


@given(st.lists(rationals, min_size=3, max_size=3))
@settings(max_examples=30)
def test_eval_even_under_each_flip(u):
    base = kummer_eval(CURVE, u)
    for i, j in ((1, 2), (0, 1), (0, 2)):
        flipped = list(u)
        flipped[i], flipped[j] = -flipped[i], -flipped[j]
        assert kummer_eval(CURVE, flipped) == base


def test_singular_search_contract():
    tol = 1e-9
    nodes = kummer_singular_search(CURVE, seeds=600, tol=tol, rng=4)
    assert 0 < len(nodes) <= 16
    q = kummer_polynomial().substitute(CURVE.as_dict())
    for sp in nodes:
        assert sp.value_residual <= tol and sp.gradient_residual <= tol
        vals = dict(zip(("u0", "u1", "u2"), sp.point))
        assert abs(complex(q.evaluate(vals))) < 1e-7
    # the (u1, u2) flip maps the node set to itself
    pts = [np.array(sp.point) for sp in nodes]
    for p in pts:
        image = p * np.array([1, -1, -1])
        assert min(np.linalg.norm(image - x) for x in pts) < 1e-6


def test_singular_search_is_seeded():
    a = kummer_singular_search(CURVE, seeds=40, rng=3)
    b = kummer_singular_search(CURVE, seeds=40, rng=3)
    assert [x.point for x in a] == [x.point for x in b]


def test_singular_search_never_exceeds_sixteen():
    rng = random.Random(1)
    for _ in range(2):
        while True:
            try:
                curve = CurveParams(*(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(3)))
                break
            except PreconditionError:
                pass
        assert len(kummer_singular_search(curve, seeds=150, rng=0)) <= 16


# ---------------------------------------------------------------------------
# the elliptic fibre


def test_fiber_quartic_coefficients():
    assert c2_fiber_quartic(3, 5).coefficients == (10, 0, -28, 0, 10)
    sym = c2_fiber_quartic()
    a, b, c, d, e = sym.coefficients
    s, t = MPoly.var("s"), MPoly.var("t")
    assert a == e == t * (s - 1)
    assert b == 0 and d == 0
    assert c == -2 * (s * t - 2 * s + t)


def test_discriminant_identity():
    ident = c2_discriminant_identity()
    assert ident.equal
    assert ident.lhs == ident.rhs == closed_form_discriminant()
    x, s, t = sympy.symbols("x s t")
    quartic = s * t * (x**2 - 1) ** 2 + 4 * s * x**2 - t * (x**2 + 1) ** 2
    assert ident.lhs == from_sympy(sympy.discriminant(quartic, x), ("s", "t"))


def test_discriminant_spot_values():
    assert c2_discriminant_value(3, 5) == 235929600
    assert closed_form_discriminant().evaluate({"s": 3, "t": 5}) == 235929600
    assert c2_discriminant_value(4, 4) == 0


@given(rationals, rationals)
def test_discriminant_nonzero_for_admissible(s, t):
    assume(len({s, t, 0, 1}) == 4)
    assert c2_discriminant_value(s, t) != 0


def test_degenerate_fibre_is_rejected():
    # t(s-1) = 0 drops the degree of the quartic
    with pytest.raises(PreconditionError):
        c2_discriminant_value(1, 5)

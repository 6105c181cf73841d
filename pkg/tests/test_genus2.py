import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

import latex_oracle
from conftest import from_sympy, nonzero_rationals, polys, rationals
from g2higgs.exactmath import MPoly, PreconditionError, exact_rank
from g2higgs.genus2 import (
    CANONICAL_VARIANT,
    ETA_NAMES,
    FIXED_LOCUS_SIGN,
    INFINITY,
    U_NAMES,
    CurveParams,
    HFormulaVariant,
    PhasePoint,
    QuadDiff,
    c1_companion_branch_points,
    commutation_report,
    eval_F,
    fiber_solve,
    fixed_locus_restriction,
    fixed_locus_sign,
    h_polynomials,
    invariance_check,
    involution_apply,
    involution_pullback,
    is_involution_fixed,
    jacobian_matrix,
    jacobian_rank,
    poisson_bracket,
    residual,
)

ALL = ("u0", "u1", "u2", "eta0", "eta1", "eta2", "r", "s", "t")
CURVE = CurveParams(Fraction(2), Fraction(3), Fraction(5))
V = HFormulaVariant


def _rand_point(rng, lo=-5, hi=5):
    return PhasePoint.from_seq([Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(6)])


def _rand_curve(rng):
    while True:
        vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(3)]
        try:
            return CurveParams(*vals)
        except PreconditionError:
            continue


# ---------------------------------------------------------------------------
# transcription


@pytest.mark.parametrize(
    "variant, kwargs",
    [(V.AS_PRINTED, {}), (V.ETA1_CORRECTED, {"eta1_only": True}), (V.CORRECTED, {"corrected": True})],
)
def test_h_polynomials_match_latex_transcription(variant, kwargs):
    for ours, ref in zip(h_polynomials(variant), latex_oracle.hamiltonians(**kwargs)):
        assert ours == from_sympy(ref, ALL)


def test_printed_h2_has_the_r_term():
    h2 = h_polynomials(V.AS_PRINTED)[2]
    r, e1, e2, u1, u2 = (MPoly.var(n) for n in ("r", "eta1", "eta2", "u1", "u2"))
    target = 4 * r * (e1 * u1 + e2 * u2) ** 2
    assert (h2 - target).coefficient("r", 1).is_zero()


@pytest.mark.parametrize("variant", list(V))
def test_quadratic_in_momenta(variant):
    for h in h_polynomials(variant):
        assert h.is_homogeneous_in(ETA_NAMES, 2)
        assert h.substitute({e: 0 for e in ETA_NAMES}).is_zero()


def test_variant_parse_aliases():
    assert V.parse("printed") is V.AS_PRINTED
    assert V.parse("corrected") is V.CORRECTED
    assert V.parse("eta1") is V.ETA1_CORRECTED
    with pytest.raises(PreconditionError):
        V.parse("nope")


# ---------------------------------------------------------------------------
# evaluation


def test_eval_F_examples():
    pt = PhasePoint.parse("1,0,0,1,0,0")
    for variant in V:
        assert eval_F(CURVE, pt, variant) == QuadDiff(-16, 8, 0)
    assert eval_F(CURVE, PhasePoint.parse("3,-1,2,0,0,0")).is_zero()


def test_curve_validation():
    for bad in ("1,3,5", "0,3,5", "2,2,5"):
        with pytest.raises(PreconditionError):
            CurveParams.parse(bad)
    assert CurveParams.parse("1/2,3,-4").r == Fraction(1, 2)


@given(st.lists(rationals, min_size=6, max_size=6), nonzero_rationals)
@settings(max_examples=25)
def test_homogeneous_degree_two_in_momenta(vals, lam):
    pt = PhasePoint.from_seq(vals)
    scaled = PhasePoint.from_seq(vals[:3] + [lam * v for v in vals[3:]])
    f, g = eval_F(CURVE, pt), eval_F(CURVE, scaled)
    assert g.as_tuple() == tuple(lam**2 * x for x in f.as_tuple())


@given(st.lists(rationals, min_size=6, max_size=6))
@settings(max_examples=25)
def test_F_invariant_under_involution_on_samples(vals):
    pt = PhasePoint.from_seq(vals)
    assert eval_F(CURVE, involution_apply(pt)) == eval_F(CURVE, pt)


def test_fixed_locus_h2_vanishes_on_samples():
    rng = random.Random(5)
    for _ in range(20):
        u0, e0 = Fraction(rng.randint(-9, 9), 7), Fraction(rng.randint(-9, 9), 5)
        assert eval_F(_rand_curve(rng), PhasePoint(u0, 0, 0, e0, 0, 0)).a2 == 0


# ---------------------------------------------------------------------------
# Poisson structure


def test_bracket_examples():
    u0, u1, e0 = MPoly.var("u0"), MPoly.var("u1"), MPoly.var("eta0")
    assert poisson_bracket(u0, e0) == 1
    assert poisson_bracket(u0, u1) == 0
    assert poisson_bracket(e0, u0) == -1


PHASE_POLY = polys(names=("u0", "u1", "eta0", "eta1"), max_terms=4, max_exp=2)


@given(PHASE_POLY, PHASE_POLY, PHASE_POLY)
def test_bracket_antisymmetry_and_leibniz(f, g, h):
    assert poisson_bracket(f, g) == -poisson_bracket(g, f)
    assert poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h)


@given(PHASE_POLY, PHASE_POLY, PHASE_POLY)
@settings(max_examples=25)
def test_bracket_jacobi(f, g, h):
    pb = poisson_bracket
    assert pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g)) == 0


def _sympy_bracket_at(f, g, values):
    syms = {n: sympy.Symbol(n) for n in ALL}
    total = 0
    for u, e in zip(U_NAMES, ETA_NAMES):
        total += sympy.diff(f, syms[u]) * sympy.diff(g, syms[e]) - sympy.diff(f, syms[e]) * sympy.diff(g, syms[u])
    return total.subs({syms[k]: sympy.Rational(v.numerator, v.denominator) for k, v in values.items()})


@pytest.mark.parametrize("variant, kwargs", [(V.AS_PRINTED, {}), (V.CORRECTED, {"corrected": True})])
def test_brackets_agree_with_sympy_at_random_points(variant, kwargs):
    rng = random.Random(11)
    ours = h_polynomials(variant)
    ref = latex_oracle.hamiltonians(**kwargs)
    for _ in range(3):
        values = {n: Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for n in ALL}
        for i, j in ((0, 1), (0, 2), (1, 2)):
            mine = poisson_bracket(ours[i], ours[j]).evaluate(values)
            assert mine == _sympy_bracket_at(ref[i], ref[j], values)


def test_commutation_selects_exactly_one_variant():
    results = {v: commutation_report(v).all_zero for v in V}
    assert [v for v, ok in results.items() if ok] == [CANONICAL_VARIANT]


def test_failing_variant_reports_smallest_terms():
    rep = commutation_report(V.AS_PRINTED)
    assert not rep.all_zero
    assert rep.smallest_terms and all(len(t) <= 3 for t in rep.smallest_terms.values())


def test_self_brackets_vanish():
    for h in h_polynomials(CANONICAL_VARIANT):
        assert poisson_bracket(h, h).is_zero()


# ---------------------------------------------------------------------------
# involution and fixed locus


def test_involution_examples():
    pt = PhasePoint.parse("1,2,3,4,5,6")
    assert involution_apply(pt) == PhasePoint.parse("1,-2,-3,4,-5,-6")
    assert involution_apply(involution_apply(pt)) == pt
    assert is_involution_fixed(PhasePoint.parse("7,0,0,-2,0,0"))
    assert not is_involution_fixed(pt)


def test_invariance():
    assert invariance_check(CANONICAL_VARIANT)
    h0, h1, h2 = h_polynomials(CANONICAL_VARIANT)
    perturbed = h0 + MPoly.var("u1") * MPoly.var("eta0") ** 2
    assert not invariance_check(polys=(perturbed, h1, h2))


def test_pullback_is_parity_count():
    h = h_polynomials(CANONICAL_VARIANT)[1]
    odd_index = [h.variables.index(v) for v in ("u1", "u2", "eta1", "eta2") if v in h.variables]
    assert all(sum(e[i] for i in odd_index) % 2 == 0 for e in h.terms)
    assert involution_pullback(h) == h


def test_fixed_locus_structure():
    h0, h1, h2 = fixed_locus_restriction(CANONICAL_VARIANT)
    assert h2.is_zero()
    eps = fixed_locus_sign(CANONICAL_VARIANT)
    assert eps == FIXED_LOCUS_SIGN
    assert (MPoly.var("r") * h1 + eps * h0).is_zero()
    # closed form of h0 on the fixed locus
    u0, e0, r, s, t = (MPoly.var(n) for n in ("u0", "eta0", "r", "s", "t"))
    assert h0 == e0**2 * r * (s * t * (u0**2 - 1) ** 2 + 4 * s * u0**2 - t * (u0**2 + 1) ** 2)


# ---------------------------------------------------------------------------
# ranks


def test_rank_examples():
    rng = random.Random(2)
    generic = jacobian_rank(CURVE, _rand_point(rng))
    assert (generic.rank, generic.d) == (3, 0)
    zero_section = jacobian_rank(CURVE, PhasePoint.parse("1/2,3,-1,0,0,0"))
    assert (zero_section.rank, zero_section.d, zero_section.kernel_dim) == (0, 3, 6)
    fixed = jacobian_rank(CURVE, PhasePoint.parse("1/3,0,0,2,0,0"))
    assert (fixed.rank, fixed.d, fixed.kernel_dim) == (1, 2, 5)


def test_exact_and_numeric_rank_agree():
    rng = random.Random(9)
    for _ in range(10):
        pt = _rand_point(rng)
        exact = jacobian_rank(CURVE, pt).rank
        floating = PhasePoint.from_seq([float(v) for v in pt.as_tuple()])
        assert jacobian_rank(CURVE, floating).rank == exact
        assert exact_rank(jacobian_matrix(CURVE, pt)) == exact


# ---------------------------------------------------------------------------
# fibre solver


def test_fiber_solve_round_trip():
    target = eval_F(CURVE, PhasePoint.parse("1/2,1,-1,1,2,1/3"))
    pts = fiber_solve(CURVE, target, seeds=10, tol=1e-9, rng=0)
    assert pts
    assert all(residual(CURVE, p, target) <= 1e-9 for p in pts)


def test_fiber_solve_zero_target_from_zero_section():
    start = PhasePoint.from_seq([0.3, -0.2, 0.7, 0.0, 0.0, 0.0])
    pts = fiber_solve(CURVE, QuadDiff(0, 0, 0), seeds=0, tol=1e-12, initial=[start])
    assert len(pts) == 1 and all(complex(v) == 0 for v in pts[0].as_tuple()[3:])


def test_fiber_solve_is_seeded():
    target = QuadDiff(1, 2, 3)
    a = fiber_solve(CURVE, target, seeds=5, rng=7)
    b = fiber_solve(CURVE, target, seeds=5, rng=7)
    assert [p.as_tuple() for p in a] == [p.as_tuple() for p in b]


def test_fiber_solve_preconditions():
    with pytest.raises(PreconditionError):
        fiber_solve(CURVE, QuadDiff(1, 2, 3), tol=0)
    with pytest.raises(PreconditionError):
        fiber_solve(CURVE, QuadDiff(1, 1, 1), critical=True)


# ---------------------------------------------------------------------------
# companion curve


def test_companion_examples():
    pts = c1_companion_branch_points(1, 1, -7, CURVE)
    assert sorted(map(str, pts)) == sorted(map(str, [Fraction(7), Fraction(1), INFINITY, 2, 3, 5]))
    assert set(pts) == {Fraction(7), Fraction(1), INFINITY, Fraction(2), Fraction(3), Fraction(5)}
    with pytest.raises(PreconditionError, match="degenerate companion curve"):
        c1_companion_branch_points(1, 0, 1, CURVE)
    with pytest.raises(PreconditionError, match="degenerate companion curve"):
        c1_companion_branch_points(1, 1, -3, CURVE)


def test_companion_accepts_the_removed_point():
    # -b/a may equal the branch point being replaced
    pts = c1_companion_branch_points(4, 1, -2, CURVE)
    assert Fraction(2) in pts and len(set(map(str, pts))) == 6

from fractions import Fraction

import sympy
from hypothesis import settings
from hypothesis import strategies as st

from g2higgs.exactmath import MPoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL_VARS = ("u0", "u1", "eta0", "r")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(bool)


@st.composite
def polys(draw, names=SMALL_VARS, max_terms=5, max_exp=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp)] * len(names)),
            nonzero_rationals,
            max_size=max_terms,
        )
    )
    return MPoly(names, terms)


def to_sympy(p: MPoly):
    syms = sympy.symbols(p.variables) if p.variables else ()
    if len(p.variables) == 1:
        syms = (syms,)
    out = sympy.Integer(0)
    for exps, c in p.terms.items():
        mono = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exps):
            mono *= s**e
        out += mono
    return sympy.expand(out)


def from_sympy(expr, names):
    poly = sympy.Poly(sympy.expand(expr), *sympy.symbols(names))
    return MPoly(names, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, summary = mod.RESULTS[n]
        terminalreporter.write_line(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {summary}")

"""Independent transcription of the displayed formulas, read by sympy.

The LaTeX below is copied as displayed; ``to_sympy_expr`` turns it into a
sympy expression with its own tokenizer, so nothing here shares code with
the package's polynomial construction.
"""

import re

import sympy

H0 = r"""
rst[\eta_0(u_0^2-1)+\eta_1(u_0u_1+u_2)+\eta_2(u_2u_0+u_1)]^2-
st[\eta_0(u_0u_1-u_2)+\eta_1(u^2_1+1)+\eta_2(u_1u_2+u_0)]^2+
4rs(\eta_0u_0+\eta_1u_1)^2-rt[\eta_0(u_0^2+1)+\eta_0(u_0u_1+u_2)+\eta_2(u_2u_0-u_1)]^2
"""

H1 = r"""
t(u_0^2+u_1^2+u_2^2+1)[(\eta_0^2+\eta_1^2+\eta_2^2)+(\eta_0u_0+\eta_1u_1+\eta_2u_2)^2]+
st(u_0^2-u_1^2+u_2^2-1)[(\eta_0^2-\eta_1^2+\eta_2^2)-(\eta_0u_0+\eta_1u_1+\eta_2u_2)^2]+
4r(u_0u_2-u_1)[\eta_0\eta_2+(\eta_0u_0+\eta_1u_1+\eta_2u_2)\eta_1]+
4sr(u_2u_0+u_1)[\eta_2\eta_0-(\eta_0u_0+\eta_1u_1+\eta_2u_2)\eta_1]+
4s(u_1u_2+u_0)[\eta_1\eta_2-(\eta_0u_0+\eta_1u_1+\eta_2u_2)\eta_0]+
4rt(u_0u_1+u_2)[\eta_0\eta_1-(\eta_0u_0+\eta_1u_1+\eta_2u_2)\eta_2]
"""

H2 = r"""
s[\eta_0(u_2u_0+u_1)+\eta_1(u_1u_2+u_0)+\eta_2(u_2^2-1)]^2-
[\eta_0(u_2u_0-u_1)+\eta_1(u_1u_2+u_0)+\eta_2(u_2^2+1)]^2-
t[\eta_0(u_0u_1+u_2)+\eta_2(u_1u_2-u_0)+\eta_1(u_2^2+1)]^2+4r(\eta_1u_1+\eta_2u_2)^2
"""

KUMMER = r"""
t(s-1)(u_0^4+u_1^4+u_2^4+1)-8(r(s-t+1)-s)u_0u_1u_2
-2(st+t-2s)(u_1^2u_2^2+u_0^2)
- 2(s-1)(2r-t)(u_2^2u_0^2+u_1^2)
+t(2r-(s+1))(u_0^2u_1^2+u_2^2)
"""

# the two single-symbol repairs that make the brackets vanish
H0_FIX = (r"+\eta_0(u_0u_1+u_2)+\eta_2(u_2u_0-u_1)", r"+\eta_1(u_0u_1+u_2)+\eta_2(u_2u_0-u_1)")
H2_FIX = (r"\eta_1(u_2^2+1)", r"\eta_1(u_1^2+1)")

_TOKEN = re.compile(r"\\eta_(\d)|u\^(\d)_(\d)|u_(\d)|([rst])|(\d+)|(\^)|([-+()\[\]])|(\s+)")


def to_sympy_expr(latex: str):
    out = []
    prev_operand = False
    pos = 0
    while pos < len(latex):
        m = _TOKEN.match(latex, pos)
        if m is None:
            raise ValueError(f"cannot read {latex[pos:pos + 20]!r}")
        pos = m.end()
        eta, upow_e, upow_i, u, letter, num, caret, punct, _space = m.groups()
        if _space:
            continue
        if caret:
            out.append("**")
            m2 = re.compile(r"\d+").match(latex, pos)
            out.append(m2.group())
            pos = m2.end()
            prev_operand = True
            continue
        if eta or u or letter or num or upow_i or punct in ("(", "["):
            if prev_operand:
                out.append("*")
        if eta:
            out.append(f"eta{eta}")
        elif upow_i:
            out.append(f"u{upow_i}**{upow_e}")
        elif u:
            out.append(f"u{u}")
        elif letter:
            out.append(letter)
        elif num:
            out.append(num)
        else:
            out.append({"[": "(", "]": ")"}.get(punct, punct))
        prev_operand = bool(eta or u or letter or num or upow_i or punct in (")", "]"))
    return sympy.sympify("".join(out))


def hamiltonians(corrected: bool = False, eta1_only: bool = False):
    h0, h1, h2 = H0, H1, H2
    if corrected or eta1_only:
        assert H0_FIX[0] in h0
        h0 = h0.replace(*H0_FIX)
    if corrected:
        assert h2.count(H2_FIX[0]) == 1
        h2 = h2.replace(*H2_FIX)
    return tuple(to_sympy_expr(h) for h in (h0, h1, h2))


def kummer():
    return to_sympy_expr(KUMMER)

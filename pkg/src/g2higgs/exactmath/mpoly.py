"""Multivariate polynomials with exact rational coefficients.

An :class:`MPoly` is a map from exponent tuples to nonzero ``Fraction``
coefficients over an ordered tuple of variable names.  Variables are kept
in one global order (``u0 u1 u2 eta0 eta1 eta2 r s t z x w``, then any
other names alphabetically) so that two polynomials built independently
line up by name, never by position.

  (u0 + eta0)**2   ->   variables ('u0', 'eta0')
                        terms {(2, 0): 1, (1, 1): 2, (0, 2): 1}

Canonical text form (used by the CLI and golden files) lists terms in
descending graded-lexicographic order with coefficients written ``num/den``::

    1/1*u0^2 + 2/1*u0*eta0 + 1/1*eta0^2
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Mapping, Tuple

from .scalars import PreconditionError, as_rational, format_rational

Exponent = Tuple[int, ...]

GLOBAL_ORDER = ("u0", "u1", "u2", "eta0", "eta1", "eta2", "r", "s", "t", "z", "x", "w")
_RANK = {name: i for i, name in enumerate(GLOBAL_ORDER)}


def _sort_key(name: str):
    return (0, _RANK[name], "") if name in _RANK else (1, 0, name)


def order_variables(names: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(names), key=_sort_key))


class MPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        ordered = order_variables(variables)
        if len(ordered) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        perm = [variables.index(v) for v in ordered]
        clean: Dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != len(variables):
                raise ValueError(f"exponent {exps} does not match variables {variables}")
            c = Fraction(coeff)
            if c:
                key = tuple(exps[i] for i in perm)
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        self.variables: Tuple[str, ...] = ordered
        self.terms: Dict[Exponent, Fraction] = clean
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Exponent, Fraction]) -> "MPoly":
        # trusted fast path: variables already ordered, terms nonzero
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def const(cls, value) -> "MPoly":
        c = as_rational(value)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def zero(cls) -> "MPoly":
        return cls._raw((), {})

    @staticmethod
    def coerce(value) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        return MPoly.const(value)

    # alignment ----------------------------------------------------------

    def with_variables(self, variables: Tuple[str, ...]) -> "MPoly":
        """Re-express over a superset of this polynomial's (ordered) variables."""
        if variables == self.variables:
            return self
        missing = set(self.variables) - set(variables)
        if missing:
            raise ValueError(f"cannot drop variables {sorted(missing)}")
        index = [variables.index(v) for v in self.variables]
        n = len(variables)
        terms = {}
        for exps, c in self.terms.items():
            full = [0] * n
            for i, e in zip(index, exps):
                full[i] = e
            terms[tuple(full)] = c
        return MPoly._raw(variables, terms)

    def _align(self, other: "MPoly"):
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        names = order_variables(self.variables + other.variables)
        return names, self.with_variables(names).terms, other.with_variables(names).terms

    def compact(self) -> "MPoly":
        """Drop variables that no term uses."""
        used = [i for i in range(len(self.variables)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.variables):
            return self
        names = tuple(self.variables[i] for i in used)
        return MPoly._raw(names, {tuple(e[i] for i in used): c for e, c in self.terms.items()})

    # ring operations ----------------------------------------------------

    def __add__(self, other):
        other = MPoly.coerce(other)
        names, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly._raw(names, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-MPoly.coerce(other))

    def __rsub__(self, other):
        return MPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = as_rational(other)
            if not c:
                return MPoly._raw(self.variables, {})
            return MPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})
        names, a, b = self._align(other)
        out: Dict[Exponent, Fraction] = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MPoly._raw(names, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = MPoly.const(1).with_variables(self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = MPoly.const(other)
            except (TypeError, PreconditionError):
                return NotImplemented
        a, b = self.compact(), other.compact()
        return a.variables == b.variables and a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            c = self.compact()
            self._hash = hash((c.variables, frozenset(c.terms.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # structure ----------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.variables.index(v) for v in names if v in self.variables]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def is_homogeneous_in(self, names: Iterable[str], degree: int) -> bool:
        idx = [self.variables.index(v) for v in names if v in self.variables]
        return all(sum(e[i] for i in idx) == degree for e in self.terms)

    def coefficient(self, var: str, power: int) -> "MPoly":
        """Coefficient of ``var**power``, a polynomial in the other variables."""
        if var not in self.variables:
            return self if power == 0 else MPoly.zero()
        i = self.variables.index(var)
        names = self.variables[:i] + self.variables[i + 1:]
        out = {e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == power}
        return MPoly._raw(names, out)

    def monomial_coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        """Rational coefficient of an explicit monomial such as {'u0': 4}."""
        if set(monomial) - set(self.variables) and any(monomial.values()):
            return Fraction(0)
        key = tuple(monomial.get(v, 0) for v in self.variables)
        return self.terms.get(key, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    # calculus and substitution ------------------------------------------

    def diff(self, var: str) -> "MPoly":
        if var not in self.variables:
            return MPoly._raw(self.variables, {})
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MPoly._raw(self.variables, out)

    def scale_variables(self, factors: Mapping[str, object]) -> "MPoly":
        """Substitute ``v -> factor*v`` for each given variable."""
        idx = [(self.variables.index(v), Fraction(f)) for v, f in factors.items() if v in self.variables]
        out = {}
        for e, c in self.terms.items():
            for i, f in idx:
                c = c * f ** e[i]
            if c:
                out[e] = c
        return MPoly._raw(self.variables, out)

    def substitute(self, values: Mapping[str, object]) -> "MPoly":
        """Replace variables by rationals or polynomials; returns an MPoly."""
        values = {v: x for v, x in values.items() if v in self.variables}
        if not values:
            return self
        keep = [i for i, v in enumerate(self.variables) if v not in values]
        kept_names = tuple(self.variables[i] for i in keep)
        subs = [(self.variables.index(v), MPoly.coerce(x)) for v, x in values.items()]
        scalar = all(p.total_degree() <= 0 for _, p in subs)
        powers: Dict[Tuple[int, int], MPoly] = {}

        def power(i, p, k):
            key = (i, k)
            if key not in powers:
                powers[key] = p ** k
            return powers[key]

        if scalar:
            consts = [(i, p.constant_term()) for i, p in subs]
            out: Dict[Exponent, Fraction] = {}
            for e, c in self.terms.items():
                for i, x in consts:
                    c = c * x ** e[i]
                if c:
                    key = tuple(e[i] for i in keep)
                    out[key] = out.get(key, 0) + c
            return MPoly._raw(kept_names, {e: c for e, c in out.items() if c})
        result = MPoly.zero()
        for e, c in self.terms.items():
            mono = MPoly._raw(kept_names, {tuple(e[i] for i in keep): c})
            for i, p in subs:
                if e[i]:
                    mono = mono * power(i, p, e[i])
            result = result + mono
        return result

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a full assignment; exact for exact inputs, else numeric."""
        missing = [v for v in self.variables if v not in values]
        if missing and any(any(e[self.variables.index(v)] for e in self.terms) for v in missing):
            raise PreconditionError(f"no value given for {missing}")
        vals = [values.get(v, 0) for v in self.variables]
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(vals, e):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    # text ---------------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0/1"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            factors = [format_rational(abs(c))]
            for name, p in zip(self.variables, e):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            body = "*".join(factors)
            if k == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"MPoly({self.to_text()!r})"

    @classmethod
    def parse(cls, text: str) -> "MPoly":
        return parse_poly(text)


# parsing ----------------------------------------------------------------

# integers only: "z^2/3" must read as (z^2)/3, and "p/q" falls out of division
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PreconditionError(f"cannot parse polynomial near {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_poly(text: str) -> MPoly:
    """Parse ``+ - * ^ / ( )`` expressions over rationals and names.

    Juxtaposition multiplies (``2 z`` is ``2*z``) so hand-written matrix
    entries like ``a0+a1 z`` work.  Division is only by rational constants.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        kind, val = peek()
        sign = 1
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = term() * sign
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                rhs = term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term():
        acc = factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * factor()
            elif kind == "op" and val == "/":
                take()
                den = factor()
                if den.total_degree() > 0:
                    raise PreconditionError("division by a non-constant")
                acc = acc / den.constant_term()
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = acc * factor()
            else:
                return acc

    def factor():
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            k, n = take()
            if k != "num" or Fraction(n).denominator != 1:
                raise PreconditionError("exponent must be a non-negative integer")
            return base ** int(n)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return MPoly.const(val)
        if kind == "name":
            return MPoly.var(val)
        if kind == "op" and val == "(":
            inner = expr()
            if take() != ("op", ")"):
                raise PreconditionError("unbalanced parentheses")
            return inner
        if kind == "op" and val == "-":
            return -atom()
        raise PreconditionError(f"unexpected token {val!r}")

    if not tokens:
        raise PreconditionError("empty polynomial")
    result = expr()
    if pos != len(tokens):
        raise PreconditionError(f"trailing input in {text!r}")
    return result


def variables(*names: str):
    """Convenience: ``u0, u1 = variables('u0', 'u1')``."""
    return tuple(MPoly.var(n) for n in names)


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    """Apply ``add``, ``sub`` or ``mul``; variable sets are unioned."""
    ops = {"add": MPoly.__add__, "sub": MPoly.__sub__, "mul": MPoly.__mul__}
    if op not in ops:
        raise PreconditionError(f"unknown operation {op!r}")
    return ops[op](MPoly.coerce(a), MPoly.coerce(b))


def partial_derivative(p: MPoly, var: str) -> MPoly:
    if var not in p.variables and var not in _RANK:
        raise PreconditionError(f"unknown symbol {var!r}")
    return p.diff(var)


def mpoly_sum(polys: Iterable[MPoly]) -> MPoly:
    return reduce(lambda a, b: a + b, polys, MPoly.zero())

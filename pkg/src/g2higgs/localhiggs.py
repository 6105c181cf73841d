"""Local models of rank-2 Higgs fields near a zero.

A local Higgs field is a traceless 2x2 matrix ``[[a, b], [c, -a]]`` whose
entries are polynomials in a coordinate z centred at the point of interest.
Everything here is exact: coefficients are Fractions, or elements of a
quadratic extension where a square root is unavoidable.

Conventions
-----------
* The symplectic pairing of order k reads the coefficient of ``z^(k-1)`` in
  ``tr(psi1 [phi, psi2])``; the Hessian for ``alpha = z^i`` reads the
  coefficient of ``z^(k-1-i)`` in ``tr([phi, psi1][phi, psi2])``.  Factors of
  ``2 pi i`` are dropped.
* The operator X of a Hessian H is defined by ``omega(psi1, X psi2) = H(psi1, psi2)``,
  i.e. ``X = Omega^-1 H`` in a basis.
* Zero orders of the quadratic differential are reported for ``det Phi``
  (``tr Phi^2 / 2 = -det Phi`` for traceless matrices; orders agree).
* A Hecke point ``(u : v)`` names the line in the fibre killed by the
  covector ``alpha = (v, -u)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactmath import PreconditionError, QuadraticNumber, format_scalar, parse_poly
from .exactmath import linalg as la

Coeffs = Tuple[object, ...]

ZERO = Fraction(0)


def _trim(p: Sequence) -> Tuple:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def _coeff(p: Sequence, k: int):
    return p[k] if 0 <= k < len(p) else ZERO


def _padd(p, q):
    n = max(len(p), len(q))
    return tuple(_coeff(p, i) + _coeff(q, i) for i in range(n))


def _psub(p, q):
    n = max(len(p), len(q))
    return tuple(_coeff(p, i) - _coeff(q, i) for i in range(n))


def _pscale(p, c):
    return tuple(c * x for x in p)


def _pmul(p, q, limit: Optional[int] = None):
    """Product of coefficient lists, keeping degrees < limit when given."""
    if not p or not q:
        return ()
    n = len(p) + len(q) - 1
    if limit is not None:
        n = min(n, limit)
    out = [ZERO] * max(n, 0)
    for i, x in enumerate(p):
        if i >= n or not x:
            continue
        for j, y in enumerate(q):
            if i + j >= n:
                break
            if y:
                out[i + j] = out[i + j] + x * y
    return tuple(out)


def _shift(p, k: int):
    """Multiply by z^k (k may be negative when the low coefficients vanish)."""
    if k >= 0:
        return (ZERO,) * k + tuple(p)
    if any(_coeff(p, i) for i in range(-k)):
        raise ValueError("polynomial not divisible by the requested power of z")
    return tuple(p[-k:])


def _order(p) -> Optional[int]:
    return next((i for i, x in enumerate(p) if x), None)


@dataclass(frozen=True)
class MatPoly2:
    """Traceless ``[[a, b], [c, -a]]`` with polynomial entries of degree <= ``trunc``."""

    a: Coeffs
    b: Coeffs
    c: Coeffs
    trunc: int

    def __init__(self, a: Sequence = (), b: Sequence = (), c: Sequence = (), trunc: Optional[int] = None):
        a, b, c = (tuple(_as_scalar(x) for x in p) for p in (a, b, c))
        n = max(len(a), len(b), len(c), 2) - 1 if trunc is None else trunc
        if n < 1:
            raise PreconditionError("truncation degree must be at least 1")
        pad = lambda p: tuple(p[: n + 1]) + (ZERO,) * (n + 1 - min(len(p), n + 1))
        object.__setattr__(self, "a", pad(a))
        object.__setattr__(self, "b", pad(b))
        object.__setattr__(self, "c", pad(c))
        object.__setattr__(self, "trunc", n)

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, a, b, c, trunc: int = 1) -> "MatPoly2":
        return cls((a,), (b,), (c,), trunc)

    @classmethod
    def parse(cls, text: str, trunc: Optional[int] = None) -> "MatPoly2":
        """Read ``[[p11, p12], [p21, p22]]`` with entries polynomial in z; requires p22 = -p11."""
        rows = _split_matrix(text)
        polys = [[parse_poly(e) for e in row] for row in rows]
        for row in polys:
            for p in row:
                extra = set(p.compact().variables) - {"z"}
                if extra:
                    raise PreconditionError(f"matrix entries may only use z, found {sorted(extra)}")
        (p11, p12), (p21, p22) = polys
        if p11 + p22 != 0:
            raise PreconditionError("matrix is not traceless")
        coeffs = lambda p: [p.coefficient("z", k).constant_term() for k in range(max(p.degree("z"), 0) + 1)]
        return cls(coeffs(p11), coeffs(p12), coeffs(p21), trunc)

    # structure ----------------------------------------------------------

    def entries(self) -> Tuple[Coeffs, Coeffs, Coeffs]:
        return self.a, self.b, self.c

    # equal as matrices of polynomials; the truncation degree is bookkeeping
    def __eq__(self, other):
        if not isinstance(other, MatPoly2):
            return NotImplemented
        return all(_trim(p) == _trim(q) for p, q in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(tuple(_trim(p) for p in self.entries()))

    def at_zero(self) -> Tuple[object, object, object]:
        return self.a[0], self.b[0], self.c[0]

    def is_zero(self) -> bool:
        return not any(x for p in self.entries() for x in p)

    def order(self) -> Optional[int]:
        orders = [o for o in (_order(p) for p in self.entries()) if o is not None]
        return min(orders) if orders else None

    def shift(self, k: int) -> "MatPoly2":
        """Multiply by z^k; negative k divides (exactly) and lowers the truncation."""
        return MatPoly2(*(_shift(p, k) for p in self.entries()), trunc=max(self.trunc + k, 1))

    def truncate(self, n: int) -> "MatPoly2":
        return MatPoly2(*(p[: n + 1] for p in self.entries()), trunc=n)

    def __add__(self, other: "MatPoly2") -> "MatPoly2":
        n = max(self.trunc, other.trunc)
        return MatPoly2(*(_padd(p, q) for p, q in zip(self.entries(), other.entries())), trunc=n)

    def __sub__(self, other: "MatPoly2") -> "MatPoly2":
        n = max(self.trunc, other.trunc)
        return MatPoly2(*(_psub(p, q) for p, q in zip(self.entries(), other.entries())), trunc=n)

    def __neg__(self) -> "MatPoly2":
        return MatPoly2(*(_pscale(p, -1) for p in self.entries()), trunc=self.trunc)

    def scale(self, c) -> "MatPoly2":
        return MatPoly2(*(_pscale(p, c) for p in self.entries()), trunc=self.trunc)

    def times_poly(self, f: Sequence, limit: Optional[int] = None) -> "MatPoly2":
        n = self.trunc if limit is None else limit - 1
        return MatPoly2(*(_pmul(p, tuple(f), n + 1) for p in self.entries()), trunc=n)

    def conjugate(self, g) -> "MatPoly2":
        """``g M g^-1`` for a constant 2x2 matrix ``g`` with det 1."""
        (g11, g12), (g21, g22) = g
        inv = ((g22, -g12), (-g21, g11))
        a, b, c = self.entries()
        n = self.trunc + 1
        out = []
        for k in range(n):
            m = ((a[k], b[k]), (c[k], -a[k]))
            gm = [[g11 * m[0][j] + g12 * m[1][j] for j in range(2)], [g21 * m[0][j] + g22 * m[1][j] for j in range(2)]]
            r = [[gm[i][0] * inv[0][j] + gm[i][1] * inv[1][j] for j in range(2)] for i in range(2)]
            out.append((r[0][0], r[0][1], r[1][0]))
        return MatPoly2(*zip(*out), trunc=self.trunc)

    def det(self) -> Coeffs:
        """det = -(a^2 + b c), full product (degree up to 2*trunc)."""
        return _psub(_pscale(_pmul(self.a, self.a), -1), _pmul(self.b, self.c))

    def trace_square(self) -> Coeffs:
        """tr(M^2) = 2(a^2 + b c), full product."""
        return _trim(trace_form(self, self))

    def to_text(self) -> str:
        fmt = lambda p: poly_text(p)
        return f"[[{fmt(self.a)}, {fmt(self.b)}], [{fmt(self.c)}, {fmt(_pscale(self.a, -1))}]]"

    __str__ = to_text


def _as_scalar(x):
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"unsupported coefficient {x!r}")


def poly_text(p: Sequence) -> str:
    """Coefficient tuple as text in z, lowest degree first: ``1/1 - 2/1*z^2``."""
    out = ""
    for k, x in enumerate(p):
        if not x:
            continue
        if isinstance(x, QuadraticNumber):
            sign, coeff = "+", f"({x})"
        else:
            sign, coeff = ("-" if x < 0 else "+"), format_scalar(abs(x))
        term = coeff if k == 0 else f"{coeff}*z" if k == 1 else f"{coeff}*z^{k}"
        if not out:
            out = term if sign == "+" else f"-{term}"
        else:
            out += f" {sign} {term}"
    return out or "0/1"


def _split_matrix(text: str) -> List[List[str]]:
    s = text.strip()
    if not (s.startswith("[[") and s.endswith("]]")):
        raise PreconditionError("matrix must look like [[p11, p12], [p21, p22]]")
    inner = s[1:-1]
    rows, depth, cur = [], 0, ""
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth == 1:
                cur = ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                rows.append(cur)
                continue
        if depth >= 1:
            cur += ch
    out = []
    for row in rows:
        parts, depth, cur = [], 0, ""
        for ch in row:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
            else:
                cur += ch
        parts.append(cur)
        out.append([p.strip() for p in parts])
    if len(out) != 2 or any(len(r) != 2 for r in out):
        raise PreconditionError("expected a 2x2 matrix")
    return out


# ---------------------------------------------------------------------------
# loop algebra operations


def bracket(x: MatPoly2, y: MatPoly2, limit: Optional[int] = None) -> MatPoly2:
    """[x, y] keeping degrees < limit (default: the smaller truncation + 1)."""
    if limit is None:
        limit = min(x.trunc, y.trunc) + 1
    a1, b1, c1 = x.entries()
    a2, b2, c2 = y.entries()
    a = _psub(_pmul(b1, c2, limit), _pmul(b2, c1, limit))
    b = _pscale(_psub(_pmul(a1, b2, limit), _pmul(a2, b1, limit)), 2)
    c = _pscale(_psub(_pmul(c1, a2, limit), _pmul(a1, c2, limit)), 2)
    return MatPoly2(a, b, c, trunc=max(limit - 1, 1))


def trace_form(x: MatPoly2, y: MatPoly2, limit: Optional[int] = None) -> Coeffs:
    """tr(x y) = 2 a1 a2 + b1 c2 + c1 b2 as a coefficient list."""
    a1, b1, c1 = x.entries()
    a2, b2, c2 = y.entries()
    return _padd(_padd(_pscale(_pmul(a1, a2, limit), 2), _pmul(b1, c2, limit)), _pmul(c1, b2, limit))


def symplectic_pairing(phi: MatPoly2, psi1: MatPoly2, psi2: MatPoly2, k: int = 1):
    """Coefficient of z^(k-1) in tr(psi1 [phi, psi2])."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    return _coeff(trace_form(psi1, bracket(phi, psi2, k), k), k - 1)


def hessian_residue(phi: MatPoly2, i: int, k: int, psi1: MatPoly2, psi2: MatPoly2):
    """Res_{z=0} z^i tr([phi, psi1][phi, psi2]) / z^k."""
    if not 0 <= i <= k - 1:
        raise PreconditionError("need 0 <= i <= k-1")
    return _coeff(trace_form(bracket(phi, psi1, k), bracket(phi, psi2, k), k), k - 1 - i)


def tangent_hessian_residue(phi_dot1: MatPoly2, phi_dot2: MatPoly2, i: int, k: int):
    """Res_{z=0} z^i tr(phi_dot1 phi_dot2) / z^k for tangent vectors given directly."""
    if not 0 <= i <= k - 1:
        raise PreconditionError("need 0 <= i <= k-1")
    return _coeff(trace_form(phi_dot1, phi_dot2, k), k - 1 - i)


def gauge_shift(phi_dot: MatPoly2, chi: MatPoly2, big_phi: MatPoly2) -> MatPoly2:
    """phi_dot + [chi, Phi], with no truncation loss."""
    n = chi.trunc + big_phi.trunc + 1
    return phi_dot + bracket(chi, big_phi, n)


# ---------------------------------------------------------------------------
# classification of zeros


@dataclass(frozen=True)
class ZeroClassification:
    order: int
    derivative_type: Optional[str]  # "semisimple" | "nilpotent"; None when order == 0
    det_phi_at_0: object
    det_order: Optional[int]  # vanishing order of det Phi; None if zero up to truncation
    det_known_to: int  # det Phi coefficients are exact up to this degree


def classify_zero(big_phi: MatPoly2) -> ZeroClassification:
    k = big_phi.order()
    if k is None:
        raise PreconditionError("order exceeds truncation: matrix vanishes identically")
    phi0 = tuple(p[k] for p in big_phi.entries())
    a0, b0, c0 = phi0
    det0 = -(a0 * a0 + b0 * c0)
    kind = None if k == 0 else ("semisimple" if det0 else "nilpotent")
    det = big_phi.det()
    return ZeroClassification(k, kind, det0, _order(det), 2 * big_phi.trunc)


# ---------------------------------------------------------------------------
# dimension bookkeeping


@dataclass(frozen=True)
class ZeroDataset:
    genus: int
    zeros: Tuple[Tuple[int, str], ...]

    def __init__(self, genus: int, zeros: Sequence[Tuple[int, str]]):
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "zeros", tuple((int(m), str(kind)) for m, kind in zeros))

    @classmethod
    def parse(cls, genus: int, text: str) -> "ZeroDataset":
        """``"1s,2n"``: a simple semisimple zero and a double nilpotent one."""
        zeros = []
        for item in filter(None, (x.strip() for x in text.split(","))):
            kind = {"s": "semisimple", "n": "nilpotent"}.get(item[-1])
            if kind is None or not item[:-1].isdigit():
                raise PreconditionError(f"bad zero descriptor {item!r}; use e.g. 1s or 2n")
            zeros.append((int(item[:-1]), kind))
        return cls(genus, zeros)


@dataclass(frozen=True)
class ZeroDataReport:
    degD: int
    rank: int
    dim_ker: int
    dim_critical_locus: int
    ok: bool
    violations: Tuple[str, ...] = ()


def validate_zero_data(data: ZeroDataset) -> ZeroDataReport:
    g = data.genus
    if g < 2:
        raise PreconditionError("genus must be at least 2")
    for m, kind in data.zeros:
        if m < 1:
            raise PreconditionError("zero orders must be at least 1")
        if kind not in ("semisimple", "nilpotent"):
            raise PreconditionError(f"unknown zero type {kind!r}")
    deg = sum(m for m, _ in data.zeros)
    nilpotent = sum(1 for _, kind in data.zeros if kind == "nilpotent")
    violations = []
    if deg < 1:
        violations.append("1 <= deg D")
    if deg > 2 * g - 2:
        violations.append(f"deg D <= 2g-2 = {2 * g - 2}")
    if 2 * deg + nilpotent > 4 * g - 4:
        violations.append(f"2 deg D + #nilpotent <= 4g-4 = {4 * g - 4}")
    return ZeroDataReport(
        degD=deg,
        rank=3 * g - 3 - deg,
        dim_ker=3 * g - 3 + deg,
        dim_critical_locus=6 * g - 6 - 2 * deg,
        ok=not violations,
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# nondegeneracy

_GENERATORS = (("h", (1, 0, 0)), ("e", (0, 1, 0)), ("f", (0, 0, 1)))


def _basis(k: int) -> List[Tuple[str, MatPoly2]]:
    out = []
    for j in range(k):
        for name, (a, b, c) in _GENERATORS:
            mono = [ZERO] * k
            entries = []
            for val in (a, b, c):
                p = list(mono)
                p[j] = Fraction(val)
                entries.append(p)
            label = name if j == 0 else f"z^{j}*{name}" if j > 1 else f"z*{name}"
            out.append((label, MatPoly2(*entries, trunc=max(k - 1, 1))))
    return out


def _coords(m: MatPoly2, k: int) -> List:
    return [p[j] if j < len(p) else ZERO for j in range(k) for p in m.entries()]


@dataclass
class NondegeneracyResult:
    cartan: bool
    operators: List[List[List[object]]]
    diagnostics: Dict[str, object] = field(default_factory=dict)


def nondegeneracy_check(phi: MatPoly2, k: int) -> NondegeneracyResult:
    """Hessian operators of the order-k local model on E-perp/E and the Cartan test."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if not any(phi.at_zero()):
        raise PreconditionError("degenerate local model: phi(0) = 0")
    phi = phi.truncate(max(k - 1, 1))
    basis = _basis(k)
    ad = [_coords(bracket(phi, b, k), k) for _, b in basis]
    ad_rows = [list(col) for col in zip(*ad)]  # columns are images of basis vectors
    centraliser = la.nullspace(ad_rows)
    if len(centraliser) != k:
        raise PreconditionError(f"degenerate local model: centraliser has dimension {len(centraliser)}, expected {k}")

    chosen: List[int] = []
    span = [list(v) for v in centraliser]
    for idx in range(3 * k):
        unit = [Fraction(int(j == idx)) for j in range(3 * k)]
        if la.field_rank(span + [unit]) > len(span):
            span.append(unit)
            chosen.append(idx)
    comp = [basis[i][1] for i in chosen]
    labels = [basis[i][0] for i in chosen]

    omega = [[symplectic_pairing(phi, x, y, k) for y in comp] for x in comp]
    omega_inv = la.inverse(omega)
    hessians, ops = [], []
    for i in range(k):
        h = [[hessian_residue(phi, i, k, x, y) for y in comp] for x in comp]
        hessians.append(h)
        ops.append(la.matmul(omega_inv, h))

    commuting = all(
        la.matmul(x, y) == la.matmul(y, x) for n, x in enumerate(ops) for y in ops[n + 1:]
    )
    semisimple = [la.is_semisimple(x) for x in ops]
    nilpotent = [la.is_nilpotent(x) for x in ops]
    span_dim = la.field_rank([[v for row in x for v in row] for x in ops])
    cartan = commuting and all(semisimple) and span_dim == k
    return NondegeneracyResult(
        cartan=cartan,
        operators=ops,
        diagnostics={
            "basis": labels,
            "omega": omega,
            "hessians": hessians,
            "commuting": commuting,
            "semisimple": semisimple,
            "nilpotent": nilpotent,
            "span_dim": span_dim,
        },
    )


# ---------------------------------------------------------------------------
# Hecke transforms


def _normalise_alpha(alpha) -> Tuple[object, object]:
    u, v = (_as_scalar(x) for x in alpha)
    if not u and not v:
        raise PreconditionError("alpha = (0, 0) is not a point of P^1")
    return u, v


def hecke_frame(alpha) -> Tuple[Tuple[object, object], Tuple[object, object]]:
    """A det-1 matrix whose first row is the covector (v, -u) killing the line (u : v)."""
    u, v = _normalise_alpha(alpha)
    if v:
        return ((v, -u), (ZERO, 1 / v))
    return ((v, -u), (1 / u, ZERO))


def hecke_transform(big_phi: MatPoly2, alpha) -> MatPoly2:
    """Elementary modification at z = 0 along alpha: returns [[a' z, b'], [c' z^2, -a' z]]."""
    k = big_phi.order()
    if k is None or k < 1:
        raise PreconditionError("Higgs field must vanish at the Hecke point")
    phi = big_phi.shift(-1)
    rot = phi.conjugate(hecke_frame(alpha))
    a, b, c = rot.entries()
    n = rot.trunc + 2
    return MatPoly2(_shift(a, 1), b, _shift(c, 2), trunc=n)


@dataclass(frozen=True)
class HeckeCritical:
    quadratic: Tuple[object, object, object]  # coefficients of v^2, u v, u^2
    roots: Tuple[Tuple[object, object], ...]
    field: str


def hecke_critical_alphas(phi: MatPoly2) -> HeckeCritical:
    """Zeros (u : v) of v^2 b' + 2 u v a' - u^2 c' with (a', b', c') = phi(0)."""
    a, b, c = phi.at_zero()
    delta = a * a + b * c
    if not delta:
        raise PreconditionError("double point not ordinary: (a'^2 + b'c')(0) = 0")
    quad = (b, 2 * a, -c)
    root = QuadraticNumber.sqrt(delta) if isinstance(delta, Fraction) else None
    if root is None:
        raise PreconditionError("phi(0) must have rational entries")
    if b:
        roots = tuple((Fraction(1), (-a + sgn * root) / b) for sgn in (1, -1))
    else:
        roots = ((ZERO, Fraction(1)), (2 * a, c))
    roots = tuple(normalise_projective(r) for r in roots)
    if isinstance(root, QuadraticNumber):
        field_name = "Q(i)" if root.d == -1 else f"Q(sqrt({root.d}))"
    else:
        field_name = "Q"
    return HeckeCritical(quad, roots, field_name)


def normalise_projective(pair) -> Tuple[object, object]:
    """Scale (u, v) to (1, v/u), or (0, 1) when u = 0."""
    u, v = _normalise_alpha(pair)
    if u:
        return Fraction(1), v / u
    return ZERO, Fraction(1)


def hecke_quadratic_value(phi: MatPoly2, alpha):
    u, v = _normalise_alpha(alpha)
    a, b, c = phi.at_zero()
    return v * v * b + 2 * u * v * a - u * u * c

"""Exact and floating-point linear algebra on small matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

import numpy as np

from . import univariate as up


@dataclass(frozen=True)
class RatMatrix:
    """Rectangular matrix of exact entries (Fractions or MPoly)."""

    entries: Tuple[Tuple[object, ...], ...]

    def __init__(self, rows: Sequence[Sequence[object]]):
        rows = tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("rows have different lengths")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.entries)) if self.entries else [])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        return RatMatrix([[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self.entries])

    def rank(self) -> int:
        return exact_rank(self)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    def tolist(self) -> List[List[object]]:
        return [list(r) for r in self.entries]


def transpose(m: RatMatrix) -> RatMatrix:
    return m.transpose()


def _integer_rows(rows) -> List[List[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def exact_rank(m: RatMatrix | Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on integer rows."""
    rows = m.entries if isinstance(m, RatMatrix) else m
    a = _integer_rows(rows)
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                a[i][j] = (p * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def numeric_rank(m, tol: float = 1e-8) -> int:
    """Count singular values above ``tol * largest``; for floating/complex paths only."""
    arr = np.asarray(m, dtype=complex)
    if arr.size == 0:
        return 0
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


# Field linear algebra over generic exact scalars (Fraction, QuadraticNumber).


def rref(rows: Sequence[Sequence]) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form and pivot columns, exact over any field."""
    a = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c] if not isinstance(a[r][c], int) else Fraction(1, a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> List[List]:
    """Basis of {v : A v = 0}, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols or 0)] for j in range(ncols or 0)]
    n = len(rows[0])
    red, pivots = rref(rows)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def field_rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def inverse(rows: Sequence[Sequence]) -> List[List]:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List]:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def charpoly(rows: Sequence[Sequence]) -> List:
    """Characteristic polynomial det(xI - A), lowest degree first (Faddeev-LeVerrier)."""
    n = len(rows)
    a = [list(r) for r in rows]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = matmul(a, m)
        m = [[am[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
    return coeffs


def poly_at_matrix(p: Sequence, rows: Sequence[Sequence]) -> List[List]:
    n = len(rows)
    result = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(list(p)):
        result = matmul(result, rows)
        for i in range(n):
            result[i][i] = result[i][i] + c
    return result


def is_semisimple(rows: Sequence[Sequence]) -> bool:
    """Diagonalisable over the algebraic closure: squarefree part of charpoly kills A.

    Requires rational entries (the squarefree part is computed over Q).
    """
    sqf = up.squarefree_part(charpoly(rows))
    return all(not x for row in poly_at_matrix(sqf, rows) for x in row)


def is_nilpotent(rows: Sequence[Sequence]) -> bool:
    n = len(rows)
    return all(not c for c in charpoly(rows)[:n])

"""Dense exact linear algebra over Q, sized for the small systems used here."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(rows[0])
    red, piv = rref(rows)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def row_basis(rows: Sequence[Sequence]) -> Matrix:
    return rref(rows)[0] if rows else []


def in_span(v: Sequence, rows: Sequence[Sequence]) -> bool:
    if not rows:
        return all(x == 0 for x in v)
    return rank(list(rows) + [list(v)]) == rank(rows)


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of ``A x = b`` or ``None`` when inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[-1]
    return x


def complete_basis(rows: Sequence[Sequence], n: int) -> Matrix:
    """Extend independent ``rows`` to a basis of Q^n with standard vectors."""
    out = [list(map(Fraction, r)) for r in rows]
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        if not in_span(e, out):
            out.append(e)
        if len(out) == n:
            break
    return out

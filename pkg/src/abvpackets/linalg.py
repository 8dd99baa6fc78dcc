"""Exact integer matrices as tuples of row tuples.

Only what the K-theory layer needs: products, transposes, Kronecker
products, exact inverses and ranks.  No floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def zeros(n: int, m: int) -> Matrix:
    return tuple((0,) * m for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return zeros(ncols or 0, 0)
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2 and not (k == 0 and k2 == 0):
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    bt = transpose(b) if b else ()
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a) if m else zeros(n, 0)


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError("length mismatch")
    return sum(x * y for x, y in zip(u, v))


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product with the first factor's index most significant."""
    return tuple(tuple(x * y for x in ra for y in rb) for ra in a for rb in b)


def permute(a: Matrix, perm: Sequence[int]) -> Matrix:
    """Reindex rows and columns: entry (i, j) of the result is a[perm[i]][perm[j]]."""
    return tuple(tuple(a[p][q] for q in perm) for p in perm)


def is_unitriangular(a: Matrix, lower: bool) -> bool:
    n = len(a)
    for i in range(n):
        for j in range(n):
            if i == j and a[i][j] != 1:
                return False
            if (j > i if lower else j < i) and a[i][j] != 0:
                return False
    return True


def _unitriangular_inverse(a: Matrix, lower: bool) -> Matrix:
    # integer back substitution, column by column
    n = len(a)
    if lower:
        return transpose(_unitriangular_inverse(transpose(a), False))
    inv = [[0] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = 1
        for i in range(j - 1, -1, -1):
            inv[i][j] = -sum(a[i][k] * inv[k][j] for k in range(i + 1, j + 1) if a[i][k])
    return as_matrix(inv)


def inverse(a: Matrix) -> Matrix:
    """Exact inverse; raises ValueError if singular or not integral."""
    for lower in (False, True):
        if is_unitriangular(a, lower):
            return _unitriangular_inverse(a, lower)
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = []
    for row in m:
        vals = row[n:]
        if any(x.denominator != 1 for x in vals):
            raise ValueError("inverse is not integral")
        out.append(tuple(int(x) for x in vals))
    return tuple(out)


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [p * x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def nullity(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return ncols - rank(rows)

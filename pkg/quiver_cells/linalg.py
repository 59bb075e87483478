"""Exact integer linear algebra.

Integer kernels and saturated lattice bases come from unimodular column
reduction driven by the extended gcd; invariant factors and rational inverses
come from sympy. Vectors are tuples of Python ints, matrices lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as _invariant_factors

Vector = Tuple[int, ...]
IntMatrix = List[List[int]]


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def content(v: Sequence[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for entry in v:
        g = gcd(g, entry)
    return g


def primitive(v: Sequence[int]) -> Vector:
    g = content(v)
    if g == 0:
        return tuple(v)
    return tuple(entry // g for entry in v)


def sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale(k: int, v: Sequence[int]) -> Vector:
    return tuple(k * a for a in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """Z-basis of ``{x in Z^ncols : rows @ x == 0}``.

    Column operations with determinant 1 bring ``rows`` into column echelon
    form while the same operations are applied to an identity matrix ``T``;
    the columns of ``T`` beyond the last pivot span the kernel.
    """
    a = [list(r) for r in rows]
    t = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def combine(mat: IntMatrix, p: int, j: int, x: int, y: int, u: int, v: int) -> None:
        # col_p <- x*col_p + y*col_j ; col_j <- u*col_p + v*col_j
        for row in mat:
            cp, cj = row[p], row[j]
            row[p] = x * cp + y * cj
            row[j] = u * cp + v * cj

    pivot = 0
    for i in range(len(a)):
        if pivot == ncols:
            break
        for j in range(pivot + 1, ncols):
            b = a[i][j]
            if b == 0:
                continue
            g, x, y = extended_gcd(a[i][pivot], b)
            u, v = -b // g, a[i][pivot] // g
            combine(a, pivot, j, x, y, u, v)
            combine(t, pivot, j, x, y, u, v)
        if a[i][pivot] != 0:
            pivot += 1
    return [tuple(t[r][c] for r in range(ncols)) for c in range(pivot, ncols)]


def saturated_basis(vectors: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """Z-basis of ``span_Q(vectors) ∩ Z^ncols``."""
    if not vectors:
        return []
    kernel = integer_kernel(vectors, ncols)
    if not kernel:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    return integer_kernel(kernel, ncols)


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                row = [p * m[i][k] - f * m[r][k] for k in range(ncols)]
                g = content(row)
                m[i] = [entry // g for entry in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull (-1 for no points)."""
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]])


def left_inverse(columns: Sequence[Vector]) -> List[List[Fraction]]:
    """Exact left inverse of the matrix whose columns are ``columns``.

    The columns must be linearly independent.
    """
    b = Matrix(columns).T
    inverse = (b.T * b).inv() * b.T
    return [
        [Fraction(int(entry.p), int(entry.q)) for entry in inverse.row(i)]
        for i in range(inverse.rows)
    ]


def apply_integral(matrix: Sequence[Sequence[Fraction]], v: Sequence[int]) -> Optional[Vector]:
    """``matrix @ v`` if every entry is an integer, else None."""
    out = []
    for row in matrix:
        value = sum((c * x for c, x in zip(row, v)), Fraction(0))
        if value.denominator != 1:
            return None
        out.append(value.numerator)
    return tuple(out)


def invariant_factors(rows: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Smith invariant factors (sympy)."""
    if not rows:
        return ()
    return tuple(abs(int(f)) for f in _invariant_factors(Matrix(rows)))


def is_unimodular_basis(rows: Sequence[Sequence[int]]) -> bool:
    """True if ``rows`` is a square integer matrix with invariant factors all 1."""
    n = len(rows)
    if n == 0:
        return True
    if any(len(r) != n for r in rows):
        return False
    factors = invariant_factors(rows)
    return len(factors) == n and all(f == 1 for f in factors)


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Optional[List[List[Fraction]]]:
    """Solve ``X @ a == b`` for square invertible ``a`` (rows x cols), exactly."""
    ma = Matrix(a)
    if ma.det() == 0:
        return None
    x = Matrix(b) * ma.inv()
    return [[Fraction(int(e.p), int(e.q)) for e in x.row(i)] for i in range(x.rows)]

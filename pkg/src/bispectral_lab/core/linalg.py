"""Exact linear algebra over Q for the small dense systems in this package:
Pluecker minors, intertwiner solves, membership witnesses."""

from __future__ import annotations

from fractions import Fraction

Q = Fraction


def det(matrix):
    """Determinant by fraction-preserving Gaussian elimination."""
    n = len(matrix)
    if n == 0:
        return Q(1)
    m = [row[:] for row in matrix]
    sign = 1
    acc = Q(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Q(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        acc *= p
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            f = m[r][col] / p
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return acc if sign > 0 else -acc


def rref(matrix):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [[Q(x) if not isinstance(x, Fraction) else x for x in row] for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for rr in range(r, nrows):
            if m[rr][c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for rr in range(nrows):
            if rr != r and m[rr][c] != 0:
                f = m[rr][c]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(matrix):
    if not matrix:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix, ncols=None):
    """Basis of the right nullspace of the matrix (rows are equations)."""
    if not matrix:
        return [[Q(1) if i == j else Q(0) for i in range(ncols)] for j in range(ncols or 0)]
    ncols = len(matrix[0]) if ncols is None else ncols
    m, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Q(0)] * ncols
        v[fc] = Q(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """One exact solution of matrix * x = rhs, or None if inconsistent."""
    if not matrix:
        return []
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0])
    m, pivots = rref(aug)
    if ncols in pivots:
        return None  # pivot in the augmented column
    x = [Q(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x

"""Exact linear algebra over Fraction or Cyclotomic entries.

Plain list-of-lists matrices and Gaussian elimination with deterministic
pivoting (first nonzero in column order).  The same code path serves both
scalar types; entries only need +, -, *, /, bool and an ``inv``-compatible
division.
"""

from __future__ import annotations

from fractions import Fraction

from .backend import kernels


def mat_copy(m):
    return [list(r) for r in m]


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def rref(m):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = mat_copy(m)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c] if isinstance(m[r][c], Fraction) else m[r][c].inv()
        m[r] = kernels.vec_scale(m[r], inv)
        for i in range(rows):
            if i != r and m[i][c]:
                m[i] = kernels.vec_axpy(m[i], m[r], m[i][c])
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m, ncols=None, one=Fraction(1), zero=Fraction(0)):
    """Basis of the right kernel, one vector per free column (RREF-style)."""
    if not m:
        n = ncols or 0
        return [[one if i == j else zero for j in range(n)] for i in range(n)]
    red, pivots = rref(m)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * n
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(m, rhs):
    """One solution of m x = rhs, or None when inconsistent.

    ``rhs`` may be a vector or a list of columns (matrix); the return mirrors
    the input shape.
    """
    single = rhs and not isinstance(rhs[0], list)
    cols = [rhs] if single else [list(c) for c in zip(*rhs)] if rhs else []
    if single:
        cols = [list(rhs)]
    n = len(m[0]) if m else 0
    aug = [list(row) + [col[i] for col in cols] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    # consistency: no pivot in the augmented part
    for p in pivots:
        if p >= n:
            return None
    sols = []
    for k in range(len(cols)):
        zero = cols[k][0] - cols[k][0] if cols[k] else Fraction(0)
        x = [zero] * n
        for r, pc in enumerate(pivots):
            x[pc] = red[r][n + k]
        sols.append(x)
    if single:
        return sols[0]
    return [list(row) for row in zip(*sols)] if sols else []


def det(m):
    """Exact determinant by fraction-free-ish elimination (small matrices)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    m = mat_copy(m)
    sign = 1
    acc = None
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return m[0][0] - m[0][0]
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        acc = piv if acc is None else acc * piv
        inv = 1 / piv if isinstance(piv, Fraction) else piv.inv()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = kernels.vec_axpy(m[i], m[c], f)
    return acc if sign > 0 else -acc


def matmul(a, b):
    bt = list(zip(*b))
    return [[kernels.dot(row, col) for col in bt] for row in a]


def matvec(a, v):
    return [kernels.dot(row, v) for row in a]


def span_contains(basis_rows, v) -> bool:
    """Is v in the row span of basis_rows?"""
    if not basis_rows:
        return not any(v)
    return rank(basis_rows) == rank(basis_rows + [v])


def span_equal(rows_a, rows_b) -> bool:
    """Do two row lists span the same subspace?  (Canonical RREF compare.)"""
    a = [r for r in rows_a if any(r)]
    b = [r for r in rows_b if any(r)]
    if not a or not b:
        return not a and not b
    ra, _ = rref(a)
    rb, _ = rref(b)
    ra = [r for r in ra if any(r)]
    rb = [r for r in rb if any(r)]
    return ra == rb


def intersect_spans(rows_a, rows_b):
    """Row-space intersection: vectors expressible in both spans."""
    if not rows_a or not rows_b:
        return []
    n = len(rows_a[0])
    # [A^T | -B^T] kernel -> combinations of A rows equal to B combinations
    m = [[rows_a[j][i] for j in range(len(rows_a))]
         + [-rows_b[j][i] for j in range(len(rows_b))] for i in range(n)]
    out = []
    for v in nullspace(m):
        vec = [sum((v[j] * rows_a[j][i] for j in range(len(rows_a))),
                   rows_a[0][i] - rows_a[0][i]) for i in range(n)]
        if any(vec):
            out.append(vec)
    return out

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled coefficient kernels (twin of ``_fallback``).

Same signatures and results as the pure versions.  When every entry is a
Fraction the work is done fraction-free: scale to a common denominator,
run integer loops, normalize once per output entry.  Mixed or non-Fraction
entries (cyclotomic coefficients inside elimination) fall back to generic
object arithmetic, still with compiled loop shells.
"""

from fractions import Fraction

IMPL = "cython"

cdef object _F = Fraction


cdef inline bint _all_fractions(seq):
    for v in seq:
        if type(v) is not _F:
            return False
    return True


cdef _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


cdef _common_denominator(seq, list nums):
    """Fill nums with numerators over the returned common denominator."""
    cdef Py_ssize_t i, n = len(seq)
    den = 1
    for v in seq:
        d = v.denominator
        if d != 1:
            den = den // _gcd(den, d) * d
    for i in range(n):
        v = seq[i]
        nums.append(v.numerator * (den // v.denominator))
    return den


def vec_add(a, b):
    cdef Py_ssize_t i, n = len(a)
    out = [None] * n
    for i in range(n):
        out[i] = a[i] + b[i]
    return out


def vec_sub(a, b):
    cdef Py_ssize_t i, n = len(a)
    out = [None] * n
    for i in range(n):
        out[i] = a[i] - b[i]
    return out


def vec_scale(a, c):
    cdef Py_ssize_t i, n = len(a)
    cdef list na = []
    if type(c) is _F and _all_fractions(a):
        da = _common_denominator(a, na)
        cn, cd = c.numerator, c.denominator
        return [_F(v * cn, da * cd) for v in na]
    out = [None] * n
    for i in range(n):
        out[i] = a[i] * c
    return out


def vec_axpy(y, x, c):
    """y - c*x entrywise."""
    cdef Py_ssize_t i, n = len(y)
    cdef list ny = [], nx = []
    if n >= 6 and type(c) is _F and _all_fractions(y) and _all_fractions(x):
        dy = _common_denominator(y, ny)
        dx = _common_denominator(x, nx)
        cn, cd = c.numerator, c.denominator
        # y_i - c x_i = (y_n[i] * dx * cd - cn * x_n[i] * dy) / (dy dx cd)
        den = dy * dx * cd
        sy = dx * cd
        out = [None] * n
        for i in range(n):
            out[i] = _F(ny[i] * sy - cn * nx[i] * dy, den)
        return out
    out = [None] * n
    for i in range(n):
        out[i] = y[i] - c * x[i]
    return out


def convolve(a, b):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    cdef list an = [], bn = []
    # the common-denominator pass only pays off beyond a few entries
    if na * nb >= 12 and _all_fractions(a) and _all_fractions(b):
        da = _common_denominator(a, an)
        db = _common_denominator(b, bn)
        den = da * db
        raw = [0] * (na + nb - 1)
        for i in range(na):
            ai = an[i]
            if not ai:
                continue
            for j in range(nb):
                bj = bn[j]
                if bj:
                    raw[i + j] += ai * bj
        return [_F(c, den) for c in raw]
    out = [None] * (na + nb - 1)
    for i in range(na):
        ai = a[i]
        if not ai:
            continue
        for j in range(nb):
            bj = b[j]
            if not bj:
                continue
            cur = out[i + j]
            out[i + j] = ai * bj if cur is None else cur + ai * bj
    zero = a[0] - a[0] if na else None
    for i in range(na + nb - 1):
        if out[i] is None:
            out[i] = zero
    return out


def reduce_mod(vec, Py_ssize_t deg, red_table):
    cdef Py_ssize_t i, k, n = len(vec)
    cdef list vn = []
    if n and _all_fractions(vec) and (n <= deg or _all_fractions(red_table[0])):
        dv = _common_denominator(vec, vn)
        # rows of the reduction table share a per-table denominator
        dr = 1
        rows_n = []
        for k in range(deg, n):
            row = red_table[k - deg]
            rn = []
            d = _common_denominator(row, rn)
            rows_n.append((rn, d))
            dr = dr // _gcd(dr, d) * d
        acc = [v * dr for v in vn[:deg]]
        while len(acc) < deg:
            acc.append(0)
        for k in range(deg, n):
            c = vn[k]
            if not c:
                continue
            rn, d = rows_n[k - deg]
            scale = dr // d
            for i in range(deg):
                ri = rn[i]
                if ri:
                    acc[i] += c * ri * scale
        den = dv * dr
        return [_F(c, den) for c in acc]
    out = list(vec[:deg])
    while len(out) < deg:
        out.append(vec[0] - vec[0])
    for k in range(deg, n):
        c = vec[k]
        if not c:
            continue
        row = red_table[k - deg]
        for i in range(deg):
            ri = row[i]
            if ri:
                out[i] = out[i] + c * ri
    return out


def dot(a, b):
    cdef Py_ssize_t i, n = len(a)
    cdef list an = [], bn = []
    if n and _all_fractions(a) and _all_fractions(b):
        da = _common_denominator(a, an)
        db = _common_denominator(b, bn)
        acc = 0
        for i in range(n):
            acc += an[i] * bn[i]
        return _F(acc, da * db)
    acc = a[0] * b[0]
    for i in range(1, n):
        acc = acc + a[i] * b[i]
    return acc

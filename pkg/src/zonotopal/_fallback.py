"""Pure-Python coefficient kernels.

These are the reference implementations of the hot inner loops: dense
coefficient-vector arithmetic over exact scalars (Fraction entries) used by
cyclotomic multiplication and by row operations in exact elimination.  A
compiled twin lives in ``_kernels.pyx``; ``backend`` picks whichever is
available at import time.  Both modules must stay drop-in identical.
"""

from __future__ import annotations

IMPL = "pure"


def vec_add(a, b):
    """Entrywise sum of two equal-length coefficient vectors."""
    return [x + y for x, y in zip(a, b)]


def vec_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def vec_scale(a, c):
    return [x * c for x in a]


def vec_axpy(y, x, c):
    """Return y - c*x entrywise (elimination row update)."""
    return [yi - c * xi for yi, xi in zip(y, x)]


def convolve(a, b):
    """Polynomial product of coefficient vectors (len = len(a)+len(b)-1)."""
    out = [None] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            cur = out[i + j]
            out[i + j] = ai * bj if cur is None else cur + ai * bj
    zero = a[0] - a[0] if a else None
    return [zero if c is None else c for c in out]


def reduce_mod(vec, deg, red_table):
    """Reduce a raw product vector modulo the minimal polynomial.

    ``red_table[k]`` is the length-``deg`` expansion of x^(deg+k) in the
    power basis.  Entries of ``vec`` beyond ``deg`` are folded back in.
    """
    out = list(vec[:deg])
    while len(out) < deg:
        out.append(vec[0] - vec[0])
    for k in range(deg, len(vec)):
        c = vec[k]
        if not c:
            continue
        row = red_table[k - deg]
        for i in range(deg):
            if row[i]:
                out[i] = out[i] + c * row[i]
    return out


def dot(a, b):
    """Exact dot product; vectors must be nonempty and equal length."""
    acc = a[0] * b[0]
    for i in range(1, len(a)):
        acc = acc + a[i] * b[i]
    return acc

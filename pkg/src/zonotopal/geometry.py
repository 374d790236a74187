"""Zonotopes, chambers, exact fiber-polytope volumes, and counting.

Everything is rational: volumes come from exact vertex enumeration plus a
recursive star triangulation; lattice points from bounding-box filters;
local pieces and quasipolynomials from exact interpolation at deterministic
sample points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .abelian import GList
from .errors import (DegenerateSample, InsufficientPoints, InternalError,
                     InterpolationSingular, NotPointed, SamplesRequired)
from .matroid import corank_one_flats
from .polyspace import _monomials
from .scalar import Cyclotomic, MPoly, t_vars

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# H-polytopes and Fourier-Motzkin
# ---------------------------------------------------------------------------

@dataclass
class HPolytope:
    """{y : A y <= b} with rational data; may be empty or lower-dimensional."""

    A: list
    b: list

    def contains(self, point, strict=False) -> bool:
        for row, beta in zip(self.A, self.b):
            v = sum((r * p for r, p in zip(row, point)), _F0)
            if v > beta or (strict and v == beta):
                return False
        return True

    def to_json(self):
        from .scalar import rat_str
        return {"A": [[rat_str(Fraction(v)) for v in row] for row in self.A],
                "b": [rat_str(Fraction(v)) for v in self.b]}


def fm_feasible(constraints, nvars):
    """Fourier-Motzkin feasibility for rows (coeffs, rhs, strict).

    Each row means coeffs . x <= rhs (strict: <).  Returns a feasible
    rational point or None.
    """
    rows = [([Fraction(c) for c in cs], Fraction(r), bool(s))
            for cs, r, s in constraints]
    stages = []
    for var in range(nvars - 1, -1, -1):
        pos, neg, rest = [], [], []
        for cs, r, s in rows:
            if cs[var] > 0:
                pos.append((cs, r, s))
            elif cs[var] < 0:
                neg.append((cs, r, s))
            else:
                rest.append((cs, r, s))
        stages.append((var, pos, neg))
        new_rows = list(rest)
        for (c1, r1, s1) in pos:
            for (c2, r2, s2) in neg:
                # c1[var] x <= r1 - ..., c2[var] x >= -(r2 - ...)/|c2[var]|
                scale1, scale2 = -c2[var], c1[var]
                cs = [a * scale1 + b * scale2 for a, b in zip(c1, c2)]
                cs[var] = _F0
                new_rows.append((cs, r1 * scale1 + r2 * scale2, s1 or s2))
        rows = _prune(new_rows)
    for cs, r, s in rows:
        if r < 0 or (s and r == 0):
            return None
    # back-substitute a point
    point = [_F0] * nvars
    for var, pos, neg in reversed(stages):
        lo, lo_strict = None, False
        hi, hi_strict = None, False
        for cs, r, s in pos:
            bound = (r - sum(cs[i] * point[i] for i in range(nvars)
                             if i != var)) / cs[var]
            if hi is None or bound < hi or (bound == hi and s):
                hi, hi_strict = bound, s
        for cs, r, s in neg:
            bound = (r - sum(cs[i] * point[i] for i in range(nvars)
                             if i != var)) / cs[var]
            if lo is None or bound > lo or (bound == lo and s):
                lo, lo_strict = bound, s
        if lo is None and hi is None:
            point[var] = _F0
        elif lo is None:
            point[var] = hi - 1 if hi_strict else hi
        elif hi is None:
            point[var] = lo + 1 if lo_strict else lo
        else:
            if lo > hi or (lo == hi and (lo_strict or hi_strict)):
                return None
            point[var] = (lo + hi) / 2
    return point


def _prune(rows):
    seen = {}
    for cs, r, s in rows:
        nz = next((c for c in cs if c), None)
        if nz is None:
            key = ((), )
            cur = seen.get(key)
            if cur is None or (r, not s) < (cur[1], not cur[2]):
                seen[key] = (cs, r, s)
            continue
        scale = abs(nz)
        key = tuple(c / scale for c in cs)
        cur = seen.get(key)
        if cur is None:
            seen[key] = (cs, r, s)
        else:
            # keep the tighter bound
            r0 = cur[1] / abs(next(c for c in cur[0] if c))
            r1 = r / scale
            if (r1, not s) < (r0, not cur[2]):
                seen[key] = (cs, r, s)
    return list(seen.values())


# ---------------------------------------------------------------------------
# pointedness
# ---------------------------------------------------------------------------

def is_pointed(x: GList) -> bool:
    """0 outside the convex hull of the free parts (all strictly one side)."""
    cols = [[Fraction(v) for v in e.free] for e in x.elems]
    if any(not any(c) for c in cols):
        return False
    return pointed_certificate(x) is not None


def pointed_certificate(x: GList):
    """A rational eta with eta . x_i >= 1 for every column, or None."""
    d = x.group.free_rank
    cols = [[Fraction(v) for v in e.free] for e in x.elems]
    if any(not any(c) for c in cols):
        return None
    constraints = [([-c for c in col], Fraction(-1), False) for col in cols]
    return fm_feasible(constraints, d)


def require_pointed(x: GList):
    if not is_pointed(x):
        raise NotPointed("0 lies in the convex hull of the list")


def in_cone(x: GList, u) -> bool:
    """u in cone(X)?  (Nonnegative combination feasibility.)"""
    cols = [[Fraction(v) for v in e.free] for e in x.elems]
    n, d = len(cols), x.group.free_rank
    cons = []
    for i in range(d):
        row = [cols[j][i] for j in range(n)]
        cons.append((row, Fraction(u[i]), False))
        cons.append(([-c for c in row], -Fraction(u[i]), False))
    for j in range(n):
        row = [_F0] * n
        row[j] = _F1
        cons.append(([-c for c in row], _F0, False))
    return fm_feasible(cons, n) is not None


# ---------------------------------------------------------------------------
# zonotope and lattice points
# ---------------------------------------------------------------------------

def hyperplane_normals(x: GList) -> list:
    """Primitive integer normals of the admissible hyperplanes, deduplicated.

    For d = 1 the single "hyperplane" {0} has normal (1,).
    """
    d = x.group.free_rank
    if d == 0:
        return []
    if d == 1:
        return [(1,)]
    normals = {}
    for flat in corank_one_flats(x):
        cols = [[Fraction(v) for v in x.elems[i].free] for i in flat
                if any(x.elems[i].free)]
        if not cols:
            continue
        null = linalg.nullspace(cols, ncols=d)
        assert len(null) == 1
        normals[_primitive(null[0])] = True
    return sorted(normals)


def _primitive(vec):
    """Scale a rational vector to a primitive integer tuple, first nz > 0."""
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


def zonotope_hrep(x: GList) -> HPolytope:
    """Facet description: for each admissible normal eta,
    -sum max(-eta.x, 0) <= eta.u <= sum max(eta.x, 0)."""
    x.require_full_rank()
    a_rows, b_vals = [], []
    for eta in hyperplane_normals(x):
        hi = sum(max(_dot_int(eta, e.free), 0) for e in x.elems)
        lo = -sum(max(-_dot_int(eta, e.free), 0) for e in x.elems)
        a_rows.append([Fraction(v) for v in eta])
        b_vals.append(Fraction(hi))
        a_rows.append([Fraction(-v) for v in eta])
        b_vals.append(Fraction(-lo))
    return HPolytope(a_rows, b_vals)


def _dot_int(a, b):
    return sum(x * y for x, y in zip(a, b))


def _zonotope_box(x: GList):
    d = x.group.free_rank
    lo = [sum(min(e.free[i], 0) for e in x.elems) for i in range(d)]
    hi = [sum(max(e.free[i], 0) for e in x.elems) for i in range(d)]
    return lo, hi


def lattice_points(x: GList, mode="interior", w=None) -> list:
    """Lattice points of the zonotope: interior, or shifted (Z(X)-w)."""
    hrep = zonotope_hrep(x)
    lo, hi = _zonotope_box(x)
    out = []
    shift = [Fraction(v) for v in w] if w is not None else None
    for point in itertools.product(*(range(l - 1, h + 2)
                                     for l, h in zip(lo, hi))):
        if mode == "interior":
            if hrep.contains([Fraction(p) for p in point], strict=True):
                out.append(point)
        elif mode == "shifted":
            moved = [Fraction(p) + s for p, s in zip(point, shift)]
            if hrep.contains(moved):
                out.append(point)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return sorted(out)


# ---------------------------------------------------------------------------
# exact polytope volume
# ---------------------------------------------------------------------------

def _enumerate_vertices(A, b, dim):
    """Basic feasible solutions of A y <= b (a list of vertex tuples)."""
    verts = {}
    idx = range(len(A))
    for comb in itertools.combinations(idx, dim):
        sub = [A[i] for i in comb]
        rhs = [b[i] for i in comb]
        sol = linalg.solve(sub, rhs)
        if sol is None:
            continue
        if linalg.rank(sub) < dim:
            continue
        pt = tuple(sol)
        ok = all(sum((a * p for a, p in zip(row, pt)), _F0) <= beta
                 for row, beta in zip(A, b))
        if ok:
            verts[pt] = True
    return sorted(verts)


def _affine_dim(points) -> int:
    if not points:
        return -1
    base = points[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    rows = [r for r in rows if any(r)]
    return linalg.rank(rows) if rows else 0


def _triangulate(points, A, b, tight_rows, dim):
    """Recursive star triangulation; yields dim-simplices (point tuples).

    ``points`` are the vertices of a face of {Ay<=b} of affine dimension
    ``dim``; ``tight_rows`` are the rows already tight on the face.
    """
    if dim == 0:
        yield (points[0],)
        return
    if dim == 1:
        yield (points[0], points[-1])
        return
    apex = points[0]
    seen = set()
    for i, (row, beta) in enumerate(zip(A, b)):
        if i in tight_rows:
            continue
        face = [p for p in points
                if sum((r * q for r, q in zip(row, p)), _F0) == beta]
        if apex in face:
            continue
        key = frozenset(face)
        if key in seen or len(face) < dim:
            continue
        seen.add(key)
        if _affine_dim(face) != dim - 1:
            continue
        for simplex in _triangulate(face, A, b, tight_rows | {i}, dim - 1):
            yield (apex,) + simplex


def polytope_volume(A, b, dim) -> Fraction:
    """Exact volume of {y : A y <= b} in R^dim (0 if lower-dimensional)."""
    if dim == 0:
        return _F1 if fm_feasible(
            [(row, beta, False) for row, beta in zip(A, b)], 0) is not None \
            else _F0
    verts = _enumerate_vertices(A, b, dim)
    if not verts or _affine_dim(verts) < dim:
        return _F0
    fact = math.factorial(dim)
    total = _F0
    for simplex in _triangulate(verts, A, b, frozenset(), dim):
        apex = simplex[0]
        mat = [[p[i] - apex[i] for i in range(dim)] for p in simplex[1:]]
        total += abs(linalg.det(mat)) / fact
    return total


# ---------------------------------------------------------------------------
# splines: T_X and B_X values
# ---------------------------------------------------------------------------

def _fiber_data(x: GList, u):
    """Kernel basis K, particular solution w0, and the volume scale factor.

    The fiber of X over u is {K t + w0 : K t + w0 >= 0}; the (N-d)-volume of
    its image divided by sqrt(det X X^T) equals vol(Q) * |scale| with
    scale = det(K^T K) / det[K | X^T], rational by the compatibility identity.
    """
    if x.group.invariants:
        raise ValueError("spline values require a torsion-free group")
    x.require_full_rank()
    d, n = x.group.free_rank, len(x)
    cols = [[Fraction(v) for v in e.free] for e in x.elems]
    xmat = [[cols[j][i] for j in range(n)] for i in range(d)]
    w0 = linalg.solve(xmat, [Fraction(v) for v in u])
    if w0 is None:
        return None
    kern = linalg.nullspace(xmat, ncols=n)   # rows: kernel basis vectors
    m = len(kern)                            # = n - d
    if m == 0:
        # zero-dimensional fiber: the density is 1/|det X|
        return [], w0, 1 / abs(linalg.det(xmat))
    ktk = [[sum(kern[i][k] * kern[j][k] for k in range(n))
            for j in range(m)] for i in range(m)]
    big = [[kern[i][k] for i in range(m)] + [cols[k][i] for i in range(d)]
           for k in range(n)]
    scale = linalg.det(ktk) / abs(linalg.det(big))
    return kern, w0, scale


def tx_value(x: GList, u) -> Fraction:
    """Exact multivariate spline value: normalized fiber volume over u."""
    require_pointed(x)
    data = _fiber_data(x, u)
    if data is None:
        return _F0
    kern, w0, scale = data
    n = len(x)
    m = len(kern)
    if m == 0:
        # N = d: T is 1/|det| times the indicator of cone(X)
        return scale if all(v >= 0 for v in w0) else _F0
    # fiber polytope {t : -K t <= w0}
    A = [[-kern[i][k] for i in range(m)] for k in range(n)]
    b = list(w0)
    return polytope_volume(A, b, m) * scale


def bx_value(x: GList, u) -> Fraction:
    """Exact box spline value: volume of the box-truncated fiber."""
    require_pointed(x)
    data = _fiber_data(x, u)
    if data is None:
        return _F0
    kern, w0, scale = data
    n = len(x)
    m = len(kern)
    if m == 0:
        return scale if all(0 <= v <= 1 for v in w0) else _F0
    A = [[-kern[i][k] for i in range(m)] for k in range(n)] \
        + [[kern[i][k] for i in range(m)] for k in range(n)]
    b = list(w0) + [1 - v for v in w0]
    return polytope_volume(A, b, m) * scale


def limit_value(x: GList, point, w, spline=None) -> Fraction:
    """lim towards w of a spline at an affine-singular point, exactly.

    The spline restricted to the open segment (point, point + delta*w] inside
    one alcove is a univariate polynomial of degree <= N - d; it is
    interpolated from exact values and extrapolated back to the endpoint.
    """
    spline = spline or bx_value
    d = x.group.free_rank
    deg = len(x) - d
    pt = [Fraction(v) for v in point]
    wq = [Fraction(v) for v in w]
    # first positive crossing of an affine admissible hyperplane
    t_min = None
    for eta in hyperplane_normals(x):
        s = sum(Fraction(e) * c for e, c in zip(eta, wq))
        if s == 0:
            raise ValueError("direction is not affine regular")
        c = sum(Fraction(e) * v for e, v in zip(eta, pt))
        if s > 0:
            k = math.floor(c) + 1
        else:
            k = math.ceil(c) - 1
        t = (k - c) / s
        assert t > 0
        t_min = t if t_min is None else min(t_min, t)
    delta = t_min / 2
    nodes = [delta * Fraction(k + 1, deg + 2) for k in range(deg + 1)]
    vals = [spline(x, [p + t * ww for p, ww in zip(pt, wq)]) for t in nodes]
    # Lagrange extrapolation to t = 0
    total = Fraction(0)
    for i, (ti, vi) in enumerate(zip(nodes, vals)):
        term = vi
        for j, tj in enumerate(nodes):
            if i != j:
                term *= (0 - tj) / (ti - tj)
        total += term
    return total


def bx_by_alternating_sum(x: GList, u) -> Fraction:
    """Independent cross-check: B_X(u) = sum (-1)^|A| T_X(u - sum A)."""
    n = len(x)
    total = _F0
    for size in range(n + 1):
        for comb in itertools.combinations(range(n), size):
            shift = [Fraction(v) for v in u]
            for i in comb:
                shift = [s - f for s, f in zip(shift, x.elems[i].free)]
            t = tx_value(x, shift)
            total += t if size % 2 == 0 else -t
    return total


# ---------------------------------------------------------------------------
# vector partition function
# ---------------------------------------------------------------------------

def vpf_count(x: GList, u) -> int:
    """|{w in Z^N_(>=0) : X w = u}| by bounded recursive enumeration."""
    require_pointed(x)
    eta = pointed_certificate(x)
    cols = [[Fraction(v) for v in e.free] for e in x.elems]
    weights = [sum(e * c for e, c in zip(eta, col)) for col in cols]

    def rec(idx, target):
        if idx == len(cols):
            return 1 if not any(target) else 0
        col, wgt = cols[idx], weights[idx]
        budget = sum(e * t for e, t in zip(eta, target))
        if budget < 0:
            return 0
        top = int(budget / wgt)
        total = 0
        for k in range(top + 1):
            total += rec(idx + 1, [t - k * c for t, c in zip(target, col)])
        return total

    return rec(0, [Fraction(v) for v in u])


# ---------------------------------------------------------------------------
# big cells
# ---------------------------------------------------------------------------

@dataclass
class Cell:
    """A big cell, carried by a verified interior sample point."""

    sample: tuple                 # rational interior point
    rays: tuple = ()              # primitive boundary rays (d = 2)
    hrep: HPolytope | None = None

    def to_json(self):
        from .scalar import rat_str
        return {"sample": [rat_str(Fraction(v)) for v in self.sample]}


def strongly_regular(x: GList, point) -> bool:
    """Not on any cone spanned by a corank-1 sublist: misses every
    admissible hyperplane through the origin."""
    for eta in hyperplane_normals(x):
        if sum(Fraction(e) * Fraction(p) for e, p in zip(eta, point)) == 0:
            return False
    return True


def big_cells(x: GList, samples=None) -> list:
    """Chambers of cone(X): exact enumeration for d <= 2, else verified
    caller samples."""
    require_pointed(x)
    x.require_full_rank()
    d = x.group.free_rank
    if samples is not None:
        cells = []
        for s in samples:
            pt = tuple(Fraction(v) for v in s)
            if not strongly_regular(x, pt) or not in_cone(x, pt):
                raise DegenerateSample(f"sample {s} is singular or outside")
            cells.append(Cell(sample=pt))
        return cells
    if d > 2:
        raise SamplesRequired("automatic chamber enumeration is d <= 2 only")
    if d == 1:
        sign = 1 if x.elems[0].free[0] > 0 else -1
        ray = (Fraction(sign),)
        return [Cell(sample=ray, rays=((sign,),),
                     hrep=HPolytope([[Fraction(-sign)]], [_F0]))]
    rays = _cone_rays(x)
    cells = []
    for r1, r2 in zip(rays, rays[1:]):
        mid = tuple(Fraction(a + b) for a, b in zip(r1, r2))
        assert strongly_regular(x, mid)
        # interior of cone(r1, r2): eta1 . y > 0 and eta2 . y > 0
        eta1 = (Fraction(-r1[1]), Fraction(r1[0]))
        if sum(a * b for a, b in zip(eta1, r2)) < 0:
            eta1 = tuple(-v for v in eta1)
        eta2 = (Fraction(-r2[1]), Fraction(r2[0]))
        if sum(a * b for a, b in zip(eta2, r1)) < 0:
            eta2 = tuple(-v for v in eta2)
        hrep = HPolytope([[-v for v in eta1], [-v for v in eta2]], [_F0, _F0])
        cells.append(Cell(sample=mid, rays=(r1, r2), hrep=hrep))
    return cells


def _cone_rays(x: GList) -> list:
    """Admissible rays inside cone(X), sorted by angle (d = 2)."""
    dirs = {}
    for e in x.elems:
        if any(e.free):
            v = _primitive([Fraction(c) for c in e.free])
            dirs[v] = True
            dirs[tuple(-c for c in v)] = True
    inside = [v for v in dirs if in_cone(x, v)]

    # exact angular sort: quadrant + cross product comparison
    def quadrant(v):
        if v[0] > 0 and v[1] >= 0:
            return 0
        if v[0] <= 0 and v[1] > 0:
            return 1
        if v[0] < 0 and v[1] <= 0:
            return 2
        return 3

    import functools

    def cmp(a, b):
        qa, qb = quadrant(a), quadrant(b)
        if qa != qb:
            return -1 if qa < qb else 1
        cross = a[0] * b[1] - a[1] * b[0]
        return 0 if cross == 0 else (-1 if cross > 0 else 1)

    inside.sort(key=functools.cmp_to_key(cmp))
    # rotate so consecutive rays are adjacent within the (pointed) cone:
    # find the gap of angle >= pi between consecutive rays cyclically
    k = len(inside)
    for i in range(k):
        a, b = inside[i], inside[(i + 1) % k]
        cross = a[0] * b[1] - a[1] * b[0]
        dot = a[0] * b[0] + a[1] * b[1]
        if cross < 0 or (cross == 0 and dot < 0):
            return inside[i + 1:] + inside[:i + 1]
    return inside


def short_regular(x: GList, in_cone_of=None):
    """A short affine regular w: 0 < |eta.w| < 1 for every admissible eta,
    so the segment (0, w] crosses no affine admissible hyperplane.

    With ``in_cone_of`` set, w is additionally taken inside the first big
    cell (scaled from its sample point).
    """
    d = x.group.free_rank
    normals = hyperplane_normals(x)
    if in_cone_of is not None:
        base = [Fraction(v) for v in in_cone_of]
    else:
        base = None
    for q in (7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if base is None:
            cand = [Fraction(1, q ** (i + 1)) for i in range(d)]
        else:
            denom = max(abs(v.numerator) * v.denominator for v in base) or 1
            cand = [v / (q * denom) + Fraction(1, (q * denom) ** (i + 2))
                    for i, v in enumerate(base)]
        ok = True
        for eta in normals:
            val = sum(Fraction(e) * c for e, c in zip(eta, cand))
            if val == 0 or abs(val) >= 1:
                ok = False
                break
        if ok and (base is None or in_cone(x, cand)):
            return tuple(cand)
    raise InternalError("no short regular vector found")


# ---------------------------------------------------------------------------
# local pieces and quasipolynomial fitting
# ---------------------------------------------------------------------------

def _cell_sample_points(cell: Cell, d: int, count: int, salt: int = 0):
    """Deterministic rational points strictly inside the cell."""
    if d == 1:
        s = cell.sample
        return [tuple(v * Fraction(k + 1 + salt, 3) for v in s)
                for k in range(count)]
    if cell.rays:
        r1, r2 = cell.rays[0], cell.rays[1]
        pts = []
        k = 0
        for i in itertools.count(1):
            for j in range(1, i + 1):
                a, b = Fraction(i + salt), Fraction(j) / (j + 1)
                pt = tuple(a * Fraction(u) + (a * b) * Fraction(v)
                           for u, v in zip(r1, r2))
                pts.append(pt)
                k += 1
                if k == count:
                    return pts
    # fallback: scalings of the sample plus small perturbations
    s = cell.sample
    pts = []
    for k in range(count):
        f = Fraction(k + 1 + salt)
        pts.append(tuple(v * f + v * Fraction(k, 97) for v in s))
    return pts


def _interpolate(points, values, degree, vars):
    """The unique polynomial of total degree <= degree through the data."""
    monos = _monomials(vars, 0)
    all_monos = []
    for k in range(degree + 1):
        all_monos.extend(_monomials(vars, k))
    mat = []
    for p in points:
        row = []
        for e in all_monos:
            v = _F1
            for c, k in zip(p, e):
                v *= Fraction(c) ** k
            row.append(v)
        mat.append(row)
    sol = linalg.solve(mat, [Fraction(v) for v in values])
    if sol is None or len(points) < len(all_monos):
        raise InterpolationSingular("interpolation system not solvable")
    # uniqueness check: matrix must have full column rank
    if linalg.rank(mat) < len(all_monos):
        raise InterpolationSingular("interpolation nodes are degenerate")
    return MPoly(vars, dict(zip(all_monos, sol)))


def local_piece(x: GList, cell: Cell) -> MPoly:
    """Homogeneous degree-(N-d) polynomial agreeing with T_X on the cell."""
    d = x.group.free_rank
    deg = len(x) - d
    vars = t_vars(d)
    need = len(list(itertools.chain.from_iterable(
        _monomials(vars, k) for k in range(deg + 1))))
    for salt in range(4):
        pts = _cell_sample_points(cell, d, need, salt)
        vals = [tx_value(x, p) for p in pts]
        try:
            poly = _interpolate(pts, vals, deg, vars)
        except InterpolationSingular:
            continue
        hom = poly.homogeneous_slice(deg)
        if poly == hom or not (poly - hom):
            return hom
        # homogeneity must hold for a correct piece
        raise InternalError(f"local piece not homogeneous: {poly}")
    raise InterpolationSingular("no usable sample set found")


def quasi_fit(x: GList, cell: Cell, extra: int = 4):
    """The DM(X) member matching vpf_count on (Omega - Z(X)) cap Lambda."""
    from .periodic import dm_basis

    d = x.group.free_rank
    basis = dm_basis(x)
    need = len(basis) + extra
    pts = _quasi_region_points(x, cell, need)
    if len(pts) < len(basis):
        raise InsufficientPoints(
            f"only {len(pts)} sample points for dim {len(basis)}")
    rows = []
    rhs = []
    for p in pts:
        rows.append([b.evaluate_at(p) for b in basis])
        rhs.append(Cyclotomic.from_rational(
            vpf_count(x, p) if in_cone(x, p) else 0))
    if linalg.rank(rows) < len(basis):
        raise InsufficientPoints("sample points do not determine the fit")
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise InsufficientPoints("inconsistent fit (region too small?)")
    combo = None
    for c, b in zip(sol, basis):
        scaled = b.scale(c)
        combo = scaled if combo is None else combo + scaled
    return combo


def _quasi_region_points(x: GList, cell: Cell, count):
    """Lattice points of (Omega - Z(X)): u with (u + Z) meeting Omega."""
    d = x.group.free_rank
    zono = zonotope_hrep(x)
    lo, hi = _zonotope_box(x)
    out = []
    radius = 1
    while len(out) < count and radius <= 40:
        out = []
        for point in itertools.product(range(-radius, radius + 1), repeat=d):
            if _region_contains(x, cell, zono, point):
                out.append(point)
            if len(out) >= count:
                break
        radius *= 2
    return out[:count]


def _region_contains(x, cell, zono, u) -> bool:
    """(u + Z(X)) cap Omega nonempty (Omega open)."""
    d = len(u)
    cons = []
    for row, beta in zip(zono.A, zono.b):
        shifted = beta + sum(r * Fraction(v) for r, v in zip(row, u))
        cons.append((row, shifted, False))
    if cell.hrep is not None:
        for row, beta in zip(cell.hrep.A, cell.hrep.b):
            cons.append((row, beta, True))
    else:
        return zono.contains([Fraction(cell.sample[i]) - u[i]
                              for i in range(d)])
    return fm_feasible(cons, d) is not None

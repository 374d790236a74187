"""Operator application and the headline counting identities.

Directional limits are implemented by interpolating a fresh alcove-local
polynomial from exact spline values next to the evaluation point; counts are
asserted to be rational integers after cyclotomic cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .abelian import GElement, GList
from .errors import (InternalError, NonIntegerResult, NotInCone,
                     NotUnimodular, RankDeficient)
from .geometry import (Cell, big_cells, bx_value, hyperplane_normals,
                       in_cone, lattice_points, local_piece,
                       pointed_certificate, require_pointed, short_regular,
                       zonotope_hrep)
from .matroid import is_unimodular
from .periodic import PeriodicPoly, f_tilde
from .polyspace import _monomials
from .scalar import Cyclotomic, MPoly, ZLaurent, s_vars, t_vars
from .toric import evaluate, vertices

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# operator application
# ---------------------------------------------------------------------------

def apply_periodic(p: PeriodicPoly, f: MPoly, point) -> Cyclotomic:
    """(sum_phi e_phi q_phi)(D) f evaluated at a lattice point."""
    total = Cyclotomic.zero()
    pt = [Fraction(v) for v in point]
    for char, q in p.terms:
        angle = Fraction(0)
        for t, v in zip(char.theta, point):
            angle += t * v
        root = Cyclotomic.from_angle(angle)
        g = q.apply_diff(f)
        total = total + root * g.evaluate(pt)
    return total


def cell_toward(cells, u, w):
    """The big cell containing u + eps*w for all small eps > 0 (exact)."""
    uq = [Fraction(v) for v in u]
    wq = [Fraction(v) for v in w]
    for cell in cells:
        if cell.hrep is None:
            continue
        ok = True
        for row, beta in zip(cell.hrep.A, cell.hrep.b):
            a_u = sum(r * v for r, v in zip(row, uq)) - beta
            a_w = sum(r * v for r, v in zip(row, wq))
            # need a.(u + eps w) < beta: first nonzero of (a_u, a_w) negative
            if a_u > 0 or (a_u == 0 and a_w >= 0):
                ok = False
                break
        if ok:
            return cell
    return None


def cells_adjacent(cells, u):
    """Cells whose closure contains u."""
    uq = [Fraction(v) for v in u]
    out = []
    for cell in cells:
        if cell.hrep is not None and cell.hrep.contains(uq):
            out.append(cell)
    return out


# ---------------------------------------------------------------------------
# improved counting formula
# ---------------------------------------------------------------------------

def bv_count(x: GList, z, u, w=None, cells=None, pieces=None) -> int:
    """lim_w f_tilde_z(D_pw) T_X at u: the quasipolynomial count i^Omega(u-z).

    For z interior to the zonotope the value is checked identical over every
    cell adjacent to u (w-independence); the result must be a rational
    integer.
    """
    require_pointed(x)
    if not in_cone(x, u):
        raise NotInCone(f"{u} is outside cone(X)")
    if cells is None:
        cells = big_cells(x)
    if pieces is None:
        pieces = {id(c): local_piece(x, c) for c in cells}
    zel = z if isinstance(z, GElement) else x.group.element(tuple(z))
    ft = f_tilde(x, zel)
    interior = zonotope_hrep(x).contains(
        [Fraction(v) for v in zel.free], strict=True)
    candidates = []
    if interior:
        adj = cells_adjacent(cells, u)
        if not adj:
            raise NotInCone(f"{u} is not in the closure of any big cell")
        for cell in adj:
            candidates.append(_eval_count(ft, pieces[id(cell)], u))
        if len(set(candidates)) != 1:
            raise InternalError(
                f"w-independence fails at {u}: {sorted(set(candidates))}")
        return candidates[0]
    if w is None:
        w = short_regular(x, in_cone_of=cells[0].sample)
    cell = cell_toward(cells, u, w)
    if cell is None:
        raise NotInCone(f"no big cell towards {w} from {u}")
    return _eval_count(ft, pieces[id(cell)], u)


def _eval_count(ft: PeriodicPoly, piece: MPoly, u) -> int:
    val = apply_periodic(ft, piece, u)
    if not val.is_rational():
        raise NonIntegerResult(f"count at {u} is {val}")
    q = val.to_rational()
    if q.denominator != 1:
        raise NonIntegerResult(f"count at {u} is {q}")
    return int(q)


def partition_of_unity(x: GList) -> PeriodicPoly:
    """sum over interior zonotope lattice points of B_X(z) * f_tilde_z."""
    x.require_full_rank()
    require_pointed(x)
    total = None
    for z in lattice_points(x, "interior"):
        b = bx_value(x, z)
        term = f_tilde(x, x.group.element(z)).scale(b)
        total = term if total is None else total + term
    if total is None:
        return PeriodicPoly(s_vars(x.group.free_rank), [])
    return total


# ---------------------------------------------------------------------------
# alcove-local evaluation (directional limits of B_X derivatives)
# ---------------------------------------------------------------------------

def _alcove_polynomial(x: GList, point, w, spline=bx_value) -> MPoly:
    """Polynomial agreeing with the spline on the alcove towards w."""
    d = x.group.free_rank
    deg = len(x) - d
    normals = hyperplane_normals(x)
    # step keeping (point, point + 2 eps0 w] inside one alcove
    bound = max(abs(sum(Fraction(e) * Fraction(c) for e, c in zip(eta, w)))
                for eta in normals)
    eps0 = Fraction(1, 4 * (int(bound) + 1))
    for eta in normals:
        ew = sum(Fraction(e) * Fraction(c) for e, c in zip(eta, w))
        assert ew != 0, "w is not affine regular"
    p0 = tuple(Fraction(v) + 2 * eps0 * Fraction(c)
               for v, c in zip(point, w))
    # exact interior slack of the alcove at p0
    delta = None
    for eta in normals:
        val = sum(Fraction(e) * c for e, c in zip(eta, p0))
        frac = val - math.floor(val)
        assert frac != 0
        room = min(frac, 1 - frac) / sum(abs(e) for e in eta)
        delta = room if delta is None else min(delta, room)
    delta = delta / (deg + 2)
    monos = []
    for k in range(deg + 1):
        monos.extend(_monomials(t_vars(d), k))
    # principal-lattice nodes: p0 + delta * (i1..id), sum i <= deg
    nodes = []
    for e in monos:
        nodes.append(tuple(p + delta * k for p, k in zip(p0, e)))
    rows = []
    vals = []
    for nd in nodes:
        rows.append([_mono_eval(nd, e) for e in monos])
        vals.append(spline(x, nd))
    sol = linalg.solve(rows, vals)
    if sol is None or linalg.rank(rows) < len(monos):
        raise InternalError("alcove interpolation degenerate")
    return MPoly(t_vars(d), dict(zip(monos, sol)))


def _mono_eval(point, expo):
    v = _F1
    for p, k in zip(point, expo):
        v *= Fraction(p) ** k
    return v


def box_limit_value(x: GList, op: PeriodicPoly, point, w,
                    spline=bx_value) -> Cyclotomic:
    """lim_w op(D_pw) B_X (point."""
    poly = _alcove_polynomial(x, point, w, spline)
    return apply_periodic(op, poly, point)


# ---------------------------------------------------------------------------
# unimodular delta interpolation
# ---------------------------------------------------------------------------

def box_delta_check(x: GList, z, w=None) -> dict:
    """Evaluate lim_w f_z(D_pw) B_X over the lattice support; expect delta_z."""
    if not is_unimodular(x):
        raise NotUnimodular("box delta interpolation needs a unimodular list")
    require_pointed(x)
    if w is None:
        w = short_regular(x)
    zel = x.group.element(tuple(z))
    fz = f_tilde(x, zel)
    out = {}
    for lam in lattice_points(x, "shifted", w=[_F0] * x.group.free_rank):
        out[lam] = box_limit_value(x, fz, lam, w)
    return out


def box_interpolant(x: GList, values: dict) -> MPoly:
    """The unique internal-space polynomial hitting the requested values
    on the interior zonotope lattice points: sum values(z) * f_z."""
    if not is_unimodular(x):
        raise NotUnimodular("interpolation needs a unimodular list")
    combo = MPoly(s_vars(x.group.free_rank))
    for z in lattice_points(x, "interior"):
        c = Fraction(values.get(tuple(z), 0))
        if not c:
            continue
        fz = f_tilde(x, x.group.element(z))
        assert len(fz.terms) <= 1
        if fz.terms:
            combo = combo + fz.terms[0][1] * c
    return combo


# ---------------------------------------------------------------------------
# continuity characterization
# ---------------------------------------------------------------------------

@dataclass
class Wall:
    """A (d-1)-dimensional wall between two regions of polynomiality.

    ``outside`` pieces (beyond the cone boundary) are the zero polynomial.
    """

    normal: tuple            # primitive integer normal, positive on cell_pos
    ray: tuple               # primitive lattice direction spanning the wall
    piece_pos: MPoly
    piece_neg: MPoly
    cell_pos: Cell | None
    cell_neg: Cell | None


def walls(x: GList, cells=None, pieces=None) -> list:
    """Walls of the big-cell decomposition (d <= 2), zero region included."""
    require_pointed(x)
    d = x.group.free_rank
    if cells is None:
        cells = big_cells(x)
    if pieces is None:
        pieces = {id(c): local_piece(x, c) for c in cells}
    tv = t_vars(d)
    zero = MPoly(tv)
    out = []
    if d == 1:
        cell = cells[0]
        sign = 1 if cell.sample[0] > 0 else -1
        piece = pieces[id(cell)]
        if sign > 0:
            out.append(Wall(normal=(1,), ray=(0,), piece_pos=piece,
                            piece_neg=zero, cell_pos=cell, cell_neg=None))
        else:
            out.append(Wall(normal=(1,), ray=(0,), piece_pos=zero,
                            piece_neg=piece, cell_pos=None, cell_neg=cell))
        return out
    if d != 2:
        raise RankDeficient("automatic wall enumeration is d <= 2 only")
    # cells are angularly sorted; boundary rays flank the outside region
    pairs = [(cells[0].rays[0], None, cells[0])]
    for a, b in zip(cells, cells[1:]):
        pairs.append((b.rays[0], a, b))
    pairs.append((cells[-1].rays[1], cells[-1], None))
    for ray, ca, cb in pairs:
        eta = _primitive_frac((-Fraction(ray[1]), Fraction(ray[0])))
        side = {}
        for c in (ca, cb):
            if c is None:
                continue
            v = sum(Fraction(e) * Fraction(s)
                    for e, s in zip(eta, c.sample))
            assert v != 0
            side[1 if v > 0 else -1] = c
        pos = side.get(1)
        neg = side.get(-1)
        out.append(Wall(normal=tuple(eta),
                        ray=tuple(int(r) for r in ray),
                        piece_pos=pieces[id(pos)] if pos else zero,
                        piece_neg=pieces[id(neg)] if neg else zero,
                        cell_pos=pos, cell_neg=neg))
    return out


def _primitive_frac(vec):
    den = 1
    for v in vec:
        den = den * Fraction(v).denominator // math.gcd(
            den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return tuple(v // g for v in ints)


def continuity_check(x: GList, p: PeriodicPoly, window: int = 3,
                     wall_list=None) -> bool:
    """Does p(D)T_X extend continuously over the lattice points of every wall?"""
    require_pointed(x)
    x.require_full_rank()
    if wall_list is None:
        wall_list = walls(x)
    for wall in wall_list:
        ks = range(window + 1) if any(wall.ray) else (0,)
        for k in ks:
            lam = tuple(k * r for r in wall.ray)
            a = apply_periodic(p, wall.piece_pos, lam)
            b = apply_periodic(p, wall.piece_neg, lam)
            if a != b:
                return False
    return True


# ---------------------------------------------------------------------------
# wall crossing (Boysal-Vergne residue)
# ---------------------------------------------------------------------------

def wall_jump(x: GList, eta, v12: MPoly, out_vars=None) -> MPoly:
    """Residue form of the jump of T_X across the wall with normal eta.

    Computes res_{z=0} (V12(D_s) e^{s.t + z eta(t)} / prod_{x not in H}
    (x.s + eta(x) z))|_{s=0} exactly; eta must be oriented positively on the
    cell whose piece is the minuend.
    """
    d = x.group.free_rank
    sv = s_vars(d)
    tv = out_vars or t_vars(d)
    both = sv + tv
    etaq = [Fraction(e) for e in eta]
    off = [i for i in range(len(x))
           if sum(e * Fraction(c) for e, c in zip(etaq, x.elems[i].free)) != 0]
    m = len(off)
    r = max(v12.total_degree(), 0)
    # exp(sum s_i t_i) truncated to s-degree <= r
    st = MPoly(both)
    for i in range(d):
        e = [0] * (2 * d)
        e[i] = 1
        e[d + i] = 1
        st = st + MPoly(both, {tuple(e): Cyclotomic.one()})
    exp_st = _exp_sdeg(st, r, d)
    # exp(z * eta(t)) up to z^(m + r - 1)
    eta_t = MPoly.linear_form(both, [_F0] * d + etaq)
    zpows = ZLaurent(both, {0: MPoly.constant(both, 1)})
    acc = MPoly.constant(both, 1)
    fact = 1
    for j in range(1, m + r):
        acc = acc * eta_t
        fact *= j
        zpows = zpows + ZLaurent(both, {j: acc * Fraction(1, fact)})
    total = ZLaurent(both, {0: exp_st}) * zpows
    low = -(m + r)
    for i in off:
        xs = MPoly.linear_form(
            both, [Fraction(c) for c in x.elems[i].free] + [_F0] * d)
        ex = sum(e * Fraction(c) for e, c in zip(etaq, x.elems[i].free))
        inv = ZLaurent(both, {})
        pw = MPoly.constant(both, 1)
        for k in range(r + 1):
            inv = inv + ZLaurent(
                both, {-1 - k: pw * (Fraction((-1) ** k) / ex ** (k + 1))})
            pw = _truncate_sdeg(pw * xs, r, d)
        total = total * inv
        total = ZLaurent(both, {k: _truncate_sdeg(p, r, d)
                                for k, p in total.terms.items()
                                if k >= low})
    # apply V12 as a differential operator in the s block, then set s = 0
    result = ZLaurent(both, {})
    for k, poly in total.terms.items():
        applied = MPoly(both)
        for e, c in v12.terms.items():
            g = poly
            for i, kk in enumerate(e):
                for _ in range(kk):
                    g = g.derivative(i)
                    if not g:
                        break
            if g:
                applied = applied + g * c
        s0 = MPoly(both, {ee: cc for ee, cc in applied.terms.items()
                          if not any(ee[:d])})
        if s0:
            result = result + ZLaurent(both, {k: s0})
    res = result.residue()
    # drop the (zero) s block of the exponents
    return MPoly(tv, {e[d:]: c for e, c in res.terms.items()})


def _truncate_sdeg(p: MPoly, r: int, d: int) -> MPoly:
    return MPoly(p.vars, {e: c for e, c in p.terms.items()
                          if sum(e[:d]) <= r})


def _exp_sdeg(p: MPoly, r: int, d: int) -> MPoly:
    acc = MPoly.constant(p.vars, 1)
    pw = MPoly.constant(p.vars, 1)
    fact = 1
    for k in range(1, r + 1):
        pw = _truncate_sdeg(pw * p, r, d)
        if not pw:
            break
        fact *= k
        acc = acc + pw * Fraction(1, fact)
    return acc


def wall_v12(x: GList, wall: Wall) -> MPoly:
    """Extension of the on-wall spline piece, constant along the normal."""
    d = x.group.free_rank
    tv = t_vars(d)
    etaq = [Fraction(e) for e in wall.normal]
    on_wall = [i for i in range(len(x))
               if sum(e * Fraction(c) for e, c in
                      zip(etaq, x.elems[i].free)) == 0
               and any(x.elems[i].free)]
    if not on_wall:
        return MPoly.constant(tv, 1)
    if d != 2:
        raise RankDeficient("V12 construction implemented for d = 2")
    rho = wall.ray
    if not any(rho):
        raise ValueError("wall ray must be nonzero for d = 2")
    # 1-d coordinates along the wall: x_i = a_i * rho
    from .abelian import GList as _GL, FgGroup
    coeffs = []
    for i in on_wall:
        free = x.elems[i].free
        if rho[0]:
            a = Fraction(free[0], rho[0])
        else:
            a = Fraction(free[1], rho[1])
        assert a == int(a) and a != 0
        coeffs.append(int(a))
    sub = _GL.from_columns([[c] for c in coeffs], FgGroup(1))
    piece = local_piece(sub, big_cells(sub)[0])
    # gamma: functional with gamma(rho) = 1, gamma(eta vector) = 0
    mat = [[Fraction(rho[0]), Fraction(rho[1])],
           [Fraction(wall.normal[0]), Fraction(wall.normal[1])]]
    gamma = linalg.solve(mat, [_F1, _F0])
    image = MPoly.linear_form(tv, gamma)
    return piece.substitute(tv, [image])


def wall_jump_check(x: GList, wall: Wall):
    """Jump via the residue formula, matched against the piece difference.

    Returns (residue_jump, piece_difference, leading_ok) where leading_ok
    asserts the c_X t1^(m-1) V12 structure in rotated coordinates.
    """
    v12 = wall_v12(x, wall)
    jump = wall_jump(x, wall.normal, v12)
    diff = wall.piece_pos - wall.piece_neg
    leading_ok = _leading_structure_ok(x, wall, v12, jump)
    return jump, diff, leading_ok


def _leading_structure_ok(x: GList, wall: Wall, v12: MPoly,
                          jump: MPoly) -> bool:
    """jump = c_X u1^(m-1) V12 + u1^m h after rotating eta to coordinate u1."""
    d = x.group.free_rank
    tv = t_vars(d)
    eta = wall.normal
    etaq = [Fraction(e) for e in eta]
    off = [i for i in range(len(x))
           if sum(e * Fraction(c) for e, c in zip(etaq, x.elems[i].free)) != 0]
    m = len(off)
    prod = _F1
    for i in off:
        prod *= sum(e * Fraction(c) for e, c in zip(etaq, x.elems[i].free))
    c_x = Fraction(1, math.factorial(m - 1)) / prod
    if d == 1:
        expect = MPoly(tv, {(m - 1,): Cyclotomic.from_rational(c_x)}) * v12
        return jump == expect
    # rotate: new coordinates u1 = eta(t)-direction, u2 along the wall
    # substitution t_i -> expression in (u1, u2): t = u1 * g + u2 * rho with
    # eta(g) = 1, eta(rho) = 0
    rho = wall.ray
    mat = [[Fraction(eta[0]), Fraction(eta[1])],
           [Fraction(rho[0]), Fraction(rho[1])]]
    g = linalg.solve([[mat[0][0], mat[0][1]], [Fraction(rho[0]),
                                               Fraction(rho[1])]],
                     [_F1, _F0])
    uv = ("u1", "u2")
    images = [MPoly.linear_form(uv, [g[i], Fraction(rho[i])])
              for i in range(2)]
    jump_u = jump.substitute(uv, images)
    v12_u = v12.substitute(uv, images)
    lead = MPoly(uv, {(m - 1, 0): Cyclotomic.from_rational(c_x)}) * v12_u
    rest = jump_u - lead
    return all(e[0] >= m for e in rest.terms)


# ---------------------------------------------------------------------------
# box deconvolution
# ---------------------------------------------------------------------------

def box_deconvolution_check(x: GList, w=None) -> dict:
    """lim_w ToddB(X)(D_pw) B_X over the support lattice; expect delta_0.

    The translation factors (1 - e_phi(-x) tau_x) / (1 - tau_x) are expanded
    as finite geometric sums on the compact support of B_X.
    """
    require_pointed(x)
    if x.group.invariants:
        raise NotUnimodular("box deconvolution runs over lattices")
    if w is None:
        w = short_regular(x)
    d = x.group.free_rank
    n = len(x)
    cap = n - d
    sv = s_vars(d)
    eta_c = pointed_certificate(x)
    support = lattice_points(x, "shifted", w=[_F0] * d)
    kmax = max((sum(Fraction(e) * v for e, v in zip(eta_c, lam))
                for lam in support), default=_F0)
    kmax = int(kmax) + 1
    from .scalar import todd_factor as _todd
    out = {lam: Cyclotomic.zero() for lam in support}
    alcove_cache = {}
    for v in vertices(x):
        series = None
        for i in range(n):
            c = evaluate(v.character, -x.elems[i])
            form = MPoly.linear_form(sv, [Fraction(cc)
                                          for cc in x.elems[i].free])
            t = _todd(form, c, cap)
            series = t if series is None else series * t
        # expand the product of (1 - c_i tau_{x_i}) * sum_k tau_{x_i}^k
        offs = [i for i in range(n) if i not in v.x_phi]
        shifts = {(0,) * d: Cyclotomic.one()}
        for i in offs:
            c = evaluate(v.character, -x.elems[i])
            xi = x.elems[i].free
            new = {}
            for shift, coeff in shifts.items():
                k = 0
                while True:
                    base = tuple(s + k * xv for s, xv in zip(shift, xi))
                    wgt = sum(Fraction(e) * b for e, b in zip(eta_c, base))
                    if wgt > kmax:
                        break
                    # (1 - c tau)(sum tau^k) = 1 + (1-c)(tau + tau^2 + ...)
                    factor = Cyclotomic.one() if k == 0 \
                        else (Cyclotomic.one() - c)
                    cur = new.get(base, Cyclotomic.zero())
                    new[base] = cur + coeff * factor
                    k += 1
            shifts = {s: cc for s, cc in new.items() if cc}
        values = {}
        for lam in support:
            # the character multiplies at the output point, after the
            # translations have shifted the argument
            root = evaluate(v.character, x.group.element(lam))
            acc = Cyclotomic.zero()
            for shift, coeff in shifts.items():
                target = tuple(l - s for l, s in zip(lam, shift))
                wgt = sum(Fraction(e) * t for e, t in zip(eta_c, target))
                if wgt < 0 or wgt > kmax:
                    continue
                if target not in values:
                    if target not in alcove_cache:
                        alcove_cache[target] = _alcove_polynomial(x, target, w)
                    der = series.body.apply_diff(alcove_cache[target])
                    values[target] = der.evaluate(
                        [Fraction(t) for t in target])
                acc = acc + coeff * values[target]
            out[lam] = out[lam] + root * acc
    return out

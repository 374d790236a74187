"""Periodic P-spaces, DM(X), periodic Todd projections, and the dualities.

A PeriodicPoly assigns a polynomial (in s-variables, plus a degree marker s0
for torsion) to each vertex of the toric arrangement; a QuasiFunction does
the same with t-polynomials and is evaluated on the lattice as
sum_phi e_phi(lambda) f_phi(lambda).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .abelian import GElement, GList, contract, rank_of, snf
from .errors import (InternalError, NonMember, SingularGram,
                     TorsionPivot, TorsionUnsupported)
from .matroid import arithmetic_tutte, bases, external_activity
from .polyspace import PsiProjector, d_basis, p_product, pair
from .scalar import (Cyclotomic, MPoly, TruncatedSeries, divide_by_linear,
                     exp_series, s_vars, t_vars, todd_factor)
from .toric import Character, evaluate, vertices

_F0 = Fraction(0)
_F1 = Fraction(1)


def _pper_vars(x: GList):
    need_s0 = bool(x.group.invariants)
    return s_vars(x.group.free_rank, with_s0=need_s0)


class PeriodicPoly:
    """sum over vertices of e_phi * (polynomial in s0, s1..sd).

    Characters within one value are distinct and kept sorted; zero
    components are dropped.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        merged = {}
        for char, poly in (terms or []):
            assert poly.vars == self.vars
            key = char.sort_key()
            if key in merged:
                merged[key] = (char, merged[key][1] + poly)
            else:
                merged[key] = (char, poly)
        self.terms = tuple(sorted(
            ((c, p) for c, p in merged.values() if p),
            key=lambda cp: cp[0].sort_key()))

    @staticmethod
    def one(x: GList) -> "PeriodicPoly":
        vars = _pper_vars(x)
        return PeriodicPoly(vars, [(Character.trivial(x.group),
                                    MPoly.constant(vars, 1))])

    @staticmethod
    def single(vars, char: Character, poly: MPoly) -> "PeriodicPoly":
        return PeriodicPoly(vars, [(char, poly)])

    def component(self, char: Character) -> MPoly:
        for c, p in self.terms:
            if c.sort_key() == char.sort_key():
                return p
        return MPoly(self.vars)

    def __add__(self, other):
        assert self.vars == other.vars
        return PeriodicPoly(self.vars, list(self.terms) + list(other.terms))

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "PeriodicPoly":
        return PeriodicPoly(self.vars, [(ch, p * c) for ch, p in self.terms])

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PeriodicPoly):
            return NotImplemented
        return self.vars == other.vars and len(self.terms) == len(other.terms) \
            and all(c1.sort_key() == c2.sort_key() and p1 == p2
                    for (c1, p1), (c2, p2) in zip(self.terms, other.terms))

    def is_homogeneous(self):
        degs = {p.total_degree() for _, p in self.terms}
        return len(degs) <= 1

    def total_degree(self):
        return max((p.total_degree() for _, p in self.terms), default=-1)

    def local_part(self, g: GElement) -> MPoly:
        """p(g, .): the polynomial this operator takes at the group element."""
        out = MPoly(self.vars)
        for char, poly in self.terms:
            out = out + poly * evaluate(char, g)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for char, poly in self.terms:
            if char.is_trivial():
                bits.append(f"{poly!r}")
            else:
                bits.append(f"{char!r}*({poly!r})")
        return " + ".join(bits)

    def to_json(self):
        return [{"character": c.to_json(), "poly": p.to_json()}
                for c, p in self.terms]

    @staticmethod
    def from_json(vars, obj) -> "PeriodicPoly":
        return PeriodicPoly(vars, [(Character.from_json(t["character"]),
                                    MPoly.from_json(vars, t["poly"]))
                                   for t in obj])


class PeriodicSeries:
    """As PeriodicPoly with truncated series bodies; uniform cap."""

    __slots__ = ("vars", "cap", "terms")

    def __init__(self, vars, cap, terms):
        self.vars = tuple(vars)
        self.cap = cap
        self.terms = tuple((c, s) for c, s in terms)
        assert all(s.cap == cap for _, s in self.terms)


class QuasiFunction:
    """sum over vertices of e_phi * f_phi with f_phi a t-polynomial."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        merged = {}
        for char, poly in (terms or []):
            assert poly.vars == self.vars
            key = char.sort_key()
            if key in merged:
                merged[key] = (char, merged[key][1] + poly)
            else:
                merged[key] = (char, poly)
        self.terms = tuple(sorted(
            ((c, p) for c, p in merged.values() if p),
            key=lambda cp: cp[0].sort_key()))

    def __add__(self, other):
        assert self.vars == other.vars
        return QuasiFunction(self.vars, list(self.terms) + list(other.terms))

    def scale(self, c) -> "QuasiFunction":
        return QuasiFunction(self.vars, [(ch, p * c) for ch, p in self.terms])

    def evaluate_at(self, point) -> Cyclotomic:
        """Value at a lattice point: sum e_phi(point) * f_phi(point)."""
        total = Cyclotomic.zero()
        for char, poly in self.terms:
            angle = Fraction(0)
            for t, v in zip(char.theta, point):
                angle += t * v
            root = Cyclotomic.from_angle(angle)
            total = total + root * poly.evaluate(
                [Fraction(v) for v in point])
        return total

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, QuasiFunction):
            return NotImplemented
        return self.vars == other.vars and len(self.terms) == len(other.terms) \
            and all(c1.sort_key() == c2.sort_key() and p1 == p2
                    for (c1, p1), (c2, p2) in zip(self.terms, other.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for char, poly in self.terms:
            if char.is_trivial():
                bits.append(f"{poly!r}")
            else:
                bits.append(f"{char!r}*({poly!r})")
        return " + ".join(bits)

    def to_json(self):
        return [{"character": c.to_json(), "poly": p.to_json()}
                for c, p in self.terms]


# ---------------------------------------------------------------------------
# bases of the periodic spaces and of DM
# ---------------------------------------------------------------------------

def pper_basis(x: GList) -> list:
    """Homogeneous basis: e_phi s0^tors(phi) p_{X \\ (B u (E(B) cap X_phi) u X_t)}
    over vertices phi and bases B of X_phi."""
    x.require_full_rank()
    vars = _pper_vars(x)
    tors = set(x.torsion_indices())
    out = []
    for v in vertices(x):
        sub = x.sublist(v.x_phi)
        if rank_of(sub, range(len(sub))) != x.group.free_rank:
            raise InternalError("vertex sublist does not span")
        phi_bases = [frozenset(v.x_phi[i] for i in b) for b in bases(sub)]
        for b in sorted(phi_bases, key=sorted):
            ext = external_activity(x, b)
            drop = set(b) | (ext & set(v.x_phi)) | tors
            poly = p_product(x, [i for i in range(len(x)) if i not in drop],
                             vars)
            if "s0" in vars and v.tors_count:
                e0 = [0] * len(vars)
                e0[vars.index("s0")] = v.tors_count
                poly = poly * MPoly(vars, {tuple(e0): Cyclotomic.one()})
            out.append((v.character, poly))
    return [PeriodicPoly.single(vars, c, p) for c, p in out]


def dm_basis(x: GList) -> list:
    """DM(X) = sum over vertices of e_phi * D(X_phi), lattices only."""
    if x.group.invariants:
        raise TorsionUnsupported("DM(X) is defined over lattices")
    x.require_full_rank()
    vars = t_vars(x.group.free_rank)
    out = []
    for v in vertices(x):
        sub = x.sublist(v.x_phi)
        for f in d_basis(sub, vars).basis:
            out.append(QuasiFunction(vars, [(v.character, f)]))
    expected = arithmetic_tutte(x).evaluate(1, 1)
    if len(out) != expected:
        raise InternalError(
            f"dim DM = {len(out)} but arithmetic Tutte(1,1) = {expected}")
    return out


# ---------------------------------------------------------------------------
# periodic Todd operators and their projections
# ---------------------------------------------------------------------------

def periodic_todd(x: GList, z: GElement, cap: int | None = None
                  ) -> PeriodicSeries:
    """sum_phi e_phi e_phi(-z) e^{-p_z} prod_x p_x / (1 - e_phi(-x) e^{-p_x}).

    Torsion elements use the marker variable s0 as their linear form when the
    vertex moves them (e_phi(x) != 1) and contribute a factor 1 otherwise.
    """
    d = x.group.free_rank
    n = len(x)
    if cap is None:
        cap = max(n - d + 1, 0)
    vars = _pper_vars(x)
    s0_form = None
    if "s0" in vars:
        e0 = [0] * len(vars)
        e0[vars.index("s0")] = 1
        s0_form = MPoly(vars, {tuple(e0): Cyclotomic.one()})
    out = []
    for v in vertices(x):
        shift = evaluate(v.character, -z)
        series = TruncatedSeries(MPoly.constant(vars, shift), cap)
        pz = _linear_of(x, z, vars)
        if pz:
            series = series * exp_series(-pz, cap)
        for i in range(n):
            c = evaluate(v.character, -x.elems[i])
            form = _linear_of(x, x.elems[i], vars)
            if not form:
                if c.is_one():
                    continue          # torsion fixed by the vertex: factor 1
                form = s0_form
            series = series * todd_factor(form, c, cap)
        out.append((v.character, series))
    return PeriodicSeries(vars, cap, out)


def _linear_of(x: GList, g: GElement, vars) -> MPoly:
    coeffs = [Fraction(v) for v in g.free]
    if len(vars) == len(coeffs) + 1:
        coeffs = [_F0] + coeffs
    return MPoly.linear_form(vars, coeffs)


def f_tilde(x: GList, z: GElement, cap: int | None = None) -> PeriodicPoly:
    """Projection of the periodic Todd operator into Pper(X).

    Each vertex component is projected by psi_X of the full list; the result
    is checked divisible by the prefactor p_{X \\ X_phi} (hard failure
    otherwise: it would indicate a truncation-cap bug).
    """
    if x.group.invariants:
        raise TorsionUnsupported(
            "the Todd projection is defined over lattices")
    x.require_full_rank()
    todd = periodic_todd(x, z, cap)
    vars = todd.vars
    psi = PsiProjector(x, vars)
    terms = []
    for v in vertices(x):
        comp = None
        for c, s in todd.terms:
            if c.sort_key() == v.character.sort_key():
                comp = s
                break
        assert comp is not None
        proj = psi(comp)
        if proj:
            rem = proj
            for i in range(len(x)):
                if i not in v.x_phi:
                    rem = divide_by_linear(rem, _linear_of(x, x.elems[i],
                                                           vars))
            terms.append((v.character, proj))
    return PeriodicPoly(vars, terms)


# ---------------------------------------------------------------------------
# hyperplane data for the internal space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """A generalised hyperplane: saturated corank-1 sublattice + torsion."""

    normal: tuple          # primitive integer normal on the free part
    sat_basis: tuple       # rows: lattice basis of span cap Lambda
    mult: int              # m(H) = |X \\ H|


def hyperplanes(x: GList) -> list:
    """All generalised hyperplanes spanned by rank-(d-1) sublists."""
    from .matroid import corank_one_flats
    d = x.group.free_rank
    if d == 0:
        return []
    out = []
    if d == 1:
        m = sum(1 for e in x.elems if any(e.free))
        out.append(Hyperplane(normal=(1,), sat_basis=(), mult=m))
        return out
    seen = {}
    for flat in corank_one_flats(x):
        cols = [[Fraction(c) for c in x.elems[i].free] for i in flat
                if any(x.elems[i].free)]
        if not cols:
            continue
        if linalg.rank(cols) != d - 1:
            continue
        null = linalg.nullspace(cols, ncols=d)
        eta = _primitive_int(null[0])
        if eta in seen:
            continue
        sat = _saturation_basis(cols, d)
        m = sum(1 for e in x.elems
                if sum(a * b for a, b in zip(eta, e.free)) != 0)
        seen[eta] = Hyperplane(normal=eta, sat_basis=sat, mult=m)
    # rank-0 closures only matter for d = 1 (handled above); for d >= 2 the
    # hyperplanes come from rank d-1 sublists.
    return [seen[k] for k in sorted(seen)]


def _primitive_int(vec):
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


def _saturation_basis(cols, d):
    """Lattice basis of (span of cols) cap Z^d, via SNF transforms."""
    mat = [[int(c[i] * _lcm_dens(c)) for c in cols] for i in range(d)]
    u, dd, _ = snf(mat)
    r = sum(1 for i in range(min(len(dd), len(dd[0]))) if dd[i][i])
    uinv = _int_inverse(u)
    return tuple(tuple(row[i] for row in uinv) for i in range(r))


def _lcm_dens(col):
    den = 1
    for v in col:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return den


def _int_inverse(u):
    n = len(u)
    m = [[Fraction(u[i][j]) for j in range(n)] for i in range(n)]
    inv_cols = linalg.solve(m, [[Fraction(int(i == j)) for j in range(n)]
                                for i in range(n)])
    return [[int(inv_cols[i][j]) for j in range(n)] for i in range(n)]


def pper_internal_basis(x: GList) -> list:
    """Kernel of the wall constraints inside span(pper_basis), degreewise.

    For each generalised hyperplane H: group the vertices by the restriction
    of their character to the subgroup H; within each class the sum of
    D_eta^(m(H)-1) applied to the polynomial components must vanish.
    """
    x.require_full_rank()
    vars = _pper_vars(x)
    basis = pper_basis(x)
    planes = hyperplanes(x)
    verts = vertices(x)
    by_degree = {}
    for b in basis:
        by_degree.setdefault(b.total_degree(), []).append(b)
    out = []
    for deg in sorted(by_degree):
        elems = by_degree[deg]
        rows = []      # one row per (hyperplane, class, output monomial)
        for hp in planes:
            classes = _restriction_classes(verts, hp, x.group)
            order = hp.mult - 1
            for cls in classes:
                cols = []
                for b in elems:
                    total = MPoly(vars)
                    for char, poly in b.terms:
                        if char.sort_key() in cls:
                            total = total + _eta_derivative(
                                poly, hp.normal, order, vars)
                    cols.append(total)
                monos = sorted({e for c in cols for e in c.terms})
                for e in monos:
                    rows.append([c.coefficient(e) for c in cols])
        if rows:
            null = linalg.nullspace(rows, ncols=len(elems),
                                    one=Cyclotomic.one(),
                                    zero=Cyclotomic.zero())
        else:
            null = [[Cyclotomic.one() if i == j else Cyclotomic.zero()
                     for j in range(len(elems))] for i in range(len(elems))]
        for vec in null:
            combo = None
            for c, b in zip(vec, elems):
                if c:
                    term = b.scale(c)
                    combo = term if combo is None else combo + term
            if combo:
                out.append(combo)
    return out


def _restriction_classes(verts, hp: Hyperplane, group):
    """Vertex keys grouped by equal character restriction to the subgroup."""
    groups = {}
    for v in verts:
        key = []
        for gen in hp.sat_basis:
            angle = sum((t * g for t, g in zip(v.character.theta, gen)),
                        _F0) % 1
            key.append(angle)
        key.extend(v.character.tors)   # torsion generators are in H
        groups.setdefault(tuple(key), set()).add(v.character.sort_key())
    return list(groups.values())


def _eta_derivative(poly: MPoly, eta, order: int, vars) -> MPoly:
    """D_eta^order, ignoring s0 (a pure degree marker)."""
    offset = 1 if vars and vars[0] == "s0" else 0
    out = poly
    for _ in range(order):
        acc = MPoly(vars)
        for i, e in enumerate(eta):
            if e:
                acc = acc + out.derivative(i + offset) * Fraction(e)
        out = acc
        if not out:
            break
    return out


# ---------------------------------------------------------------------------
# Hilbert series
# ---------------------------------------------------------------------------

def hilbert(space: list) -> list:
    """Hilbert series coefficients (grading: total degree incl. s0)."""
    by_degree = {}
    for p in space:
        if not p.is_homogeneous():
            raise ValueError("hilbert requires a homogeneous-by-degree list")
        by_degree.setdefault(max(p.total_degree(), 0), []).append(p)
    top = max(by_degree, default=-1)
    out = [0] * (top + 1)
    for deg, elems in by_degree.items():
        out[deg] = _periodic_rank(elems)
    return out


def _periodic_rank(elems) -> int:
    keys = sorted({c.sort_key() for p in elems for c, _ in p.terms})
    monos = sorted({e for p in elems for _, poly in p.terms
                    for e in poly.terms})
    rows = []
    for p in elems:
        row = []
        for k in keys:
            comp = None
            for c, poly in p.terms:
                if c.sort_key() == k:
                    comp = poly
                    break
            for e in monos:
                row.append(comp.coefficient(e) if comp is not None
                           else Cyclotomic.zero())
        rows.append(row)
    return linalg.rank(rows)


# ---------------------------------------------------------------------------
# pairing with DM and the duality map L
# ---------------------------------------------------------------------------

def pper_decompose(x: GList, p: PeriodicPoly):
    """Write each phi-component as p_{X \\ X_phi} * q_phi (exact division)."""
    verts = {v.character.sort_key(): v for v in vertices(x)}
    out = []
    for char, poly in p.terms:
        v = verts.get(char.sort_key())
        if v is None:
            raise NonMember(f"character {char} is not a vertex")
        q = poly
        for i in range(len(x)):
            if i not in v.x_phi:
                q = divide_by_linear(q, _linear_of(x, x.elems[i], p.vars))
        out.append((v, q))
    return out


def pair_pper_dm(x: GList, p: PeriodicPoly, f: QuasiFunction) -> Cyclotomic:
    """<p, f> = sum_phi <q_phi, f_phi> after stripping the prefactors."""
    if x.group.invariants:
        raise TorsionUnsupported("the DM pairing is defined over lattices")
    comps = {v.character.sort_key(): q for v, q in pper_decompose(x, p)}
    total = Cyclotomic.zero()
    for char, fpoly in f.terms:
        q = comps.get(char.sort_key())
        if q is None:
            continue
        total = total + pair(q, fpoly)
    return total


@dataclass
class LClass:
    """A functional on DM(X) as coefficients over the points Z(X, w)."""

    support: tuple              # lattice points, sorted
    coeffs: tuple               # Cyclotomic per point

    def apply(self, f: QuasiFunction) -> Cyclotomic:
        total = Cyclotomic.zero()
        for pt, c in zip(self.support, self.coeffs):
            total = total + c * f.evaluate_at(pt)
        return total

    def to_json(self):
        return [{"point": list(pt), "coeff": c.to_json()}
                for pt, c in zip(self.support, self.coeffs)]


def l_map(x: GList, p: PeriodicPoly, w) -> LClass:
    """Duality-based computation of the isomorphism onto C[Lambda]/ideal.

    Solves sum_{lambda} c_lambda f(lambda) = <p, f> over all DM basis
    elements; the evaluation matrix is invertible for affine regular w.
    """
    from .geometry import lattice_points

    if x.group.invariants:
        raise TorsionUnsupported("l_map is defined over lattices")
    points = lattice_points(x, "shifted", w=w)
    basis = dm_basis(x)
    if len(points) != len(basis):
        raise SingularGram(
            f"|Z(X,w)| = {len(points)} != dim DM = {len(basis)}; "
            "w is not affine regular")
    mat = [[f.evaluate_at(pt) for pt in points] for f in basis]
    rhs = [pair_pper_dm(x, p, f) for f in basis]
    if linalg.rank(mat) < len(points):
        raise SingularGram("evaluation matrix singular; retry with fresh w")
    sol = linalg.solve(mat, rhs)
    return LClass(support=tuple(points), coeffs=tuple(sol))


# ---------------------------------------------------------------------------
# deletion / contraction maps
# ---------------------------------------------------------------------------

def pper_mult(x: GList, i: int, p: PeriodicPoly) -> PeriodicPoly:
    """Multiplication map Pper(X \\ x_i) -> Pper(X) by the linear form of x_i."""
    if x.elems[i].is_torsion():
        raise TorsionPivot("multiplication pivot must be non-torsion")
    vars = _pper_vars(x)
    form = _linear_of(x, x.elems[i], vars)
    terms = []
    for char, poly in p.terms:
        lifted = _change_vars(poly, vars)
        terms.append((char, lifted * form))
    return PeriodicPoly(vars, terms)


def _change_vars(poly: MPoly, vars) -> MPoly:
    if poly.vars == tuple(vars):
        return poly
    # same variables up to the presence of the s0 marker
    old = poly.vars
    mapping = []
    for v in old:
        mapping.append(vars.index(v) if v in vars else None)
    terms = {}
    for e, c in poly.terms.items():
        ne = [0] * len(vars)
        for j, k in enumerate(e):
            if k:
                if mapping[j] is None:
                    raise ValueError(f"variable {old[j]} absent from {vars}")
                ne[mapping[j]] = k
        terms[tuple(ne)] = c
    return MPoly(vars, terms)


def pper_project(x: GList, i: int, p: PeriodicPoly) -> PeriodicPoly:
    """Projection map Pper(X) -> Pper(X/x_i).

    Components whose character moves x_i die; the rest are pushed through
    the quotient descriptor, with prefactor elements that become torsion
    converted into s0 markers.
    """
    if x.elems[i].is_torsion():
        raise TorsionPivot("projection pivot must be non-torsion")
    quotient, qm = contract(x, i)
    tvars = _pper_vars(quotient)
    verts = {v.character.sort_key(): v for v in vertices(x)}
    svars = _pper_vars(x)
    # images of the source s-variables in the quotient's s-variables
    d_src = x.group.free_rank
    images = []
    if "s0" in svars:
        images.append(MPoly(tvars))     # s0 of the source has no image; see below
    free_rows = [row for row, m in zip(qm.matrix, qm.moduli) if m == 0]
    for j in range(d_src):
        coeffs = [Fraction(row[j]) for row in free_rows]
        if "s0" in tvars:
            coeffs = [_F0] + coeffs
        images.append(MPoly.linear_form(tvars, coeffs))
    tors_set = set(x.torsion_indices())
    out_terms = []
    for char, poly in p.terms:
        v = verts.get(char.sort_key())
        if v is None:
            raise NonMember(f"character {char} is not a vertex")
        if not evaluate(char, x.elems[i]).is_one():
            continue
        # decompose: strip the full prefactor (non-X_phi, non-torsion部分)
        pre_idx = [j for j in range(len(x))
                   if j not in v.x_phi and j not in tors_set]
        q = poly
        for j in pre_idx:
            q = divide_by_linear(q, _linear_of(x, x.elems[j], svars))
        # s0 exponent of q is tors(phi), uniform per component; strip it
        s0_exp = 0
        if "s0" in svars:
            s0_pos = svars.index("s0")
            exps = {e[s0_pos] for e in q.terms}
            if len(exps) > 1:
                raise NonMember("mixed s0 exponents in one component")
            s0_exp = exps.pop() if exps else 0
            stripped = {}
            for e, c in q.terms.items():
                ne = list(e)
                ne[s0_pos] = 0
                stripped[tuple(ne)] = c
            q = MPoly(svars, stripped)
        # new character on the quotient
        new_char = _push_character(char, qm)
        # new prefactor: old prefactor elements that stay non-torsion
        surviving = []
        becoming_s0 = 0
        for j in pre_idx:
            jj = j if j < i else j - 1
            img = quotient.elems[jj]
            if img.is_torsion():
                becoming_s0 += 1
            else:
                surviving.append(jj)
        new_poly = p_product(quotient, surviving, tvars)
        qq = q.substitute(tvars, images)
        new_poly = new_poly * qq
        total_s0 = s0_exp + becoming_s0
        if total_s0:
            e0 = [0] * len(tvars)
            e0[tvars.index("s0")] = total_s0
            new_poly = new_poly * MPoly(tvars, {tuple(e0): Cyclotomic.one()})
        if new_poly:
            out_terms.append((new_char, new_poly))
    return PeriodicPoly(tvars, out_terms)


def _push_character(char: Character, qm) -> Character:
    """The character on G/<x> matching one fixing x.

    The functional of char evaluated on the section column of each new
    coordinate gives the new character data (the dropped SNF coordinates
    contribute integers, harmless mod 1).
    """
    func = list(char.theta) + list(char.tors)
    vals = [sum((f * s for f, s in zip(func, col)), _F0) % 1
            for col in qm.sections]
    k = qm.target.free_rank
    return Character(tuple(vals[:k]), tuple(vals[k:]))


def pper_membership(x: GList, p: PeriodicPoly) -> bool:
    """Is p in Pper(X)?  Divisibility by prefactors plus psi-invariance."""
    try:
        comps = pper_decompose(x, p)
    except NonMember:
        return False
    svars = _pper_vars(x)
    plain = s_vars(x.group.free_rank)
    for v, q in comps:
        if "s0" in svars:
            s0_pos = svars.index("s0")
            for e in q.terms:
                if e[s0_pos] != v.tors_count:
                    return False
            q = MPoly(plain, {tuple(e[:s0_pos] + e[s0_pos + 1:]): c
                              for e, c in q.terms.items()})
        else:
            q = _change_vars(q, plain)
        sub = x.sublist(v.x_phi)
        proj = PsiProjector(sub, plain)(q)
        if proj != q:
            return False
    return True

"""Exact arithmetic foundation.

Rationals are ``fractions.Fraction`` (already reduced, positive denominator).
On top of them: cyclotomic numbers in the power basis of Q(zeta_n), sparse
multivariate polynomials with cyclotomic coefficients, degree-capped power
series, and a z-Laurent object whose residue feeds the wall-crossing formula.

All values are immutable; every operation returns a fresh object.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .backend import kernels

Rat = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def rat_str(q: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_parse(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# cyclotomic fields
# ---------------------------------------------------------------------------

def euler_phi(n: int) -> int:
    assert n >= 1
    result = n
    p, m = 2, n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficient tuple of Phi_n, low degree first.

    Computed from x^n - 1 = prod_{d | n} Phi_d by exact polynomial division.
    """
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divide_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divide_exact(num, den):
    """Exact division of integer coefficient lists (low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[k] = q
        if q:
            for i, di in enumerate(den):
                num[k + i] -= q * di
    assert not any(num)
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple:
    """Rows: zeta_n^(phi+k) expanded in the power basis.

    Row k is derived from x^(phi+k) = x * x^(phi+k-1) reduced modulo Phi_n.
    Covers both raw products (up to x^(2*phi-2)) and plain powers up to
    x^(n-1).
    """
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    # x^phi = -(Phi_n - x^phi)  since Phi_n is monic
    base = [Fraction(-c) for c in mod[:phi]]
    rows = [tuple(base)]
    for _ in range(max(phi - 2, n - phi - 1)):
        prev = rows[-1]
        shifted = [_F0] + list(prev[: phi - 1])
        top = prev[phi - 1]
        if top:
            shifted = [s + top * b for s, b in zip(shifted, base)]
        rows.append(tuple(shifted))
    return tuple(rows)


@lru_cache(maxsize=None)
def _embed_powers(m: int, n: int) -> tuple:
    """Power-basis expansions in Q(zeta_n) of zeta_m^j, j = 0..phi(m)-1."""
    assert n % m == 0
    phi_n = euler_phi(n)
    step = n // m
    rows = []
    for j in range(euler_phi(m)):
        e = (j * step) % n
        vec = [_F0] * max(phi_n, e + 1)
        vec[e] = _F1
        vec = kernels.reduce_mod(vec, phi_n, _reduction_table(n))
        rows.append(tuple(vec))
    return tuple(rows)


class Cyclotomic:
    """An element of Q(zeta_n) in the power basis zeta^0..zeta^(phi(n)-1).

    The order is whatever the computation declared; values of different
    orders are embedded into the lcm on the fly.  Order 1 is the rational
    fast path used by the vast majority of coefficients.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = order
        self.coeffs = tuple(coeffs)
        assert len(self.coeffs) == euler_phi(order)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),))

    @staticmethod
    def zero() -> "Cyclotomic":
        return _CYC_ZERO

    @staticmethod
    def one() -> "Cyclotomic":
        return _CYC_ONE

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k, stored in the field of its reduced order."""
        k %= n
        g = math.gcd(k, n)
        n, k = n // g, k // g
        if n == 1:
            return _CYC_ONE
        phi = euler_phi(n)
        vec = [_F0] * max(phi, k + 1)
        vec[k] = _F1
        vec = kernels.reduce_mod(vec, phi, _reduction_table(n))
        return Cyclotomic(n, vec)

    @staticmethod
    def from_angle(q) -> "Cyclotomic":
        """e^(2 pi i q) for rational q."""
        q = Fraction(q) % 1
        return Cyclotomic.root_of_unity(q.denominator, q.numerator)

    # -- structure ---------------------------------------------------------

    def embed(self, n: int) -> "Cyclotomic":
        """Exact embedding into Q(zeta_n); requires order | n."""
        if n == self.order:
            return self
        assert n % self.order == 0
        phi_n = euler_phi(n)
        rows = _embed_powers(self.order, n)
        out = [_F0] * phi_n
        for j, c in enumerate(self.coeffs):
            if c:
                row = rows[j]
                for i in range(phi_n):
                    if row[i]:
                        out[i] += c * row[i]
        return Cyclotomic(n, out)

    def _common(self, other: "Cyclotomic"):
        n = self.order * other.order // math.gcd(self.order, other.order)
        return self.embed(n), other.embed(n), n

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not a rational number: {self}")
        return self.coeffs[0]

    def is_one(self) -> bool:
        return self.is_rational() and self.coeffs[0] == 1

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __hash__(self):
        # Canonical only through to_rational for order-1 values; cyclotomics
        # are not used as dict keys elsewhere.
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic(1, (Fraction(x),))
        return NotImplemented

    def __add__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            return Cyclotomic(1, (self.coeffs[0] + other.coeffs[0],))
        a, b, n = self._common(other)
        return Cyclotomic(n, kernels.vec_add(a.coeffs, b.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            return Cyclotomic(1, (self.coeffs[0] - other.coeffs[0],))
        a, b, n = self._common(other)
        return Cyclotomic(n, kernels.vec_sub(a.coeffs, b.coeffs))

    def __rsub__(self, other):
        return Cyclotomic._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1:
            if other.order == 1:
                return Cyclotomic(1, (self.coeffs[0] * other.coeffs[0],))
            return Cyclotomic(other.order,
                              kernels.vec_scale(other.coeffs, self.coeffs[0]))
        if other.order == 1:
            return Cyclotomic(self.order,
                              kernels.vec_scale(self.coeffs, other.coeffs[0]))
        a, b, n = self._common(other)
        raw = kernels.convolve(a.coeffs, b.coeffs)
        return Cyclotomic(n, kernels.reduce_mod(raw, euler_phi(n),
                                                _reduction_table(n)))

    __rmul__ = __mul__

    def inv(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inversion of zero cyclotomic")
        if self.order == 1:
            return Cyclotomic(1, (1 / self.coeffs[0],))
        u = _poly_xgcd_mod(list(self.coeffs),
                           [Fraction(c) for c in cyclotomic_polynomial(self.order)])
        u = u + [_F0] * (euler_phi(self.order) - len(u))
        return Cyclotomic(self.order, u[: euler_phi(self.order)])

    def __truediv__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return Cyclotomic._coerce(other) * self.inv()

    def conj(self) -> "Cyclotomic":
        """Complex conjugation: zeta_n -> zeta_n^(n-1)."""
        if self.order == 1:
            return self
        n = self.order
        out = Cyclotomic(n, (self.coeffs[0],) + (_F0,) * (euler_phi(n) - 1))
        for j in range(1, euler_phi(n)):
            if self.coeffs[j]:
                out = out + self.coeffs[j] * Cyclotomic.root_of_unity(n, n - j)
        return out

    def __eq__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        a, b, _ = self._common(other)
        return a.coeffs == b.coeffs

    def __repr__(self):
        if self.is_rational():
            return rat_str(self.coeffs[0])
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(rat_str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else rat_str(c) + "*")
                parts.append(f"{head}z{self.order}^{j}" if j > 1
                             else f"{head}z{self.order}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self):
        return {"order": self.order, "coeffs": [rat_str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj) -> "Cyclotomic":
        return Cyclotomic(obj["order"], [Fraction(c) for c in obj["coeffs"]])


_CYC_ZERO = Cyclotomic(1, (_F0,))
_CYC_ONE = Cyclotomic(1, (_F1,))


def _poly_xgcd_mod(a, mod):
    """Inverse of the coefficient list ``a`` modulo ``mod`` over Q.

    Extended Euclid in Q[x]; gcd(a, mod) is a nonzero constant because mod is
    a product of distinct irreducibles none of which divides a != 0.
    """

    def deg(p):
        d = len(p) - 1
        while d >= 0 and not p[d]:
            d -= 1
        return d

    def divmod_poly(num, den):
        num = list(num)
        dd = deg(den)
        q = [_F0] * max(deg(num) - dd + 1, 0)
        lead = den[dd]
        for k in range(deg(num) - dd, -1, -1):
            c = num[k + dd] / lead
            q[k] = c
            if c:
                for i in range(dd + 1):
                    num[k + i] -= c * den[i]
        return q, num[: dd] if dd > 0 else [_F0]

    def mul(p, q):
        return kernels.convolve(p, q) if p and q else [_F0]

    def sub(p, q):
        n = max(len(p), len(q))
        p = list(p) + [_F0] * (n - len(p))
        q = list(q) + [_F0] * (n - len(q))
        return [x - y for x, y in zip(p, q)]

    r0, r1 = [Fraction(c) for c in mod], [Fraction(c) for c in a]
    s0, s1 = [_F0], [_F1]
    while deg(r1) > 0:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
    c = r1[deg(r1)]
    return [x / c for x in s1]


def cyc_arith(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    """Single-entry dispatcher for cyclotomic field arithmetic."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# multivariate polynomials
# ---------------------------------------------------------------------------

def s_vars(d: int, with_s0: bool = False) -> tuple:
    names = tuple(f"s{i}" for i in range(1, d + 1))
    return (("s0",) + names) if with_s0 else names


def t_vars(d: int) -> tuple:
    return tuple(f"t{i}" for i in range(1, d + 1))


def _as_cyc(c) -> Cyclotomic:
    if isinstance(c, Cyclotomic):
        return c
    return Cyclotomic(1, (Fraction(c),))


class MPoly:
    """Sparse multivariate polynomial with cyclotomic coefficients.

    ``terms`` maps dense exponent tuples to nonzero Cyclotomic coefficients;
    the variable name tuple is fixed per polynomial and must agree between
    operands.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _as_cyc(c)
                if c:
                    assert len(e) == len(self.vars)
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(vars) -> "MPoly":
        return MPoly(vars)

    @staticmethod
    def constant(vars, c) -> "MPoly":
        return MPoly(vars, {(0,) * len(vars): _as_cyc(c)})

    @staticmethod
    def variable(vars, i) -> "MPoly":
        e = [0] * len(vars)
        e[i] = 1
        return MPoly(vars, {tuple(e): _CYC_ONE})

    @staticmethod
    def linear_form(vars, coeffs) -> "MPoly":
        """sum coeffs[i] * vars[i]."""
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * len(vars)
                e[i] = 1
                terms[tuple(e)] = _as_cyc(c)
        return MPoly(vars, terms)

    # -- queries -----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Cyclotomic:
        return self.terms.get((0,) * len(self.vars), _CYC_ZERO)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_slice(self, k: int) -> "MPoly":
        return MPoly(self.vars,
                     {e: c for e, c in self.terms.items() if sum(e) == k})

    def slices(self):
        """Nonzero homogeneous slices as {degree: MPoly}."""
        out = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {k: MPoly(self.vars, t) for k, t in sorted(out.items())}

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exp) -> Cyclotomic:
        return self.terms.get(tuple(exp), _CYC_ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = MPoly.constant(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            s = c if cur is None else cur + c
            if s:
                terms[e] = s
            elif cur is not None:
                del terms[e]
        out = MPoly.__new__(MPoly)
        out.vars, out.terms = self.vars, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MPoly.__new__(MPoly)
        out.vars = self.vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = MPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            c = _as_cyc(other)
            if not c:
                return MPoly(self.vars)
            out = MPoly.__new__(MPoly)
            out.vars = self.vars
            out.terms = {e: v * c for e, v in self.terms.items()}
            return out
        self._check(other)
        return self.mul_capped(other, None)

    __rmul__ = __mul__

    def mul_capped(self, other, cap):
        """Product, discarding total degree > cap when cap is not None."""
        terms = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if cap is not None and d1 + sum(e2) > cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                cur = terms.get(e)
                s = c1 * c2 if cur is None else cur + c1 * c2
                if s:
                    terms[e] = s
                elif cur is not None:
                    del terms[e]
        out = MPoly.__new__(MPoly)
        out.vars, out.terms = self.vars, terms
        return out

    def truncate(self, cap: int) -> "MPoly":
        return MPoly(self.vars,
                     {e: c for e, c in self.terms.items() if sum(e) <= cap})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = MPoly.constant(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(self.sorted_terms())))

    # -- calculus ------------------------------------------------------------

    def derivative(self, i: int) -> "MPoly":
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MPoly(self.vars, terms)

    def apply_diff(self, f: "MPoly") -> "MPoly":
        """Act on ``f`` as a constant-coefficient differential operator.

        Variable i of the operator differentiates variable i of ``f`` (the
        s/t index pairing); leftover s0 exponents are not allowed here.
        """
        result = MPoly(f.vars)
        for e, c in self.terms.items():
            g = f
            for i, k in enumerate(e):
                for _ in range(k):
                    g = g.derivative(i)
                    if not g:
                        break
            if g:
                result = result + g * c
        return result

    def evaluate(self, point) -> Cyclotomic:
        """Exact evaluation at a rational/cyclotomic point."""
        total = _CYC_ZERO
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                for _ in range(k):
                    v = v * point[i]
            total = total + v
        return total

    def substitute(self, new_vars, images) -> "MPoly":
        """Ring map sending variable i to images[i] (MPolys over new_vars)."""
        result = MPoly(new_vars)
        for e, c in self.terms.items():
            term = MPoly.constant(new_vars, c)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * images[i]
                    if not term:
                        break
            result = result + term
        return result

    # -- serialization -------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k)
            cs = repr(c)
            if " " in cs or (not c.is_rational() and "/" in cs):
                cs = f"({cs})"
            if mono:
                bits.append(mono if c.is_one() else f"{cs}*{mono}")
            else:
                bits.append(cs)
        return " + ".join(bits)

    def to_json(self):
        return [{"exp": list(e), "coeff": c.to_json()}
                for e, c in self.sorted_terms()]

    @staticmethod
    def from_json(vars, obj) -> "MPoly":
        return MPoly(vars, {tuple(t["exp"]): Cyclotomic.from_json(t["coeff"])
                            for t in obj})


def divide_by_linear(p: MPoly, linear: MPoly) -> MPoly:
    """Exact division by a degree-1 form; raises NonMember on a remainder."""
    from .errors import NonMember

    if linear.total_degree() != 1 or not linear.is_homogeneous():
        raise ValueError("divisor must be a homogeneous linear form")
    pivot = None
    for e in linear.terms:
        pivot = e.index(1)
        break
    c_piv = linear.coefficient(tuple(1 if i == pivot else 0
                                     for i in range(len(p.vars))))
    inv = c_piv.inv()
    quot = MPoly(p.vars)
    rem = p
    while rem:
        # leading term w.r.t. lex order with the pivot variable dominant
        lead = max(rem.terms, key=lambda e: (e[pivot], e))
        if lead[pivot] == 0:
            raise NonMember(f"division of {p} by {linear} leaves remainder {rem}")
        ne = list(lead)
        ne[pivot] -= 1
        mono = MPoly(p.vars, {tuple(ne): rem.terms[lead] * inv})
        quot = quot + mono
        rem = rem - mono * linear
    return quot


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """An MPoly together with a total-degree cap.

    Addition keeps the cap; multiplication takes the min cap and truncates.
    """

    __slots__ = ("cap", "body")

    def __init__(self, body: MPoly, cap: int):
        if cap < 0:
            raise ValueError("cap must be >= 0")
        self.cap = cap
        self.body = body.truncate(cap)

    @staticmethod
    def constant(vars, c, cap) -> "TruncatedSeries":
        return TruncatedSeries(MPoly.constant(vars, c), cap)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            assert self.cap == other.cap
            return TruncatedSeries(self.body + other.body, self.cap)
        return TruncatedSeries(self.body + other, self.cap)

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            assert self.cap == other.cap
            return TruncatedSeries(self.body - other.body, self.cap)
        return TruncatedSeries(self.body - other, self.cap)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            cap = min(self.cap, other.cap)
            return TruncatedSeries(self.body.mul_capped(other.body, cap), cap)
        return TruncatedSeries(self.body * other, self.cap)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries)
                and self.cap == other.cap and self.body == other.body)

    def __repr__(self):
        return f"({self.body!r}) + O(deg {self.cap + 1})"

    def inverse(self) -> "TruncatedSeries":
        """Reciprocal of a series with invertible constant term."""
        c0 = self.body.constant_term()
        if not c0:
            raise ZeroDivisionError("series has no constant term")
        inv0 = c0.inv()
        g = MPoly.constant(self.body.vars, 1) - self.body * inv0
        acc = MPoly.constant(self.body.vars, 1)
        pw = MPoly.constant(self.body.vars, 1)
        for _ in range(self.cap):
            pw = pw.mul_capped(g, self.cap)
            if not pw:
                break
            acc = acc + pw
        return TruncatedSeries(acc * inv0, self.cap)


def exp_series(p: MPoly, cap: int) -> TruncatedSeries:
    """exp of a polynomial with zero constant term, truncated at cap."""
    assert not p.constant_term()
    acc = MPoly.constant(p.vars, 1)
    pw = MPoly.constant(p.vars, 1)
    fact = 1
    for k in range(1, cap + 1):
        pw = pw.mul_capped(p, cap)
        if not pw:
            break
        fact *= k
        acc = acc + pw * Fraction(1, fact)
    return TruncatedSeries(acc, cap)


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli numbers with B_1 = -1/2."""
    if k == 0:
        return _F1
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    total = _F0
    for j in range(k):
        total += math.comb(k + 1, j) * bernoulli(j)
    return -total / (k + 1)


def todd_factor(linear: MPoly, c, cap: int) -> TruncatedSeries:
    """Truncation of p / (1 - c * exp(-p)) for a linear form p.

    c = 1 uses the Bernoulli expansion (removable singularity); c != 1
    multiplies p by the genuine series inverse of 1 - c*exp(-p), whose
    constant term 1 - c is invertible.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    if linear and (linear.total_degree() != 1 or not linear.is_homogeneous()):
        raise ValueError("expected a homogeneous linear form")
    c = _as_cyc(c)
    if c.is_one():
        acc = MPoly.constant(linear.vars, 1)
        pw = MPoly.constant(linear.vars, 1)
        fact = 1
        for k in range(1, cap + 1):
            pw = pw.mul_capped(-linear, cap)
            if not pw:
                break
            fact *= k
            b = bernoulli(k)
            if b:
                acc = acc + pw * (b / fact)
        return TruncatedSeries(acc, cap)
    den = TruncatedSeries.constant(linear.vars, 1, cap) \
        - exp_series(-linear, cap) * c
    return TruncatedSeries(linear, cap) * den.inverse()


# ---------------------------------------------------------------------------
# z-Laurent objects
# ---------------------------------------------------------------------------

class ZLaurent:
    """Finite Laurent object in an auxiliary variable z with MPoly coefficients.

    Only finitely many exponents are stored; negative exponents are allowed
    (bounded below by construction).  residue() extracts the z^(-1) part.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        self.terms = {}
        if terms:
            for k, p in terms.items():
                if p:
                    assert p.vars == self.vars
                    self.terms[int(k)] = p

    @staticmethod
    def monomial(vars, k, p) -> "ZLaurent":
        return ZLaurent(vars, {k: p})

    def __add__(self, other):
        assert self.vars == other.vars
        terms = dict(self.terms)
        for k, p in other.terms.items():
            cur = terms.get(k)
            s = p if cur is None else cur + p
            if s:
                terms[k] = s
            elif cur is not None:
                del terms[k]
        return ZLaurent(self.vars, terms)

    def __mul__(self, other):
        if isinstance(other, ZLaurent):
            assert self.vars == other.vars
            terms = {}
            for k1, p1 in self.terms.items():
                for k2, p2 in other.terms.items():
                    q = p1 * p2
                    if not q:
                        continue
                    cur = terms.get(k1 + k2)
                    terms[k1 + k2] = q if cur is None else cur + q
            return ZLaurent(self.vars, terms)
        return ZLaurent(self.vars, {k: p * other for k, p in self.terms.items()})

    __rmul__ = __mul__

    def residue(self) -> MPoly:
        """Coefficient of z^(-1); the zero polynomial when absent."""
        return self.terms.get(-1, MPoly(self.vars))

    def __repr__(self):
        bits = [f"({p!r})*z^{k}" for k, p in sorted(self.terms.items())]
        return " + ".join(bits) if bits else "0"


def residue(l: ZLaurent) -> MPoly:
    return l.residue()

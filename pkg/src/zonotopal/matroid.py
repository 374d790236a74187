"""Matroid and arithmetic-matroid combinatorics of a list.

Bases, cocircuits, external activity, and both Tutte polynomials.  The Tutte
polynomials are computed by direct subset summation, which doubles as a
formula-level oracle at desk scale.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .abelian import GList, multiplicity, rank_of
from .errors import RankDeficient
from .linalg import span_contains


class BivarPoly:
    """Integer polynomial in two variables (alpha, beta)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (i, j), c in terms.items():
                if c:
                    self.terms[(int(i), int(j))] = int(c)

    @staticmethod
    def monomial(i, j, c=1) -> "BivarPoly":
        return BivarPoly({(i, j): c})

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
            if not terms[e]:
                del terms[e]
        return BivarPoly(terms)

    def __sub__(self, other):
        return self + BivarPoly({e: -c for e, c in other.terms.items()})

    def __mul__(self, other):
        terms = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                terms[e] = terms.get(e, 0) + c1 * c2
        return BivarPoly(terms)

    def __eq__(self, other):
        return isinstance(other, BivarPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def evaluate(self, alpha, beta):
        total = 0
        for (i, j), c in self.terms.items():
            total += c * alpha ** i * beta ** j
        return total

    def coefficients_reversed(self, shift: int, alpha) -> list:
        """Coefficient list of q^shift * P(alpha, 1/q) in increasing q-degree.

        Used for the Hilbert-series identities q^(N-d) * T(a, q^-1).
        """
        out = [0] * (shift + 1)
        for (i, j), c in self.terms.items():
            out[shift - j] += c * alpha ** i
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in sorted(self.terms.items(),
                                key=lambda e: (-(e[0][0] + e[0][1]),
                                               -e[0][0])):
            mono = "".join([f"a^{i}" if i > 1 else "a" if i else "",
                            f"b^{j}" if j > 1 else "b" if j else ""])
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}{mono}")
        s = " + ".join(bits)
        return s.replace("+ -", "- ")

    def to_json(self):
        return {"terms": [{"a": i, "b": j, "c": c}
                          for (i, j), c in sorted(self.terms.items())]}

    @staticmethod
    def from_json(obj) -> "BivarPoly":
        return BivarPoly({(t["a"], t["b"]): t["c"] for t in obj["terms"]})


# ---------------------------------------------------------------------------
# bases, cocircuits, activity
# ---------------------------------------------------------------------------

def bases(x: GList) -> list:
    """All d-subsets of full free rank, in lexicographic index order."""
    d = x.group.free_rank
    if rank_of(x, range(len(x))) != d:
        raise RankDeficient("list does not span")
    out = []
    for comb in itertools.combinations(range(len(x)), d):
        if rank_of(x, comb) == d:
            out.append(frozenset(comb))
    return out


def is_unimodular(x: GList) -> bool:
    """Every basis has multiplicity 1 (and the group is free)."""
    if x.group.invariants:
        return False
    return all(multiplicity(x, b) == 1 for b in bases(x))


def corank_one_flats(x: GList) -> list:
    """Index sets of the closed rank-(r-1) flats of X (r = rank of X)."""
    r = rank_of(x, range(len(x)))
    if r == 0:
        return []
    flats = set()
    for comb in itertools.combinations(range(len(x)), r - 1):
        if rank_of(x, comb) != r - 1:
            continue
        flat = frozenset(i for i in range(len(x))
                         if rank_of(x, list(comb) + [i]) == r - 1)
        flats.add(flat)
    return sorted(flats, key=sorted)


def cocircuits(x: GList) -> list:
    """Complements of corank-1 flats, as sorted index tuples."""
    n = len(x)
    r = rank_of(x, range(n))
    if r == 0:
        return []
    out = [tuple(sorted(set(range(n)) - f)) for f in corank_one_flats(x)]
    # minimality sanity: removing a cocircuit drops the rank, any proper
    # subset does not
    for c in out:
        rest = [i for i in range(n) if i not in c]
        assert rank_of(x, rest) == r - 1
    return sorted(out)


def external_activity(x: GList, b) -> frozenset:
    """Externally active indices: x_j outside B lying in the span of the
    basis elements that precede it in the list order.

    (Equivalently, x_j is the largest index in its fundamental circuit.)
    """
    b = sorted(b)
    cols = {i: [Fraction(v) for v in x.elems[i].free] for i in b}
    active = set()
    for j in range(len(x)):
        if j in cols:
            continue
        earlier = [cols[i] for i in b if i < j]
        v = [Fraction(c) for c in x.elems[j].free]
        if span_contains(earlier, v):
            active.add(j)
    return frozenset(active)


# ---------------------------------------------------------------------------
# Tutte polynomials
# ---------------------------------------------------------------------------

def tutte(x: GList) -> BivarPoly:
    """Tutte polynomial of the matroid of free parts (torsion = loops)."""
    n = len(x)
    r = rank_of(x, range(n))
    total = BivarPoly()
    am1 = BivarPoly({(1, 0): 1, (0, 0): -1})
    bm1 = BivarPoly({(0, 1): 1, (0, 0): -1})
    pow_a = _powers(am1, r)
    pow_b = _powers(bm1, n)
    for size in range(n + 1):
        for comb in itertools.combinations(range(n), size):
            rk = rank_of(x, comb)
            total = total + pow_a[r - rk] * pow_b[size - rk]
    return total


def arithmetic_tutte(x: GList) -> BivarPoly:
    """Subset sum with multiplicities; exponent d is the group rank."""
    n = len(x)
    d = x.group.free_rank
    total = BivarPoly()
    am1 = BivarPoly({(1, 0): 1, (0, 0): -1})
    bm1 = BivarPoly({(0, 1): 1, (0, 0): -1})
    pow_a = _powers(am1, d)
    pow_b = _powers(bm1, n)
    for size in range(n + 1):
        for comb in itertools.combinations(range(n), size):
            rk = rank_of(x, comb)
            m = multiplicity(x, comb)
            term = pow_a[d - rk] * pow_b[size - rk]
            total = total + BivarPoly({e: m * c for e, c in term.terms.items()})
    return total


def _powers(p: BivarPoly, top: int) -> list:
    out = [BivarPoly({(0, 0): 1})]
    for _ in range(top):
        out.append(out[-1] * p)
    return out


def is_coloop(x: GList, i: int) -> bool:
    """x_i is a coloop iff deleting it drops the rank."""
    n = len(x)
    full = rank_of(x, range(n))
    return rank_of(x, [j for j in range(n) if j != i]) == full - 1


from zonotopal import linalg
from zonotopal.abelian import FgGroup, GList, contract, rank_of
from zonotopal.matroid import tutte
from zonotopal.polyspace import (PsiProjector, cocircuit_gens, d_basis,
                                 internal_p_basis, p_basis, p_product, pair,
                                 psi_project)
from zonotopal.scalar import Cyclotomic, MPoly, exp_series, todd_factor

SV2 = ("s1", "s2")


def _span_matrix(polys, monos):
    return [[p.coefficient(e).to_rational() for e in monos] for p in polys]


def _spans_equal(a, b):
    monos = sorted({e for p in a + b for e in p.terms})
    return linalg.span_equal(
        [[p.coefficient(e) for e in monos] for p in a],
        [[p.coefficient(e) for e in monos] for p in b])


class TestProducts:
    def test_linear_form_product(self):
        y = GList.from_rows([[1, 1], [0, 2]])
        expect = MPoly.linear_form(SV2, (1, 0)) * MPoly.linear_form(SV2, (1, 2))
        assert p_product(y, [0, 1]) == expect

    def test_empty_product(self):
        y = GList.from_rows([[1, 1], [0, 2]])
        assert p_product(y, []) == MPoly.constant(SV2, 1)

    def test_zero_vector_kills(self):
        y = GList.from_rows([[1, 0], [0, 0]])
        assert not p_product(y, [0, 1])


class TestPBasis:
    def test_two_ones(self, x11):
        basis = p_basis(x11).basis
        assert _spans_equal(basis, [MPoly.constant(("s1",), 1),
                                    MPoly.linear_form(("s1",), (1,))])

    def test_zp_all_degree_two(self, zp_list):
        span = p_basis(zp_list)
        assert span.dim == 6
        assert span.hilbert() == [1, 2, 3]
        monos = []
        from zonotopal.polyspace import _monomials
        for k in range(3):
            monos.extend(_monomials(SV2, k))
        all_deg2 = [MPoly(SV2, {e: Cyclotomic.one()}) for e in monos]
        assert _spans_equal(span.basis, all_deg2)

    def test_124(self, x124):
        span = p_basis(x124)
        expect = [MPoly(("s1",), {(k,): Cyclotomic.one()}) for k in range(3)]
        assert _spans_equal(span.basis, expect)


class TestCocircuitIdeal:
    def test_two_ones_degree_two(self, x11):
        gens = cocircuit_gens(x11, 2)
        assert gens == [MPoly(("s1",), {(2,): Cyclotomic.one() * 1})]

    def test_below_min_size_empty(self, zp_list):
        assert cocircuit_gens(zp_list, 2) == []

    def test_124_degree_three(self, x124):
        gens = cocircuit_gens(x124, 3)
        assert len(gens) == 1
        assert gens[0] == MPoly(("s1",), {(3,): Cyclotomic.from_rational(8)})


class TestPsi:
    def test_todd_two_ones(self, x11):
        sv = ("s1",)
        s = MPoly.linear_form(sv, (1,))
        todd = exp_series(-s, 2) * todd_factor(s, 1, 2) * todd_factor(s, 1, 2)
        assert psi_project(x11, todd) == MPoly.constant(sv, 1)

    def test_idempotent(self, zp_list):
        psi = PsiProjector(zp_list)
        p = MPoly.linear_form(SV2, (2, -3)) * MPoly.linear_form(SV2, (1, 1)) \
            + MPoly.constant(SV2, 5)
        assert psi(psi(p)) == psi(p)

    def test_member_fixed(self, x11):
        p = MPoly.linear_form(("s1",), (7,))
        assert psi_project(x11, p) == p

    def test_ideal_killed(self, x11):
        p = MPoly(("s1",), {(2,): Cyclotomic.one()})
        assert not psi_project(x11, p)

    def test_difference_annihilates_d(self, zp_list):
        psi = PsiProjector(zp_list)
        db = d_basis(zp_list)
        p = MPoly.linear_form(SV2, (1, 2)) * MPoly.linear_form(SV2, (1, -1))
        diff = p - psi(p)
        for f in db.basis:
            assert not pair(diff, f)


class TestDBasis:
    def test_zp(self, zp_list):
        span = d_basis(zp_list)
        assert span.dim == 6
        assert span.hilbert() == [1, 2, 3]

    def test_124(self, x124):
        span = d_basis(x124)
        expect = [MPoly(("t1",), {(k,): Cyclotomic.one()}) for k in range(3)]
        assert _spans_equal(span.basis, expect)

    def test_single_basis(self):
        x = GList.from_rows([[1, 0], [0, 1]])
        span = d_basis(x)
        assert span.dim == 1
        assert span.basis[0] == MPoly.constant(("t1", "t2"), 1)


class TestPairing:
    def test_matching_monomial(self):
        p = MPoly(("s1",), {(2,): Cyclotomic.one()})
        f = MPoly(("t1",), {(2,): Cyclotomic.one()})
        assert pair(p, f) == 2

    def test_mismatched(self):
        p = MPoly(SV2, {(1, 0): Cyclotomic.one()})
        f = MPoly(("t1", "t2"), {(0, 1): Cyclotomic.one()})
        assert not pair(p, f)

    def test_constants(self):
        p = MPoly.constant(SV2, 1)
        f = MPoly.constant(("t1", "t2"), 1)
        assert pair(p, f).is_one()

    def test_gram_nonsingular(self, zp_list, x124, x11):
        for x in (zp_list, x124, x11):
            pb, db = p_basis(x), d_basis(x)
            gram = [[pair(p, f) for f in db.basis] for p in pb.basis]
            assert linalg.rank(gram) == pb.dim


class TestInternal:
    def test_zp(self, zp_list):
        span = internal_p_basis(zp_list)
        assert span.dim == 3
        assert span.hilbert() == [1, 2]

    def test_two_ones(self, x11):
        span = internal_p_basis(x11)
        assert span.dim == 1
        assert span.basis[0].is_constant()

    def test_basis_only_zero_space(self):
        x = GList.from_rows([[1, 0], [0, 1]])
        assert internal_p_basis(x).dim == 0


class TestHilbertIdentities:
    def test_hilbert_vs_tutte(self, mixed_corpus):
        # q^(N-d) T(1, 1/q) for P(X); q^(N-d) T(0, 1/q) for internal
        done = 0
        for x in mixed_corpus:
            if x.group.invariants or x.group.free_rank > 2 or len(x) > 6:
                continue
            done += 1
            if done > 8:
                break
            n, d = len(x), x.group.free_rank
            t = tutte(x)
            hp = p_basis(x).hilbert()
            hp += [0] * (n - d + 1 - len(hp))
            assert hp == t.coefficients_reversed(n - d, 1)
            hi = internal_p_basis(x).hilbert()
            hi += [0] * (n - d + 1 - len(hi))
            assert hi == t.coefficients_reversed(n - d, 0)
        assert done >= 5

    def test_exact_sequence_dimensions(self, mixed_corpus):
        done = 0
        for x in mixed_corpus:
            if x.group.invariants or x.group.free_rank > 2 or len(x) > 6:
                continue
            d = x.group.free_rank
            for i in range(len(x)):
                if x.elems[i].is_zero():
                    continue
                rest = x.delete(i)
                if rank_of(rest, range(len(rest))) < d:
                    continue
                quot, _ = contract(x, i)
                if quot.group.invariants:
                    # the continuous P-space of the quotient ignores torsion
                    g2 = FgGroup(quot.group.free_rank)
                    quot = GList(g2, [g2.element(e.free) for e in quot.elems])
                assert (p_basis(x).dim
                        == p_basis(rest).dim + p_basis(quot).dim)
                done += 1
            if done > 10:
                break
        assert done >= 3

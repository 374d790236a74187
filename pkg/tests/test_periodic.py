from fractions import Fraction

import pytest

from zonotopal import linalg
from zonotopal.abelian import FgGroup, GList, contract
from zonotopal.errors import TorsionPivot, TorsionUnsupported
from zonotopal.geometry import lattice_points, short_regular
from zonotopal.matroid import arithmetic_tutte, is_coloop
from zonotopal.periodic import (PeriodicPoly, QuasiFunction, dm_basis,
                                f_tilde, hilbert, l_map, pair_pper_dm,
                                periodic_todd, pper_basis,
                                pper_internal_basis, pper_membership,
                                pper_mult, pper_project)
from zonotopal.polyspace import PsiProjector
from zonotopal.scalar import Cyclotomic, MPoly, exp_series
from zonotopal.toric import Character

F = Fraction


def _pper_span_equal(a, b):
    keys = sorted({c.sort_key() for p in a + b for c, _ in p.terms})
    monos = sorted({e for p in a + b for _, poly in p.terms
                    for e in poly.terms})

    def row(p):
        out = []
        comps = {c.sort_key(): poly for c, poly in p.terms}
        for k in keys:
            poly = comps.get(k)
            for e in monos:
                out.append(poly.coefficient(e) if poly is not None
                           else Cyclotomic.zero())
        return out

    return linalg.span_equal([row(p) for p in a], [row(p) for p in b])


def _make(x, items):
    """items: list of (character, poly) with polys over the right vars."""
    from zonotopal.periodic import _pper_vars
    return PeriodicPoly(_pper_vars(x), items)


class TestPperBasis:
    def test_one_two(self, x12):
        basis = pper_basis(x12)
        sv = ("s1",)
        triv = Character.trivial(x12.group)
        half = Character((F(1, 2),), ())
        s = MPoly.linear_form(sv, (1,))
        expect = [_make(x12, [(triv, MPoly.constant(sv, 1))]),
                  _make(x12, [(triv, s)]),
                  _make(x12, [(half, s)])]
        assert _pper_span_equal(basis, expect)
        assert hilbert(basis) == [1, 2]

    def test_zp_printed_basis(self, zp_list):
        basis = pper_basis(zp_list)
        sv = ("s1", "s2")
        s1 = MPoly.linear_form(sv, (1, 0))
        s2 = MPoly.linear_form(sv, (0, 1))
        triv = Character.trivial(zp_list.group)
        phi1 = Character((F(1, 2), F(1, 2)), ())
        expect = [
            _make(zp_list, [(triv, MPoly.constant(sv, 1))]),
            _make(zp_list, [(triv, s2)]),
            _make(zp_list, [(triv, s2 * (s1 + s2))]),
            _make(zp_list, [(triv, s1)]),
            _make(zp_list, [(triv, s1 * (s1 + s2))]),
            _make(zp_list, [(triv, s1 * s2)]),
            _make(zp_list, [(phi1, s1 * s2)]),
        ]
        assert len(basis) == 7
        assert _pper_span_equal(basis, expect)
        assert hilbert(basis) == [1, 2, 4]

    def test_molecule(self):
        x = GList.from_columns([[2]], FgGroup(0, (4,)))
        basis = pper_basis(x)
        sv = ("s0",)
        s0 = MPoly.linear_form(sv, (1,))

        def char(k):
            return Character((), (F(k, 4),))

        expect = [_make(x, [(char(0), MPoly.constant(sv, 1))]),
                  _make(x, [(char(1), s0)]),
                  _make(x, [(char(2), MPoly.constant(sv, 1))]),
                  _make(x, [(char(3), s0)])]
        assert _pper_span_equal(basis, expect)

    def test_dims_match_arithmetic_tutte(self, mixed_corpus):
        for x in mixed_corpus:
            basis = pper_basis(x)
            m = arithmetic_tutte(x)
            assert len(basis) == m.evaluate(1, 1)
            n, d = len(x), x.group.free_rank
            h = hilbert(basis)
            h += [0] * (n - d + 1 - len(h))
            assert h == m.coefficients_reversed(n - d, 1)


class TestDmBasis:
    def test_124(self, x124):
        basis = dm_basis(x124)
        assert len(basis) == 7
        reprs = {str(f) for f in basis}
        assert "e[1/4]*(1)" in reprs
        assert "e[1/2]*(t1)" in reprs

    def test_zp(self, zp_list):
        basis = dm_basis(zp_list)
        assert len(basis) == 7
        assert any(str(f) == "e[1/2,1/2]*(1)" for f in basis)

    def test_unimodular_is_restricted_d(self, x11):
        from zonotopal.polyspace import d_basis
        basis = dm_basis(x11)
        db = d_basis(x11)
        assert len(basis) == db.dim
        assert all(c.is_trivial() for f in basis for c, _ in f.terms)

    def test_torsion_rejected(self):
        x = GList.from_columns([[2, 0], [0, 1]], FgGroup(1, (2,)))
        with pytest.raises(TorsionUnsupported):
            dm_basis(x)


class TestTodd:
    def test_two_ones_shifted(self, x11):
        series = periodic_todd(x11, x11.group.element((1,)), cap=2)
        assert len(series.terms) == 1
        body = series.terms[0][1].body
        # 1 + 0 s + ... : the linear slice cancels
        assert body.constant_term().is_one()
        assert not body.homogeneous_slice(1)

    def test_vertex_count(self, x12):
        series = periodic_todd(x12, x12.group.zero(), cap=2)
        assert len(series.terms) == 2

    def test_empty_rank_zero(self):
        x = GList.from_columns([[1]], FgGroup(0, (2,)))
        series = periodic_todd(x, x.group.zero(), cap=2)
        assert any(s.body.constant_term().is_one() for _, s in series.terms)


class TestFTilde:
    def test_one_two_values(self, x12):
        sv = ("s1",)
        s = MPoly.linear_form(sv, (1,))
        triv = Character.trivial(x12.group)
        half = Character((F(1, 2),), ())
        f1 = f_tilde(x12, x12.group.element((1,)))
        expect = _make(x12, [(triv, MPoly.constant(sv, 1) + s * F(1, 2)),
                             (half, s * F(-1, 2))])
        assert f1 == expect
        f2 = f_tilde(x12, x12.group.element((2,)))
        expect2 = _make(x12, [(triv, MPoly.constant(sv, 1) - s * F(1, 2)),
                              (half, s * F(1, 2))])
        assert f2 == expect2

    def test_124_printed_projection(self, x124):
        ft = f_tilde(x124, x124.group.zero())
        sv = ("s1",)
        s = MPoly.linear_form(sv, (1,))
        i = Cyclotomic.root_of_unity(4)
        expect = _make(x124, [
            (Character((F(0),), ()),
             MPoly.constant(sv, 1) + s * F(7, 2) + s * s * F(21, 4)),
            (Character((F(1, 4),), ()),
             s * s * ((Cyclotomic.one() - i) * F(1, 2))),
            (Character((F(1, 2),), ()),
             s * F(1, 2) + s * s * F(7, 4)),
            (Character((F(3, 4),), ()),
             s * s * ((Cyclotomic.one() + i) * F(1, 2))),
        ])
        assert ft == expect

    def test_zp_printed_values(self, zp_list):
        sv = ("s1", "s2")
        s1 = MPoly.linear_form(sv, (1, 0))
        s2 = MPoly.linear_form(sv, (0, 1))
        one = MPoly.constant(sv, 1)
        triv = Character.trivial(zp_list.group)
        phi1 = Character((F(1, 2), F(1, 2)), ())

        def elem(a, b):
            return zp_list.group.element((a, b))

        cases = {
            (0, 1): one + s1 * F(1, 2) + s2 * F(1, 2) + s1 * s2 * F(1, 4),
            (1, 1): one - s1 * F(1, 2) + s2 * F(1, 2) - s1 * s2 * F(1, 4),
            (0, 2): one + s1 * F(1, 2) - s2 * F(1, 2) - s1 * s2 * F(1, 4),
            (1, 2): one - s1 * F(1, 2) - s2 * F(1, 2) + s1 * s2 * F(1, 4),
        }
        signs = {(0, 1): -1, (1, 1): 1, (0, 2): 1, (1, 2): -1}
        for z, trivial_part in cases.items():
            expect = _make(zp_list, [
                (triv, trivial_part),
                (phi1, s1 * s2 * F(signs[z], 4))])
            assert f_tilde(zp_list, elem(*z)) == expect

    def test_zp_suspect_value_is_member(self, zp_list):
        # the printed f(0,0) has a degree-0 phi-component, which cannot lie
        # in Pper; the computed projection must be an actual member
        ft = f_tilde(zp_list, zp_list.group.zero())
        assert pper_membership(zp_list, ft)

    def test_members_of_pper(self, x124, x12):
        for x, z in ((x124, (1,)), (x124, (3,)), (x12, (2,))):
            assert pper_membership(x, f_tilde(x, x.group.element(z)))

    def test_basis_property(self, x124):
        # f_z over Z(X, w) spans Pper; over interior points spans internal
        w = short_regular(x124)
        fs = [f_tilde(x124, x124.group.element(z))
              for z in lattice_points(x124, "shifted", w=w)]
        assert _pper_span_equal(fs, pper_basis(x124))
        fs_int = [f_tilde(x124, x124.group.element(z))
                  for z in lattice_points(x124, "interior")]
        assert _pper_span_equal(fs_int, pper_internal_basis(x124))


class TestInternal:
    def test_zp(self, zp_list):
        basis = pper_internal_basis(zp_list)
        sv = ("s1", "s2")
        s1 = MPoly.linear_form(sv, (1, 0))
        s2 = MPoly.linear_form(sv, (0, 1))
        triv = Character.trivial(zp_list.group)
        phi1 = Character((F(1, 2), F(1, 2)), ())
        expect = [
            _make(zp_list, [(triv, MPoly.constant(sv, 1))]),
            _make(zp_list, [(triv, s1)]),
            _make(zp_list, [(triv, s2)]),
            _make(zp_list, [(triv, s1 * s2), (phi1, -(s1 * s2))]),
        ]
        assert _pper_span_equal(basis, expect)
        assert hilbert(basis) == [1, 2, 1]

    def test_coloop_square(self):
        x = GList.from_rows([[2, 0], [0, 2]])
        basis = pper_internal_basis(x)
        assert len(basis) == 1
        sv = ("s1", "s2")
        chars = {c.sort_key(): p for c, p in basis[0].terms}
        assert len(chars) == 4
        one = MPoly.constant(sv, 1)
        signs = {((F(0), F(0)), ()): 1, ((F(0), F(1, 2)), ()): -1,
                 ((F(1, 2), F(0)), ()): -1, ((F(1, 2), F(1, 2)), ()): 1}
        base = chars[((F(0), F(0)), ())]
        c0 = base.constant_term()
        for key, sign in signs.items():
            assert chars[key] == one * (c0 * sign)

    def test_124_span(self, x124):
        basis = pper_internal_basis(x124)
        sv = ("s1",)
        s = MPoly.linear_form(sv, (1,))
        s2 = s * s

        def char(num, den=4):
            return Character((F(num, den),), ())

        expect = [
            _make(x124, [(char(0), MPoly.constant(sv, 1))]),
            _make(x124, [(char(0), s)]),
            _make(x124, [(char(2), s)]),
            _make(x124, [(char(0), s2), (char(1), -s2)]),
            _make(x124, [(char(1), s2), (char(3), -s2)]),
            _make(x124, [(char(2), s2), (char(3), -s2)]),
        ]
        assert _pper_span_equal(basis, expect)

    def test_internalzwo(self):
        x = GList.from_columns([[2, 0], [0, 1]], FgGroup(1, (2,)))
        pb = pper_basis(x)
        ib = pper_internal_basis(x)
        sv = ("s0", "s1")
        one = MPoly.constant(sv, 1)
        s0 = MPoly.linear_form(sv, (1, 0))

        def char(a, b):
            return Character((F(a, 2),), (F(b, 2),))

        expect_pb = [_make(x, [(char(0, 0), one)]),
                     _make(x, [(char(1, 0), one)]),
                     _make(x, [(char(0, 1), s0)]),
                     _make(x, [(char(1, 1), s0)])]
        assert _pper_span_equal(pb, expect_pb)
        expect_ib = [_make(x, [(char(0, 0), one), (char(1, 0), -one)]),
                     _make(x, [(char(0, 1), s0), (char(1, 1), -s0)])]
        assert _pper_span_equal(ib, expect_ib)
        m = arithmetic_tutte(x)
        assert m.evaluate(1, 1) == 4 and m.evaluate(0, 1) == 2

    def test_molecule_internal_equals_central(self):
        # a list of only coloops and torsion: internal = central
        for cols, group in ((([[2]]), FgGroup(0, (4,))),
                            ([[2, 0], [0, 1]], FgGroup(1, (2,)))):
            x = GList.from_columns(cols, group)
            if group.free_rank == 0:
                assert _pper_span_equal(pper_internal_basis(x), pper_basis(x))

    def test_dims_match_tutte(self, mixed_corpus):
        for x in mixed_corpus:
            if x.group.free_rank > 2:
                continue
            basis = pper_internal_basis(x)
            m = arithmetic_tutte(x)
            assert len(basis) == m.evaluate(0, 1)
            n, d = len(x), x.group.free_rank
            h = hilbert(basis)
            h += [0] * (n - d + 1 - len(h))
            assert h == m.coefficients_reversed(n - d, 0)

    def test_d3_dimension_checks(self, mixed_corpus):
        seen = 0
        for x in mixed_corpus:
            if x.group.free_rank != 3:
                continue
            seen += 1
            m = arithmetic_tutte(x)
            assert len(pper_basis(x)) == m.evaluate(1, 1)
            assert len(pper_internal_basis(x)) == m.evaluate(0, 1)
        assert seen >= 3


class TestPairingAndL:
    def test_cross_terms_vanish(self, x12):
        triv = Character.trivial(x12.group)
        half = Character((F(1, 2),), ())
        sv, tv = ("s1",), ("t1",)
        s = MPoly.linear_form(sv, (1,))
        p = _make(x12, [(half, s)])   # e_phi p_{X\X_phi} * 1
        f = QuasiFunction(tv, [(triv, MPoly.constant(tv, 1))])
        assert not pair_pper_dm(x12, p, f)

    def test_unit_pairing(self, x12):
        sv, tv = ("s1",), ("t1",)
        p = _make(x12, [(Character.trivial(x12.group),
                         MPoly.constant(sv, 1))])
        f = QuasiFunction(tv, [(Character.trivial(x12.group),
                                MPoly.constant(tv, 1))])
        assert pair_pper_dm(x12, p, f).is_one()

    def test_gram_3x3(self, x12):
        pb, db = pper_basis(x12), dm_basis(x12)
        gram = [[pair_pper_dm(x12, p, f) for f in db] for p in pb]
        assert linalg.rank(gram) == 3

    def test_gram_nonsingular_corpus(self, mixed_corpus, zp_list, x124):
        targets = [zp_list, x124]
        targets += [x for x in mixed_corpus
                    if not x.group.invariants and x.group.free_rank <= 2][:6]
        for x in targets:
            pb, db = pper_basis(x), dm_basis(x)
            gram = [[pair_pper_dm(x, p, f) for f in db] for p in pb]
            assert linalg.rank(gram) == len(pb)

    def test_l_map_functional(self, x124):
        w = short_regular(x124)
        db = dm_basis(x124)
        for z in ((1,), (2,)):
            p = f_tilde(x124, x124.group.element(z))
            lc = l_map(x124, p, w)
            for f in db:
                assert lc.apply(f) == pair_pper_dm(x124, p, f)

    def test_l_map_delta_unimodular(self, x11):
        w = short_regular(x11)
        psi = PsiProjector(x11)
        pts = lattice_points(x11, "shifted", w=w)
        for z in pts:
            ez = exp_series(MPoly.linear_form(("s1",), (F(z[0]),)), 3)
            p = PeriodicPoly.single(("s1",),
                                    Character.trivial(x11.group), psi(ez))
            lc = l_map(x11, p, w)
            expect = [Cyclotomic.one() if pt == z else Cyclotomic.zero()
                      for pt in lc.support]
            assert list(lc.coeffs) == expect

    def test_l_map_zero(self, x124):
        w = short_regular(x124)
        p = PeriodicPoly(("s1",), [])
        lc = l_map(x124, p, w)
        assert not any(lc.coeffs)

    def test_l_map_zp_pure_derivative(self, zp_list):
        # p = s2^2: the functional is f -> (d^2/dt2^2 f_triv)(0)
        sv = ("s1", "s2")
        p = PeriodicPoly.single(sv, Character.trivial(zp_list.group),
                                MPoly(sv, {(0, 2): Cyclotomic.one()}))
        w = short_regular(zp_list)
        lc = l_map(zp_list, p, w)
        for f in dm_basis(zp_list):
            expect = pair_pper_dm(zp_list, p, f)
            assert lc.apply(f) == expect
            comps = {c.sort_key(): poly for c, poly in f.terms}
            triv = comps.get(Character.trivial(zp_list.group).sort_key())
            dd = (triv.derivative(1).derivative(1).constant_term()
                  if triv is not None else Cyclotomic.zero())
            assert expect == dd


class TestDeletionContraction:
    def test_contraction_sequence_maps(self):
        x = GList.from_rows([[1, 0, 0], [0, 2, 1]])
        basis = pper_basis(x)
        images = [pper_project(x, 1, p) for p in basis]
        quot, _ = contract(x, 1)
        expect = pper_basis(quot)
        nonzero = [p for p in images if p]
        assert _pper_span_equal(nonzero, expect)
        # kernel of the projection = image of multiplication
        deleted = x.delete(1)
        mult_images = [pper_mult(x, 1, p) for p in pper_basis(deleted)]
        kernel = [p for p in basis if not pper_project(x, 1, p)]
        assert _pper_span_equal(mult_images, kernel)

    def test_mult_lands_in_pper(self, x124):
        deleted = x124.delete(2)
        for p in pper_basis(deleted):
            assert pper_membership(x124, pper_mult(x124, 2, p))

    def test_projection_kills_moved_characters(self, x12):
        half = Character((F(1, 2),), ())
        s = MPoly.linear_form(("s1",), (1,))
        p = _make(x12, [(half, s)])
        # contracting x1 = (1): e_phi(1) = -1 != 1 -> dies
        assert not pper_project(x12, 0, p)

    def test_torsion_pivot_rejected(self):
        x = GList.from_columns([[2, 0], [0, 1]], FgGroup(1, (2,)))
        with pytest.raises(TorsionPivot):
            pper_project(x, 1, pper_basis(x)[0])

    def test_dimension_additivity(self, mixed_corpus):
        done = 0
        for x in mixed_corpus:
            if x.group.free_rank > 2:
                continue
            for i in range(len(x)):
                if x.elems[i].is_torsion() or is_coloop(x, i):
                    continue
                quot, _ = contract(x, i)
                assert (len(pper_basis(x))
                        == len(pper_basis(x.delete(i)))
                        + len(pper_basis(quot)))
                assert (len(pper_internal_basis(x))
                        == len(pper_internal_basis(x.delete(i)))
                        + len(pper_internal_basis(quot)))
                done += 1
                break
            if done >= 6:
                break
        assert done >= 4


class TestLargeArrangement:
    """A 14-vertex arrangement with a torsion-creating contraction."""

    def test_counts_and_projected_f(self):
        x = GList.from_rows([[2, 4, 0, -1], [0, 1, 2, 1]])
        from zonotopal.toric import vertices
        assert len(vertices(x)) == 14
        assert arithmetic_tutte(x).evaluate(1, 1) == 23
        assert len(pper_basis(x)) == 23
        quot, _ = contract(x, 0)
        assert quot.group == FgGroup(1, (2,))
        assert len(pper_basis(quot)) == 8
        assert len(pper_internal_basis(quot)) == 6
        ft = f_tilde(x, x.group.element((0, 1)))
        proj = pper_project(x, 0, ft)
        sv = ("s0", "s1")
        one = MPoly.constant(sv, 1)
        s = MPoly.linear_form(sv, (0, 1))
        s2 = s * s

        def ch(theta, tors):
            return Character((F(theta, 2),), (F(tors, 2),))

        expect = PeriodicPoly(sv, [
            (ch(0, 0), one + s + s2 * F(1, 4)),
            (ch(0, 1), s * F(1, 2) + s2 * F(1, 2)),
            (ch(1, 0), s2 * F(-1, 4)),
            (ch(1, 1), s * F(-1, 2) + s2 * F(-1, 2)),
        ])
        assert proj == expect


class TestSerialization:
    def test_periodic_poly_roundtrip(self, x12):
        p = f_tilde(x12, x12.group.element((1,)))
        assert PeriodicPoly.from_json(("s1",), p.to_json()) == p

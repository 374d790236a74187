import itertools
import random
from fractions import Fraction

import pytest

from zonotopal.abelian import GList
from zonotopal.errors import NotPointed, SamplesRequired
from zonotopal.geometry import (big_cells, bx_by_alternating_sum,
                                bx_value, in_cone, is_pointed, lattice_points,
                                local_piece, polytope_volume, quasi_fit,
                                short_regular, tx_value, vpf_count,
                                zonotope_hrep)
from zonotopal.matroid import arithmetic_tutte
from zonotopal.polyspace import d_basis
from zonotopal import linalg

F = Fraction


class TestPointed:
    def test_one_dim(self, x124):
        assert is_pointed(x124)
        assert not is_pointed(GList.from_rows([[1, -1]]))

    def test_zp(self, zp_list):
        assert is_pointed(zp_list)

    def test_zero_column(self):
        assert not is_pointed(GList.from_rows([[1, 0], [0, 0]]))

    def test_surrounding_fan(self):
        x = GList.from_rows([[1, -1, 0], [0, 0, 1]])
        assert not is_pointed(x)


class TestZonotope:
    def test_interval(self, x12):
        h = zonotope_hrep(x12)
        pts = sorted(p for p in range(-1, 5)
                     if h.contains([F(p)]))
        assert pts == [0, 1, 2, 3]
        assert lattice_points(x12, "interior") == [(1,), (2,)]

    def test_124_counts(self, x124):
        m = arithmetic_tutte(x124)
        assert len(lattice_points(x124, "interior")) == m.evaluate(0, 1) == 6
        assert m.evaluate(1, 1) == 7

    def test_square_interior(self):
        x = GList.from_rows([[2, 0], [0, 2]])
        assert lattice_points(x, "interior") == [(1, 1)]

    def test_counts_match_tutte(self, mixed_corpus):
        for x in mixed_corpus[:15]:
            if x.group.invariants:
                continue
            m = arithmetic_tutte(x)
            w = short_regular(x)
            assert len(lattice_points(x, "shifted", w=w)) == m.evaluate(1, 1)
            assert len(lattice_points(x, "interior")) == m.evaluate(0, 1)


class TestVolume:
    def test_simplex(self):
        # standard triangle x,y >= 0, x+y <= 1
        A = [[F(-1), F(0)], [F(0), F(-1)], [F(1), F(1)]]
        b = [F(0), F(0), F(1)]
        assert polytope_volume(A, b, 2) == F(1, 2)

    def test_degenerate(self):
        A = [[F(1)], [F(-1)]]
        b = [F(1), F(-1)]
        assert polytope_volume(A, b, 1) == 0

    def test_cube_with_redundancy(self):
        A = [[F(1), F(0)], [F(-1), F(0)], [F(0), F(1)], [F(0), F(-1)],
             [F(1), F(1)]]
        b = [F(1), F(0), F(1), F(0), F(5)]
        assert polytope_volume(A, b, 2) == 1


class TestSplineValues:
    def test_t_values(self, x124, x11):
        assert tx_value(x124, [5]) == F(25, 16)
        assert tx_value(x11, [2]) == 2

    def test_b_values(self, x124, x11, x12):
        assert bx_value(x124, [F(7, 2)]) == F(1, 4)
        assert bx_value(x11, [1]) == 1
        assert bx_value(x12, [2]) == F(1, 2)

    def test_zp_middle_value_against_piece(self, zp_list):
        cells = big_cells(zp_list)
        mid = cells[1]
        piece = local_piece(zp_list, mid)
        # interpolated from other points; must agree at a fresh point
        assert piece.evaluate([F(1), F(1)]).to_rational() \
            == tx_value(zp_list, [1, 1])

    def test_alternating_sum_crosscheck(self, geometry_corpus):
        # the pointwise identity is asserted at affine-regular points (both
        # sides are continuous there); wall values depend on one-sided limits
        from zonotopal.geometry import hyperplane_normals
        rng = random.Random(17)
        for x in geometry_corpus[:4]:
            d = x.group.free_rank
            normals = hyperplane_normals(x)
            done = 0
            while done < 25:
                u = [F(rng.randint(-8, 16), rng.choice((2, 3, 5, 7)))
                     + F(1, 11) for _ in range(d)]
                if any((sum(F(e) * v for e, v in zip(eta, u))).denominator == 1
                       for eta in normals):
                    continue
                done += 1
                assert bx_value(x, u) == bx_by_alternating_sum(x, u)

    def test_support_is_zonotope(self, x124, zp_list):
        for x in (x124, zp_list):
            h = zonotope_hrep(x)
            d = x.group.free_rank
            rng = random.Random(3)
            for _ in range(20):
                u = [F(rng.randint(-10, 18), rng.choice((1, 2, 3)))
                     for _ in range(d)]
                if not h.contains(u):
                    assert bx_value(x, u) == 0

    def test_not_pointed_rejected(self):
        with pytest.raises(NotPointed):
            tx_value(GList.from_rows([[1, -1]]), [1])


class TestVpf:
    def test_values(self, x124, x11):
        assert vpf_count(x124, [5]) == 4
        assert vpf_count(x11, [3]) == 4
        assert vpf_count(x124, [0]) == 1

    def test_zero_point(self, geometry_corpus):
        for x in geometry_corpus:
            assert vpf_count(x, [0] * x.group.free_rank) == 1


class TestCells:
    def test_zp_three_cells(self, zp_list):
        assert len(big_cells(zp_list)) == 3

    def test_124_single_ray(self, x124):
        cells = big_cells(x124)
        assert len(cells) == 1
        assert cells[0].sample == (F(1),)

    def test_short_regular_1d(self, x11):
        w = short_regular(x11)
        assert 0 < abs(w[0]) < 1

    def test_short_regular_verified(self, geometry_corpus):
        from zonotopal.geometry import hyperplane_normals
        for x in geometry_corpus:
            w = short_regular(x)
            for eta in hyperplane_normals(x):
                v = sum(F(e) * c for e, c in zip(eta, w))
                assert v != 0 and abs(v) < 1

    def test_d3_requires_samples(self):
        x = GList.from_rows([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
        with pytest.raises(SamplesRequired):
            big_cells(x)
        cells = big_cells(x, samples=[(F(1, 3), F(1, 5), F(5))])
        assert len(cells) == 1

    def test_samples_verified_regular(self, zp_list):
        from zonotopal.errors import DegenerateSample
        with pytest.raises(DegenerateSample):
            big_cells(zp_list, samples=[(F(1), F(0))])


class TestLocalPieces:
    def test_124_ray(self, x124):
        piece = local_piece(x124, big_cells(x124)[0])
        from zonotopal.scalar import MPoly
        assert piece == MPoly(("t1",), {(2,): F(1, 16)})

    def test_two_ones(self, x11):
        piece = local_piece(x11, big_cells(x11)[0])
        from zonotopal.scalar import MPoly
        assert piece == MPoly.linear_form(("t1",), (1,))

    def test_pieces_in_d_span_and_distinct(self, zp_list, geometry_corpus):
        for x in [zp_list] + list(geometry_corpus[:3]):
            if x.group.free_rank > 2:
                continue
            db = d_basis(x)
            monos = sorted({e for p in db.basis for e in p.terms})
            rows = [[p.coefficient(e).to_rational() for e in monos]
                    for p in db.basis]
            seen = []
            for cell in big_cells(x):
                piece = local_piece(x, cell)
                vec = [piece.coefficient(e).to_rational() for e in monos]
                assert linalg.span_contains(rows, vec)
                assert piece not in seen
                seen.append(piece)


class TestQuasiFit:
    def test_two_ones(self, x11):
        q = quasi_fit(x11, big_cells(x11)[0])
        assert [q.evaluate_at((u,)).to_rational() for u in range(5)] \
            == [1, 2, 3, 4, 5]

    def test_one_two(self, x12):
        q = quasi_fit(x12, big_cells(x12)[0])
        for u in range(8):
            expect = F(u, 2) + F(3, 4) + F((-1) ** u, 4)
            assert q.evaluate_at((u,)).to_rational() == expect

    def test_124_branch(self, x124):
        q = quasi_fit(x124, big_cells(x124)[0])
        for u in (0, 4, 8, 12):
            assert q.evaluate_at((u,)).to_rational() \
                == F(u * u, 16) + F(u, 2) + 1

    def test_components_in_d_of_sublists(self, zp_list):
        from zonotopal.toric import vertices
        cells = big_cells(zp_list)
        q = quasi_fit(zp_list, cells[1])
        verts = {v.character.sort_key(): v for v in vertices(zp_list)}
        for char, poly in q.terms:
            v = verts[char.sort_key()]
            sub = zp_list.sublist(v.x_phi)
            db = d_basis(sub)
            monos = sorted({e for p in db.basis for e in p.terms}
                           | set(poly.terms))
            rows = [[p.coefficient(e) for e in monos] for p in db.basis]
            vec = [poly.coefficient(e) for e in monos]
            assert linalg.span_contains(rows, vec)

    def test_matches_counts_in_box(self, geometry_corpus):
        for x in geometry_corpus[:3]:
            d = x.group.free_rank
            cells = big_cells(x)
            q = quasi_fit(x, cells[0])
            # every lattice point of (Omega - Z) in a radius-6 box
            from zonotopal.geometry import (_region_contains, zonotope_hrep)
            zono = zonotope_hrep(x)
            for pt in itertools.product(range(-6, 7), repeat=d):
                if not _region_contains(x, cells[0], zono, pt):
                    continue
                expect = vpf_count(x, pt) if in_cone(x, pt) else 0
                assert q.evaluate_at(pt) == expect


class TestSemidiscreteConvolution:
    def test_identity(self, geometry_corpus, x124):
        # T_X(u) = sum_z B_X(u - z) i_X(z) at lattice u; both sides are read
        # with the same directional-limit convention since lattice points sit
        # on the walls of B_X
        from zonotopal.geometry import limit_value, tx_value as _tx
        for x in list(geometry_corpus[:4]) + [x124]:
            d = x.group.free_rank
            h = zonotope_hrep(x)
            w = short_regular(x)
            window = itertools.product(range(0, 7), repeat=d)
            for u in itertools.islice(window, 10):
                if not in_cone(x, u):
                    continue
                total = F(0)
                box = itertools.product(range(-8, 9), repeat=d)
                for z in box:
                    diff = [F(a - b) for a, b in zip(u, z)]
                    if not h.contains(diff):
                        continue
                    b = limit_value(x, diff, w)
                    if b:
                        total += b * vpf_count(x, z)
                assert total == limit_value(x, u, w, spline=_tx)

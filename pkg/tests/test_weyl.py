import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistfuse.cartan import AFFINE_R1, AFFINE_R2, LieType, build_cartan, parse_type
from twistfuse.errors import RankTooLarge
from twistfuse.weyl import (alcove_fold, apply_matrix, generate_weyl,
                            simple_reflect, to_dominant)

from oracles import brute_force_fold

CLASSICAL_ORDERS = {
    "A1": 2, "A2": 6, "A3": 24, "B2": 8, "C2": 8, "B3": 48, "C3": 48,
    "G2": 12, "D4": 192, "F4": 1152,
}


class TestSimpleReflect:
    def test_a1(self):
        d = build_cartan(LieType("A", 1))
        assert simple_reflect(d, 1, d.weight((1,))).coords == (-1,)

    def test_fixed_point(self):
        d = build_cartan(LieType("C", 2))
        z = d.weight((0, 5))
        assert simple_reflect(d, 1, z) == z

    def test_a2(self):
        d = build_cartan(LieType("A", 2))
        assert simple_reflect(d, 1, d.weight((1, 0))).coords == (-1, 1)

    def test_involution(self):
        d = build_cartan(LieType("G", 2))
        w = d.weight((2, -3))
        for i in (1, 2):
            assert simple_reflect(d, i, simple_reflect(d, i, w)) == w

    def test_index_range(self):
        d = build_cartan(LieType("A", 2))
        with pytest.raises(IndexError):
            simple_reflect(d, 3, d.weight((1, 0)))


class TestGenerateWeyl:
    @pytest.mark.parametrize("name,order", sorted(CLASSICAL_ORDERS.items()))
    def test_orders(self, name, order):
        W = generate_weyl(build_cartan(parse_type(name)))
        assert len(W) == order

    def test_sign_homomorphism(self):
        d = build_cartan(LieType("B", 2))
        W = generate_weyl(d)
        sign_of = dict(zip(W.elements, W.signs))
        from twistfuse.weyl import _mat_mul_int
        for a in W.elements:
            for b in W.elements:
                assert sign_of[_mat_mul_int(a, b)] == sign_of[a] * sign_of[b]

    def test_contains_identity(self):
        W = generate_weyl(build_cartan(LieType("A", 3)))
        ident = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
        assert W.elements[0] == ident and W.signs[0] == 1

    def test_rank_cap(self):
        with pytest.raises(RankTooLarge):
            generate_weyl(build_cartan(LieType("E", 7)))

    def test_debug_dump(self):
        W = generate_weyl(build_cartan(LieType("G", 2)))
        blob = W.to_json_dict()
        assert blob["order"] == 12
        assert len(blob["generators"]) == 2


class TestToDominant:
    def test_a1_negative(self):
        d = build_cartan(LieType("A", 1))
        rep, sign = to_dominant(d, d.weight((-3,)))
        assert rep.coords == (3,) and sign == -1

    def test_already_dominant(self):
        d = build_cartan(LieType("A", 2))
        rep, sign = to_dominant(d, d.weight((2, 1)))
        assert rep.coords == (2, 1) and sign == 1

    def test_wall(self):
        d = build_cartan(LieType("A", 2))
        rep, sign = to_dominant(d, d.weight((0, -1)))
        assert sign == 0

    @pytest.mark.parametrize("name", ["A2", "B2", "A3"])
    @given(coords=st.tuples(st.integers(-6, 6), st.integers(-6, 6),
                            st.integers(-6, 6)))
    @settings(max_examples=40, deadline=None)
    def test_equivariance(self, name, coords):
        d = build_cartan(parse_type(name))
        v = coords[:d.rank]
        rep0, sign0 = to_dominant(d, d.weight(v))
        W = generate_weyl(d)
        for w, eps in zip(W.elements, W.signs):
            rep, sign = to_dominant(d, d.weight(apply_matrix(w, v)))
            assert rep == rep0
            assert sign == (0 if sign0 == 0 else sign0 * eps)


class TestAlcoveFold:
    def test_a1_wall(self):
        d = build_cartan(LieType("A", 1, AFFINE_R1))
        res = alcove_fold(d, 1, d.weight((3,)))
        assert res.sign == 0 and res.rep is None

    def test_a1_interior(self):
        d = build_cartan(LieType("A", 1, AFFINE_R1))
        res = alcove_fold(d, 1, d.weight((1,)))
        assert (res.sign, res.rep.coords, res.reflections_used) == (1, (1,), 0)

    def test_a1_reflected(self):
        d = build_cartan(LieType("A", 1, AFFINE_R1))
        res = alcove_fold(d, 1, d.weight((4,)))
        assert res.sign == -1 and res.rep.coords == (2,)

    def test_idempotent_on_rep(self):
        d = build_cartan(LieType("C", 2, AFFINE_R1))
        for coords in [(5, -2), (-1, 4), (7, 7)]:
            res = alcove_fold(d, 2, d.weight(coords))
            if res.sign == 0:
                continue
            again = alcove_fold(d, 2, res.rep)
            assert again.sign == 1 and again.rep == res.rep
            assert again.reflections_used == 0

    @pytest.mark.parametrize("name,kind,kmax,window", [
        ("A1", AFFINE_R1, 3, 9), ("A2", AFFINE_R1, 3, 6),
    ])
    def test_brute_force_rank_le_2(self, name, kind, kmax, window):
        d = build_cartan(parse_type(name, kind))
        l = d.rank
        import itertools
        for k in range(0, kmax + 1):
            for coords in itertools.product(range(-window, window + 1), repeat=l):
                res = alcove_fold(d, k, d.weight(coords))
                sign, rep = brute_force_fold(d, k, coords)
                assert res.sign == sign
                if sign != 0:
                    assert res.rep.coords == rep
                    level = sum(a * (x - 1) for a, x in
                                zip(d.comarks[1:], rep))
                    assert level <= k  # rep - rho is level-k dominant

    def test_brute_force_twisted(self):
        d = build_cartan(LieType("A", 3, AFFINE_R2))
        import itertools
        for k in (1, 2):
            for coords in itertools.product(range(-4, 7), repeat=2):
                res = alcove_fold(d, k, d.weight(coords))
                sign, rep = brute_force_fold(d, k, coords)
                assert res.sign == sign
                if sign != 0:
                    assert res.rep.coords == rep

    @given(coords=st.tuples(st.integers(-10, 10), st.integers(-10, 10)))
    @settings(max_examples=60, deadline=None)
    def test_fold_lands_in_alcove(self, coords):
        d = build_cartan(LieType("C", 2, AFFINE_R1))
        res = alcove_fold(d, 3, d.weight(coords))
        if res.sign != 0:
            t = 3 + d.hdual
            assert all(x >= 1 for x in res.rep.coords)
            assert sum(a * x for a, x in zip(d.comarks[1:], res.rep.coords)) <= t - 1

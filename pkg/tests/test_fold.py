from fractions import Fraction

import pytest

import twistfuse.cartan as cartan_mod
from twistfuse._rational import (frac_matrix, mat_inverse, mat_mul, mat_vec,
                                 transpose)
from twistfuse.cartan import (AFFINE_R1, AFFINE_R2, AFFINE_R3, LieType,
                              build_cartan)
from twistfuse.errors import NoBuiltinAutomorphism, UnrecognizedFoldedType
from twistfuse.fold import (DiagramAutomorphism, build_folding, builtin_sigma,
                            orbit_cartan, pstar_apply, symmetric_weights)
from twistfuse.rep import dominant_level_weights
from twistfuse.smatrix import conformal

FOLDINGS = [
    (LieType("A", 3, AFFINE_R1), None),
    (LieType("A", 5, AFFINE_R1), None),
    (LieType("D", 4, AFFINE_R1), 2),
    (LieType("D", 4, AFFINE_R1), 3),
    (LieType("E", 6, AFFINE_R1), None),
]


class TestBuiltinSigma:
    def test_a3(self):
        auto = builtin_sigma(LieType("A", 3, AFFINE_R1))
        assert auto.perm == (0, 3, 2, 1) and auto.order == 2

    def test_d4_triality(self):
        auto = builtin_sigma(LieType("D", 4, AFFINE_R1))
        assert auto.perm == (0, 3, 2, 4, 1) and auto.order == 3

    def test_e6(self):
        auto = builtin_sigma(LieType("E", 6, AFFINE_R1))
        assert auto.perm == (0, 5, 4, 3, 2, 1, 6) and auto.order == 2

    def test_no_builtin(self):
        with pytest.raises(NoBuiltinAutomorphism):
            builtin_sigma(LieType("A", 4, AFFINE_R1))
        with pytest.raises(NoBuiltinAutomorphism):
            builtin_sigma(LieType("G", 2, AFFINE_R1))
        with pytest.raises(NoBuiltinAutomorphism):
            builtin_sigma(LieType("A", 3, AFFINE_R1), order=3)

    def test_identity_rejected(self):
        base = build_cartan(LieType("A", 3, AFFINE_R1))
        with pytest.raises(AssertionError):
            DiagramAutomorphism(base, (0, 1, 2, 3), 2)


class TestOrbitCartan:
    @pytest.mark.parametrize("type_,order,expected", [
        (LieType("A", 3, AFFINE_R1), None, LieType("D", 3, AFFINE_R2)),
        (LieType("A", 5, AFFINE_R1), None, LieType("D", 4, AFFINE_R2)),
        (LieType("D", 4, AFFINE_R1), 2, LieType("A", 5, AFFINE_R2)),
        (LieType("D", 4, AFFINE_R1), 3, LieType("D", 4, AFFINE_R3)),
        (LieType("E", 6, AFFINE_R1), None, LieType("E", 6, AFFINE_R2)),
    ])
    def test_identification(self, type_, order, expected):
        datum = orbit_cartan(builtin_sigma(type_, order))
        assert datum.type == expected

    def test_corrupted_table_detected(self, monkeypatch):
        folding = build_folding(LieType("A", 3, AFFINE_R1))
        auto = folding.auto
        from twistfuse import fold as fold_mod
        # Pretend the orbit matrix came out wrong.
        bad = ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
        monkeypatch.setattr(fold_mod, "_orbit_matrix",
                            lambda a: ([0, 1, 2], {0: (0,), 1: (1, 3), 2: (2,)},
                                       {0: 1, 1: 1, 2: 1}, bad))
        with pytest.raises(UnrecognizedFoldedType):
            orbit_cartan(auto)


class TestBuildFolding:
    @pytest.mark.parametrize("type_,order,twisted,adjacent,r", [
        (LieType("A", 3, AFFINE_R1), None, "A3^(2)", "D3^(2)", 2),
        (LieType("E", 6, AFFINE_R1), None, "E6^(2)", "E6^(2)", 2),
        (LieType("D", 4, AFFINE_R1), 3, "D4^(3)", "D4^(3)", 3),
        (LieType("D", 4, AFFINE_R1), 2, "D4^(2)", "A5^(2)", 2),
    ])
    def test_pairings(self, type_, order, twisted, adjacent, r):
        f = build_folding(type_, order)
        assert str(f.twisted.type) == twisted
        assert str(f.adjacent.type) == adjacent
        assert f.r == r

    @pytest.mark.parametrize("type_,order", FOLDINGS)
    def test_pstar_rho(self, type_, order):
        f = build_folding(type_, order)
        rho_adj = (1,) * f.adjacent.rank
        assert mat_vec(f.Pstar, rho_adj) == (1,) * f.base.rank

    @pytest.mark.parametrize("type_,order", FOLDINGS)
    def test_pstar_isometry(self, type_, order):
        f = build_folding(type_, order)
        lhs = mat_mul(transpose(f.Pstar),
                      mat_mul(f.base.gram_weights, f.Pstar))
        assert lhs == frac_matrix(f.adjacent.gram_weights)

    @pytest.mark.parametrize("type_,order", FOLDINGS)
    def test_phi_form_scaling(self, type_, order):
        f = build_folding(type_, order)
        lhs = mat_mul(transpose(f.phi), mat_mul(f.twisted.gram_weights, f.phi))
        rhs = tuple(tuple(Fraction(x) / f.r for x in row)
                    for row in f.adjacent.gram_weights)
        assert lhs == rhs

    @pytest.mark.parametrize("type_,order", FOLDINGS)
    def test_iota_bridge(self, type_, order):
        f = build_folding(type_, order)
        tw, base = f.twisted, f.base
        l, lb = tw.rank, base.rank
        rt = transpose(f.iota_dual)
        mid = tuple(tuple(Fraction(rt[i][j]) * tw.d_fin[j] for j in range(l))
                    for i in range(lb))
        t1 = mat_mul(frac_matrix(base.A_fin), mat_mul(mid, mat_inverse(tw.A_fin)))
        t2 = mat_mul(f.Pstar, mat_inverse(f.phi))
        assert t1 == t2

    def test_iota_dual_is_orbit_sum(self):
        f = build_folding(LieType("E", 6, AFFINE_R1))
        assert [[int(x) for x in row] for row in f.iota_dual] == [
            [1, 0, 0, 0, 1, 0],
            [0, 1, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 1],
        ]


class TestSymmetricWeights:
    def test_a3_k1(self):
        f = build_folding(LieType("A", 3, AFFINE_R1))
        ws = symmetric_weights(f, 1)
        assert [w.finite.coords for w in ws] == [(0, 0, 0), (0, 1, 0)]

    def test_k0(self):
        f = build_folding(LieType("D", 4, AFFINE_R1), 3)
        ws = symmetric_weights(f, 0)
        assert len(ws) == 1 and set(ws[0].finite.coords) == {0}

    def test_d4_triality_k1(self):
        f = build_folding(LieType("D", 4, AFFINE_R1), 3)
        assert [w.finite.coords for w in symmetric_weights(f, 1)] == [(0, 0, 0, 0)]

    @pytest.mark.parametrize("type_,order", FOLDINGS)
    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_weight_set_bijections(self, type_, order, k):
        f = build_folding(type_, order)
        n_tw = len(dominant_level_weights(f.twisted, k))
        n_adj = len(dominant_level_weights(build_cartan(f.adjacent.type), k))
        assert n_tw == n_adj == len(symmetric_weights(f, k))

    @pytest.mark.parametrize("type_,order", FOLDINGS)
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_anomaly_invariance(self, type_, order, k):
        f = build_folding(type_, order)
        adj = build_cartan(f.adjacent.type)
        for lw in dominant_level_weights(adj, k):
            image = pstar_apply(f, lw)
            assert conformal(adj, k, lw).m == conformal(f.base, k, image).m

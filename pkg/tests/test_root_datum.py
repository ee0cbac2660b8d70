import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaplectic_dual.lattice import dot, identity_matrix, mat_vec, matrix, vec_add
from metaplectic_dual.root_datum import (
    NotFiniteType,
    OrderBoundExceeded,
    PairingViolation,
    RootDatum,
    UnknownGroup,
    standard_datum,
)

# counts of positive roots and Weyl orders for the catalog
POSITIVE_COUNTS = {
    "SL2": 1, "PGL2": 1, "GL2": 1, "SL3": 3, "GL3": 3, "PGL3": 3,
    "Sp4": 4, "SO5": 4, "Sp6": 9, "SO7": 9, "G2": 6, "SL4": 6, "SO8": 12,
}
WEYL_ORDERS = {
    "SL2": 2, "PGL2": 2, "GL2": 2, "SL3": 6, "GL3": 6, "Sp4": 8, "SO5": 8,
    "G2": 12, "SL4": 24, "Sp6": 48, "SO7": 48, "T2": 1, "SL2xSL2": 4,
}


class TestValidate:
    def test_sl2(self):
        rd = standard_datum("SL2")
        comps = rd.validate()
        assert len(comps) == 1
        assert comps[0].cartan_type == "A1"
        assert rd.cartan_matrix == matrix([[2]])

    def test_gl3(self):
        rd = standard_datum("GL3")
        assert rd.rank == 3
        comps = rd.validate()
        assert [c.cartan_type for c in comps] == ["A2"]
        assert rd.cartan_matrix == matrix([[2, -1], [-1, 2]])

    def test_pairing_violation(self):
        with pytest.raises(PairingViolation):
            RootDatum(1, matrix([[1]]), matrix([[3]])).validate()

    def test_affine_rejected(self):
        # affine A1 Cartan matrix has a multiplicity-4 bond
        rd = RootDatum(2, identity_matrix(2), matrix([[2, -2], [-2, 2]]))
        with pytest.raises(NotFiniteType):
            rd.validate()

    def test_dependent_coroots_rejected(self):
        rd = RootDatum(2, matrix([[1, 0], [2, 0]]), matrix([[2, 0], [0, 2]]))
        with pytest.raises((NotFiniteType, PairingViolation)):
            rd.validate()

    def test_positive_offdiagonal_rejected(self):
        rd = RootDatum(2, identity_matrix(2), matrix([[2, 1], [1, 2]]))
        with pytest.raises(NotFiniteType):
            rd.validate()

    def test_catalog_types(self):
        expected = {
            "Sp4": ["C2"], "SO5": ["B2"], "Sp6": ["C3"], "SO7": ["B3"],
            "SO8": ["D4"], "SO4": ["A1", "A1"], "G2": ["G2"], "SL5": ["A4"],
            "SL2xSL3": ["A1", "A2"], "T3": [],
        }
        for name, types in expected.items():
            comps = standard_datum(name).validate()
            assert [c.cartan_type for c in comps] == types, name

    def test_unknown_group(self):
        for bad in ["E9", "SL1", "Sp3", "XY2", "", "SO2"]:
            with pytest.raises(UnknownGroup):
                standard_datum(bad)


class TestRoots:
    def test_counts(self):
        for name, count in POSITIVE_COUNTS.items():
            rd = standard_datum(name)
            assert len(rd.positive_roots()) == count, name
            assert len(rd.positive_coroots()) == count, name

    def test_a2_coroots(self):
        rd = standard_datum("SL3")
        a1, a2 = rd.simple_coroots
        assert set(rd.positive_coroots()) == {a1, a2, vec_add(a1, a2)}

    def test_pairs_pair_to_two(self):
        for name in POSITIVE_COUNTS:
            for p in standard_datum(name).positive_root_pairs:
                assert dot(p.coroot, p.root) == 2

    def test_weyl_permutes_coroots(self):
        for name in ["SL3", "Sp4", "G2", "GL3", "SO5"]:
            rd = standard_datum(name)
            coroots = set(rd.positive_coroots())
            allc = coroots | {tuple(-x for x in v) for v in coroots}
            for w in rd.weyl_group(48):
                assert {mat_vec(w, v) for v in allc} == allc


class TestWeylGroup:
    def test_orders(self):
        for name, order in WEYL_ORDERS.items():
            assert len(standard_datum(name).weyl_group(64)) == order, name

    def test_sl2_elements(self):
        rd = standard_datum("SL2")
        w = rd.weyl_group(8)
        assert set(w) == {((1,),), ((-1,),)}

    def test_involutions(self):
        for name in ["SL3", "Sp4", "G2"]:
            rd = standard_datum(name)
            for i in range(rd.num_simple):
                s = rd.simple_reflection(i)
                assert mat_vec(s, mat_vec(s, (3, -5)[: rd.rank])) == (3, -5)[: rd.rank]

    def test_order_bound(self):
        with pytest.raises(OrderBoundExceeded):
            standard_datum("G2").weyl_group(5)


class TestDominance:
    def test_reflexive(self):
        rd = standard_datum("SL3")
        assert rd.dominance_leq((1, 2), (1, 2))

    def test_sl2(self):
        rd = standard_datum("SL2")
        assert rd.dominance_leq((0,), (1,))
        assert not rd.dominance_leq((1,), (0,))

    def test_a2_incomparable_simples(self):
        rd = standard_datum("SL3")
        a1, a2 = rd.simple_coroots
        assert not rd.dominance_leq(a1, a2)
        assert not rd.dominance_leq(a2, a1)

    def test_torus(self):
        rd = standard_datum("T2")
        assert rd.dominance_leq((1, 1), (1, 1))
        assert not rd.dominance_leq((0, 0), (1, 0))

    @settings(max_examples=60, deadline=None)
    @given(
        st.sampled_from(["SL3", "Sp4", "GL3"]),
        st.lists(st.integers(-3, 3), min_size=3, max_size=3),
        st.lists(st.integers(0, 3), min_size=3, max_size=3),
        st.lists(st.integers(0, 3), min_size=3, max_size=3),
    )
    def test_partial_order(self, name, base, inc1, inc2):
        rd = standard_datum(name)
        n = rd.rank
        k = rd.num_simple
        lam = tuple(base[:n]) + (0,) * (n - len(base[:n]))
        mu = lam
        for c, a in zip(inc1[:k], rd.simple_coroots):
            mu = vec_add(mu, tuple(c * x for x in a))
        nu = mu
        for c, a in zip(inc2[:k], rd.simple_coroots):
            nu = vec_add(nu, tuple(c * x for x in a))
        # constructed chain is ordered; transitivity and antisymmetry hold
        assert rd.dominance_leq(lam, mu) and rd.dominance_leq(mu, nu)
        assert rd.dominance_leq(lam, nu)
        if lam != mu:
            assert not rd.dominance_leq(mu, lam)


class TestDominantStabilizer:
    def test_zero(self):
        rd = standard_datum("SL3")
        assert rd.is_dominant((0, 0))
        assert rd.stabilizer_weyl((0, 0)) == (0, 1)

    def test_sl2_alpha(self):
        rd = standard_datum("SL2")
        assert rd.is_dominant((1,))
        assert rd.stabilizer_weyl((1,)) == ()

    def test_a2_rho_like(self):
        rd = standard_datum("SL3")
        lam = vec_add(rd.simple_coroots[0], rd.simple_coroots[1])
        assert [dot(lam, r) for r in rd.simple_roots] == [1, 1]
        assert rd.is_dominant(lam)


class TestParity:
    def test_zero(self):
        assert standard_datum("Sp4").parity((0, 0)) == 0

    def test_simple_coroots_are_even(self):
        for name in ["SL3", "Sp4", "G2", "GL3", "SO5"]:
            rd = standard_datum(name)
            for a in rd.simple_coroots:
                assert rd.parity(a) == 0, name
            # hence parity only depends on the coroot-lattice coset
            theta = tuple(range(1, rd.rank + 1))
            for a in rd.simple_coroots:
                assert rd.parity(vec_add(theta, a)) == rd.parity(theta)

    def test_gl2_determinant_direction(self):
        rd = standard_datum("GL2")
        assert rd.two_rho_check == (1, -1)
        assert rd.parity((1, 0)) == 1


class TestAbelianization:
    def test_sl2(self):
        ab = standard_datum("SL2").abelianization()
        assert ab.pi1 == ()
        assert ab.ab_rank == 0

    def test_pgl2(self):
        ab = standard_datum("PGL2").abelianization()
        assert ab.pi1 == (2,)
        assert ab.ab_rank == 0

    def test_gl2(self):
        ab = standard_datum("GL2").abelianization()
        assert ab.pi1 == (0,)
        assert ab.ab_rank == 1
        # projection kills the coroot and is onto
        assert mat_vec(ab.lambda_ab_projection, (1, -1)) == (0,)

    def test_sl3_simply_connected(self):
        ab = standard_datum("SL3").abelianization()
        assert ab.pi1 == ()

    def test_pgl3(self):
        ab = standard_datum("PGL3").abelianization()
        assert ab.pi1 == (3,)

    def test_torus(self):
        ab = standard_datum("T2").abelianization()
        assert ab.pi1 == (0, 0)
        assert ab.ab_rank == 2

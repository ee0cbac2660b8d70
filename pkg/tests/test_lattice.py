import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaplectic_dual.lattice import (
    Sublattice,
    denominator,
    determinant,
    hermite_normal_form,
    identity_matrix,
    integer_kernel,
    invert_unimodular,
    kernel_mod,
    mat_mul,
    mat_vec,
    matrix,
    saturate,
    smith_normal_form,
    solve_exact,
    transpose,
    vectors_in_box,
    zero_matrix,
)

small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-30, 30), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
).map(matrix)


def snf_is_valid(m, u, d, v):
    assert mat_mul(mat_mul(u, m), v) == d
    assert abs(determinant(u)) == 1
    assert abs(determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
    for i in range(len(d)):
        for j in range(len(d[0]) if d else 0):
            if i != j:
                assert d[i][j] == 0
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0


class TestSmithNormalForm:
    def test_worked_2x2(self):
        m = matrix([[2, 0], [0, 3]])
        u, d, v = smith_normal_form(m)
        snf_is_valid(m, u, d, v)
        assert d == matrix([[1, 0], [0, 6]])

    def test_identity(self):
        m = identity_matrix(3)
        u, d, v = smith_normal_form(m)
        snf_is_valid(m, u, d, v)
        assert d == m

    def test_zero(self):
        m = zero_matrix(2, 3)
        u, d, v = smith_normal_form(m)
        snf_is_valid(m, u, d, v)
        assert d == m

    def test_rectangular(self):
        m = matrix([[4, 6, 10], [2, 2, 2]])
        u, d, v = smith_normal_form(m)
        snf_is_valid(m, u, d, v)

    @settings(max_examples=150, deadline=None)
    @given(small_matrices)
    def test_random(self, m):
        u, d, v = smith_normal_form(m)
        snf_is_valid(m, u, d, v)

    def test_big_entries(self):
        m = matrix([[10**30, 1], [0, 10**30]])
        u, d, v = smith_normal_form(m)
        snf_is_valid(m, u, d, v)


class TestHermiteNormalForm:
    def test_canonical(self):
        h = hermite_normal_form([(2, 2), (0, 4)], 2)
        assert h == hermite_normal_form([(2, 6), (2, 2)], 2)
        for row in h:
            assert row[next(i for i, x in enumerate(row) if x)] > 0

    def test_drops_dependent(self):
        h = hermite_normal_form([(1, 2), (2, 4)], 2)
        assert h == matrix([[1, 2]])

    @settings(max_examples=100, deadline=None)
    @given(small_matrices)
    def test_same_lattice(self, m):
        # HNF is invariant under row shuffling and row additions
        h = hermite_normal_form(m, len(m[0]))
        rows = list(m)
        random.Random(0).shuffle(rows)
        if len(rows) >= 2:
            rows[0] = tuple(a + 3 * b for a, b in zip(rows[0], rows[1]))
        assert hermite_normal_form(rows, len(m[0])) == h


class TestKernelMod:
    def test_sl2_example(self):
        s = kernel_mod(matrix([[-8]]), 3)
        assert s.basis == matrix([[3]])
        for (x,) in vectors_in_box(1, 10):
            assert s.member((x,)) == ((-8 * x) % 3 == 0)

    def test_mod_one_is_everything(self):
        s = kernel_mod(matrix([[5, 7], [1, 2]]), 1)
        assert s.basis == identity_matrix(2)

    def test_two_by_two(self):
        s = kernel_mod(matrix([[2, 0], [0, 2]]), 4)
        for v in vectors_in_box(2, 8):
            assert s.member(v) == (v[0] % 2 == 0 and v[1] % 2 == 0)

    def test_random_against_box(self):
        rng = random.Random(7)
        for _ in range(40):
            rank = rng.randint(1, 3)
            n = rng.randint(1, 6)
            m = matrix([[rng.randint(-9, 9) for _ in range(rank)] for _ in range(rank)])
            s = kernel_mod(m, n)
            assert s.rank == rank
            for v in vectors_in_box(rank, min(2 * n, 6)):
                expected = all(x % n == 0 for x in mat_vec(m, v))
                assert s.member(v) == expected


class TestSaturate:
    def test_doubles(self):
        s = Sublattice.from_generators(2, [(2, 0)])
        assert saturate(s).basis == matrix([[1, 0]])

    def test_idempotent_and_extensive(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(1, 4)
            k = rng.randint(0, n)
            gens = [tuple(rng.randint(-6, 6) for _ in range(n)) for _ in range(k)]
            s = Sublattice.from_generators(n, gens)
            sat = saturate(s)
            assert saturate(sat) == sat
            for row in s.basis:
                assert sat.member(row)
            # torsion-free quotient: the inclusion has all elementary divisors 1
            if sat.rank:
                _, d, _ = smith_normal_form(transpose(sat.basis))
                diag = [d[i][i] for i in range(sat.rank)]
                assert all(x == 1 for x in diag)

    def test_skew_example(self):
        s = Sublattice.from_generators(2, [(2, 2), (0, 4)])
        sat = saturate(s)
        # every ambient point with a multiple inside s must be in sat, and back
        for v in vectors_in_box(2, 5):
            has_multiple = any(s.member(tuple(k * x for x in v)) for k in range(1, 9))
            if has_multiple:
                assert sat.member(v)
        for row in sat.basis:
            assert any(s.member(tuple(k * x for x in row)) for k in range(1, 9))


class TestMember:
    def test_trivial(self):
        s = Sublattice.from_generators(1, [(3,)])
        assert s.member((6,))
        assert not s.member((4,))

    def test_rank_mismatch(self):
        s = Sublattice.from_generators(1, [(3,)])
        with pytest.raises(ValueError):
            s.member((1, 2))

    def test_members_by_construction(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(1, 4)
            k = rng.randint(1, n)
            gens = [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(k)]
            s = Sublattice.from_generators(n, gens)
            coeffs = [rng.randint(-4, 4) for _ in range(k)]
            v = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(n))
            assert s.member(v)

    def test_against_rational_solve(self):
        # oracle: v in s iff basis^T . x = v has an integral solution
        rng = random.Random(13)
        checked = 0
        while checked < 500:
            n = rng.randint(1, 4)
            k = rng.randint(1, n)
            gens = [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(k)]
            s = Sublattice.from_generators(n, gens)
            if s.rank == 0:
                continue
            v = tuple(rng.randint(-8, 8) for _ in range(n))
            sol = solve_exact(transpose(s.basis), v)
            expected = sol is not None and all(x.denominator == 1 for x in sol)
            assert s.member(v) == expected
            checked += 1


class TestKernelAndInverse:
    def test_integer_kernel(self):
        k = integer_kernel(matrix([[1, -1, 0]]))
        assert k.rank == 2
        for row in k.basis:
            assert row[0] == row[1]

    def test_invert_unimodular(self):
        m = matrix([[2, 1], [1, 1]])
        inv = invert_unimodular(m)
        assert mat_mul(m, inv) == identity_matrix(2)

    def test_invert_rejects(self):
        with pytest.raises(ValueError):
            invert_unimodular(matrix([[2, 0], [0, 1]]))


class TestDenominator:
    def test_examples(self):
        assert denominator(Fraction(8, 6)) == 3
        assert denominator(Fraction(-4, 3)) == 3
        assert denominator(0) == 1
        assert denominator(Fraction(12, 6)) == 1

import random
from fractions import Fraction

import pytest

from dirhom.exactla import (
    FieldError, Matrix, PrimeField, QQ, Subspace, field_from_name,
    induced_on_quotient, invert, is_prime, kernel_basis, quotient_map, rank,
    solve_in_image,
)


def M(rows, field=QQ):
    return Matrix.from_rows(field, rows)


class TestFields:
    def test_rationals_lowest_terms(self):
        v = QQ.of(2) / QQ.of(4)
        assert v == Fraction(1, 2)
        assert v.denominator > 0

    def test_prime_field_range(self):
        f = PrimeField(7)
        v = f.of(-3)
        assert 0 <= v.value < 7
        assert v + f.of(3) == f.zero

    def test_prime_field_inverse(self):
        f = PrimeField(1009)
        v = f.of(123)
        assert v / v == f.one

    def test_nonprime_rejected(self):
        with pytest.raises(FieldError):
            PrimeField(10)

    def test_field_from_name(self):
        assert field_from_name("q") is QQ
        assert field_from_name("fp:13").p == 13
        with pytest.raises(FieldError):
            field_from_name("fp:12")
        with pytest.raises(FieldError):
            field_from_name("r64")

    def test_is_prime_small(self):
        assert [n for n in range(2, 30) if is_prime(n)] == \
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


class TestMatrix:
    def test_entry_bounds(self):
        m = M([[1, 2], [3, 4]])
        assert m.entry(1, 0) == 3
        with pytest.raises(IndexError):
            m.entry(2, 0)
        with pytest.raises(IndexError):
            m.entry(-1, 0)

    def test_matmul_and_vec(self):
        a = M([[1, 2], [3, 4]])
        b = M([[0, 1], [1, 0]])
        assert (a @ b) == M([[2, 1], [4, 3]])
        assert a.matvec((1, 1)) == (QQ.of(3), QQ.of(7))

    def test_empty_shapes(self):
        z = Matrix.zeros(QQ, 0, 3)
        assert rank(z) == 0
        assert (z @ Matrix.zeros(QQ, 3, 2)).rows == 0


class TestRank:
    def test_proportional_rows(self):
        assert rank(M([[1, 2], [2, 4]])) == 1

    def test_zero_matrix(self):
        assert rank(Matrix.zeros(QQ, 3, 5)) == 0

    def test_identity(self):
        for n in (1, 2, 5):
            assert rank(Matrix.identity(QQ, n)) == n


class TestKernel:
    def test_proportional_rows_kernel(self):
        ker = kernel_basis(M([[1, 2], [2, 4]]))
        assert ker.dim == 1
        expected = Subspace.span(QQ, 2, [(2, -1)])
        assert Subspace.span(QQ, 2, ker.basis) == expected

    def test_invertible_kernel_empty(self):
        assert kernel_basis(M([[1, 1], [0, 1]])).dim == 0

    def test_zero_full_kernel(self):
        assert kernel_basis(Matrix.zeros(QQ, 2, 3)).dim == 3


class TestSolve:
    def test_identity(self):
        m = Matrix.identity(QQ, 3)
        assert solve_in_image(m, (1, 2, 3)) == (QQ.of(1), QQ.of(2), QQ.of(3))

    def test_zero_no_solution(self):
        assert solve_in_image(Matrix.zeros(QQ, 2, 2), (1, 0)) is None

    def test_underdetermined_verified_by_remultiplication(self):
        m = M([[1, 1]])
        x = solve_in_image(m, (3,))
        assert m.matvec(x) == (QQ.of(3),)
        x2 = solve_in_image(m, (3,), column_order=[1, 0])
        assert m.matvec(x2) == (QQ.of(3),)
        assert x != x2

    def test_dimension_mismatch(self):
        with pytest.raises(FieldError):
            solve_in_image(M([[1, 1]]), (1, 2))


class TestQuotient:
    def test_zero_subspace_gives_identity(self):
        q = quotient_map(3, Subspace.zero(QQ, 3))
        assert q == Matrix.identity(QQ, 3)

    def test_full_subspace_gives_no_rows(self):
        q = quotient_map(2, Subspace.full(QQ, 2))
        assert q.rows == 0 and q.cols == 2

    def test_diagonal_kernel(self):
        sub = Subspace(QQ, 2, [(1, 1)])
        q = quotient_map(2, sub)
        assert q.rows == 1
        assert q.matvec((1, 1)) == (QQ.zero,)
        # kernel of q recovers the input span
        assert Subspace.span(QQ, 2, kernel_basis(q).basis) == \
            Subspace.span(QQ, 2, [(1, 1)])

    def test_dependent_basis_rejected(self):
        with pytest.raises(FieldError):
            Subspace(QQ, 2, [(1, 1), (2, 2)])


class TestInducedOnQuotient:
    def test_identity_equal_subs(self):
        sub = Subspace(QQ, 2, [(1, 0)])
        g = induced_on_quotient(Matrix.identity(QQ, 2), sub, sub)
        assert g == Matrix.identity(QQ, 1)

    def test_full_target_no_rows(self):
        g = induced_on_quotient(Matrix.identity(QQ, 2),
                                Subspace.zero(QQ, 2), Subspace.full(QQ, 2))
        assert g.rows == 0

    def test_commuting_square(self):
        f = M([[1, 2], [0, 1]])
        src = Subspace(QQ, 2, [(1, 0)])
        dst = Subspace(QQ, 2, [(1, 0)])
        g = induced_on_quotient(f, src, dst)
        q = quotient_map(2, src)
        assert g @ q == quotient_map(2, dst) @ f

    def test_non_preserving_rejected(self):
        f = M([[0, 1], [1, 0]])
        sub = Subspace(QQ, 2, [(1, 0)])
        with pytest.raises(FieldError):
            induced_on_quotient(f, sub, sub)


class TestInvariants:
    def test_rank_nullity_random(self):
        rng = random.Random(7)
        for _ in range(25):
            r, c = rng.randint(0, 5), rng.randint(0, 5)
            m = Matrix(QQ, r, c,
                       [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)])
            assert rank(m) + kernel_basis(m).dim == m.cols

    def test_rank_nullity_prime_field(self):
        f = PrimeField(13)
        rng = random.Random(8)
        for _ in range(15):
            m = Matrix.from_rows(f, [[f.of(rng.randint(0, 12)) for _ in range(4)]
                                     for _ in range(3)])
            assert rank(m) + kernel_basis(m).dim == 4

    def test_quotient_then_kernel_recovers_subspace(self):
        rng = random.Random(9)
        for _ in range(20):
            n = rng.randint(1, 5)
            k = rng.randint(0, n)
            vecs = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
            sub = Subspace.span(QQ, n, vecs)
            q = quotient_map(n, sub)
            assert Subspace.span(QQ, n, kernel_basis(q).basis) == sub

    def test_cross_field_agreement_4x4(self):
        # entries bounded by 3: every minor is below 10007, so ranks agree
        f = PrimeField(10007)
        rng = random.Random(10)
        for _ in range(30):
            rows = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
            mq = M(rows)
            mp = Matrix.from_rows(f, [[f.of(v) for v in row] for row in rows])
            assert rank(mq) == rank(mp)
            assert kernel_basis(mq).dim == kernel_basis(mp).dim

    def test_invert_round_trip(self):
        m = M([[2, 1], [1, 1]])
        assert m @ invert(m) == Matrix.identity(QQ, 2)

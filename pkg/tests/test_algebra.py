from fractions import Fraction

import pytest
from hypothesis import given, settings

from codes.algebra import (
    SquareMatrix, determinant, geometric_sum, inner_inverse, inverse, is_nilpotent, mat_pow, poly_eval, rank,
    solve_left, solve_matrix_equations, solve_right,
)
from codes.errors import DimensionMismatchError, ScalarMismatchError, UnsupportedRingError
from codes.scalars import GAUSSIAN, RATIONAL, GaussianRational, mod
from tests.strategies import matrix_pairs, rational_matrices

I2 = SquareMatrix.identity(2)
Z2 = SquareMatrix.zeros(2)
N = SquareMatrix.from_rows([[0, 1], [0, 0]])


def M(rows, kind=RATIONAL):
    return SquareMatrix.from_rows(rows, kind)


class TestMatMul:
    def test_identity_and_zero(self):
        A = M([[1, 2], [3, 4]])
        assert I2 @ A == A
        assert Z2 @ A == Z2

    def test_nilpotent_square(self):
        assert N @ N == Z2

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            I2 @ SquareMatrix.identity(3)

    def test_scalar_mismatch(self):
        with pytest.raises(ScalarMismatchError):
            I2 @ SquareMatrix.identity(2, GAUSSIAN)

    def test_mod_arithmetic(self):
        A = M([[1, 1], [0, 1]], mod(2))
        assert A @ A == SquareMatrix.identity(2, mod(2))


class TestMatPow:
    def test_examples(self):
        A = M([[1, 2], [3, 4]])
        assert mat_pow(A, 0) == I2
        assert mat_pow(N, 2) == Z2
        assert mat_pow(M([[2]]), 3) == M([[8]])

    @settings(max_examples=30, deadline=None)
    @given(rational_matrices())
    def test_matches_repeated_product(self, A):
        P = A.one()
        for k in range(5):
            assert mat_pow(A, k) == P
            P = P @ A

    def test_negative_exponent(self):
        with pytest.raises(ValueError):
            mat_pow(I2, -1)


class TestRank:
    def test_examples(self):
        assert rank(SquareMatrix.identity(3)) == 3
        assert rank(Z2) == 0
        assert rank(N) == 1

    def test_composite_modulus_unsupported(self):
        with pytest.raises(UnsupportedRingError):
            rank(SquareMatrix.identity(2, mod(6)))

    @settings(max_examples=30, deadline=None)
    @given(matrix_pairs())
    def test_product_rank_bound(self, pair):
        A, B = pair
        assert rank(A @ B) <= min(rank(A), rank(B))


class TestSolve:
    def test_examples(self):
        B = M([[1, 2], [3, 4]])
        assert solve_left(I2, B) == B
        assert solve_left(Z2, B) is None
        E = M([[1, 0], [0, 0]])
        assert solve_left(E, E) == E

    @settings(max_examples=30, deadline=None)
    @given(matrix_pairs())
    def test_solutions_satisfy_the_equation(self, pair):
        A, B = pair
        X = solve_left(A, B)
        if X is not None:
            assert X @ A == B
        Y = solve_right(A, B)
        if Y is not None:
            assert A @ Y == B

    @settings(max_examples=30, deadline=None)
    @given(matrix_pairs())
    def test_consistent_systems_are_solved(self, pair):
        A, C = pair
        # B = C·A 는 X·A = B 의 해 C 를 가진다
        assert solve_left(A, C @ A) is not None
        assert solve_right(A, A @ C) is not None

    def test_matrix_equations(self):
        # X·N = 0 and N·X = 0 → X 는 N 의 배수. free variable 0 → X = 0
        X = solve_matrix_equations([([(I2, N)], Z2), ([(N, I2)], Z2)], 2, RATIONAL)
        assert X == Z2
        A = M([[1, 2], [0, 1]])
        X = solve_matrix_equations([([(A, I2)], I2)], 2, RATIONAL)
        assert A @ X == I2


class TestInverse:
    def test_examples(self):
        assert inverse(I2) == I2
        assert inverse(M([[2]])) == M([[Fraction(1, 2)]])
        assert inverse(N) is None

    @settings(max_examples=30, deadline=None)
    @given(rational_matrices())
    def test_inverse_or_singular(self, A):
        X = inverse(A)
        if X is None:
            assert rank(A) < A.dim
            assert determinant(A) == 0
        else:
            assert X @ A == A.one()
            assert A @ X == A.one()

    def test_composite_modulus(self):
        kind = mod(6)
        A = M([[1, 2], [0, 5]], kind)
        X = inverse(A)
        assert X is not None and A @ X == SquareMatrix.identity(2, kind)
        # det = 2 는 Z/6 의 unit 이 아니다
        assert inverse(M([[2, 0], [0, 1]], kind)) is None

    def test_gaussian(self):
        i = GaussianRational(0, 1)
        A = M([[i, 1], [0, i]], GAUSSIAN)
        assert inverse(A) @ A == SquareMatrix.identity(2, GAUSSIAN)

    @settings(max_examples=30, deadline=None)
    @given(rational_matrices())
    def test_inner_inverse(self, A):
        assert A @ inner_inverse(A) @ A == A


class TestNilpotent:
    def test_examples(self):
        assert is_nilpotent(Z2)
        assert not is_nilpotent(I2)
        assert is_nilpotent(M([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))


class TestPolynomials:
    def test_poly_eval(self):
        A = M([[1, 1], [0, 1]])
        # 1 + 2A + A^2
        assert poly_eval([1, 2, 1], A) == I2 + A.scale(2) + A @ A

    def test_geometric_sum(self):
        assert geometric_sum(N, 0) == Z2
        assert geometric_sum(N, 3) == I2 + N

    @settings(max_examples=30, deadline=None)
    @given(rational_matrices())
    def test_telescoping(self, A):
        one = A.one()
        assert (one - A) @ geometric_sum(A, 4) == one - mat_pow(A, 4)


class TestConversions:
    def test_mod_lifts_representatives(self):
        A = M([[5, 1], [0, 3]], mod(6))
        assert A.to_kind(RATIONAL) == M([[5, 1], [0, 3]])

    def test_entries_as_strings(self):
        assert M([[Fraction(1, 2), -1], [0, 3]]).entries_as_strings() == [["1/2", "-1"], ["0", "3"]]

    def test_not_square(self):
        with pytest.raises(DimensionMismatchError):
            SquareMatrix(RATIONAL, ((Fraction(1), Fraction(2)),))

from fractions import Fraction

import pytest
from hypothesis import given, settings

from codes.algebra import SquareMatrix, poly_eval
from codes.drazin import (
    Kind, Side, Witness, azumaya_left, azumaya_right, core_report, drazin_index, drazin_inverse, group_inverse,
    intertwine_check, is_polynomial_in, left_normal_form_checks, left_strongly_pi_witness,
    normalize_left_gdrazin, normalize_right_gdrazin, reverse_order, reverse_order_left, right_normal_form_checks,
    right_strongly_pi_witness, sided_agreement_check, verify_drazin, verify_gdrazin, verify_left_drazin,
    verify_left_gdrazin, verify_left_pi_regular, verify_left_regular, verify_left_strongly_pi,
    verify_right_drazin, verify_right_gdrazin, verify_right_regular, verify_right_strongly_pi, verify_witness,
)
from codes.errors import IndexTooLargeError, InvariantViolation, PreconditionViolated, UnsupportedRingError
from codes.ring_lab import FiniteRingSpec, enumerate_elements
from codes.scalars import mod
from tests.strategies import rational_matrices

I = SquareMatrix.identity(2)
O = SquareMatrix.zeros(2)
N = SquareMatrix.from_rows([[0, 1], [0, 0]])
D = SquareMatrix.diag([2, 0])
D_INV = SquareMatrix.diag([Fraction(1, 2), 0])


class TestDrazinIndex:
    @pytest.mark.parametrize("A, k", [(I, 0), (N, 2), (D, 1), (O, 1)])
    def test_examples(self, A, k):
        assert drazin_index(A) == k

    def test_needs_a_field(self):
        with pytest.raises(UnsupportedRingError):
            drazin_index(SquareMatrix.identity(2, mod(6)))


class TestDrazinInverse:
    def test_examples(self):
        assert drazin_inverse(I) == (I, 0)
        assert drazin_inverse(N) == (O, 2)
        assert drazin_inverse(D) == (D_INV, 1)

    @settings(max_examples=40, deadline=None)
    @given(rational_matrices(max_dim=4))
    def test_self_consistency(self, A):
        rep = core_report(A)
        assert rep.passed, rep.failed_checks

    @settings(max_examples=40, deadline=None)
    @given(rational_matrices(max_dim=4))
    def test_drazin_inverse_is_a_polynomial_in_a(self, A):
        X, _ = drazin_inverse(A)
        assert is_polynomial_in(X, A)


class TestGroupInverse:
    def test_examples(self):
        assert group_inverse(I) == I
        E = SquareMatrix.from_rows([[1, 1], [0, 0]])
        assert group_inverse(E) == E

    def test_index_too_large(self):
        with pytest.raises(IndexTooLargeError):
            group_inverse(N)


class TestPredicates:
    def test_two_sided(self):
        assert verify_drazin(I, I, 0)
        assert verify_drazin(N, O, 2)
        assert not verify_drazin(N, O, 1)

    @pytest.mark.parametrize("verify", [verify_left_drazin, verify_right_drazin])
    def test_one_sided_drazin(self, verify):
        assert verify(I, I, 0)
        assert verify(N, O, 2)
        assert verify(D, D_INV, 1)
        assert not verify(N, O, 1)

    @pytest.mark.parametrize("verify", [verify_gdrazin, verify_left_gdrazin, verify_right_gdrazin])
    def test_generalized(self, verify):
        assert verify(I, I)
        assert verify(N, O)
        idem = SquareMatrix.diag([1, 0])
        assert verify(idem, idem)
        assert not verify(I, O)

    @pytest.mark.parametrize("verify", [verify_left_regular, verify_right_regular])
    def test_regular(self, verify):
        assert verify(I, I)
        assert verify(O, N)
        # x·N² = 0 ≠ N
        for x in (O, I, N, D):
            assert not verify(N, x)

    def test_regular_nilpotent_exhaustive_over_z2(self):
        ring = FiniteRingSpec(2, 2)
        n2 = SquareMatrix.from_rows([[0, 1], [0, 0]], mod(2))
        assert not any(verify_left_regular(n2, x) for x in enumerate_elements(ring))

    @pytest.mark.parametrize("verify", [verify_left_strongly_pi, verify_right_strongly_pi])
    def test_strongly_pi(self, verify):
        assert verify(I, I, 0)
        assert verify(N, O, 2)
        assert verify(D, D_INV, 1)
        assert not verify(N, O, -1)

    def test_pi_regular(self):
        assert verify_left_pi_regular(N, O, 2)
        assert not verify_left_pi_regular(N, O, 1)

    def test_verify_witness_dispatch(self):
        assert verify_witness(D, Witness(D_INV, Side.LEFT, Kind.DRAZIN, 1))
        assert verify_witness(D, Witness(D_INV, Side.TWO_SIDED, Kind.GROUP, 1))
        assert not verify_witness(N, Witness(O, Side.RIGHT, Kind.DRAZIN, 1))

    def test_group_witness_requires_index_one(self):
        with pytest.raises(InvariantViolation):
            Witness(I, Side.LEFT, Kind.GROUP, 2)


class TestWitnessSolvers:
    @settings(max_examples=30, deadline=None)
    @given(rational_matrices())
    def test_strongly_pi_witness_at_drazin_index(self, A):
        k = drazin_index(A)
        x = left_strongly_pi_witness(A, k)
        y = right_strongly_pi_witness(A, k)
        assert x is not None and verify_left_strongly_pi(A, x, k)
        assert y is not None and verify_right_strongly_pi(A, y, k)

    def test_no_witness_below_index(self):
        assert left_strongly_pi_witness(N, 1) is None
        assert right_strongly_pi_witness(N, 1) is None


class TestAzumaya:
    def test_examples(self):
        A = SquareMatrix.from_rows([[2, 1], [0, 1]])
        A_inv = SquareMatrix.from_rows([[Fraction(1, 2), Fraction(-1, 2)], [0, 1]])
        assert azumaya_left(A, A_inv, 0).candidate == A_inv
        assert azumaya_left(N, O, 2).candidate == O
        assert azumaya_right(N, O, 2).candidate == O

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            azumaya_left(N, O, 1)

    @settings(max_examples=30, deadline=None)
    @given(rational_matrices())
    def test_realization_is_a_drazin_witness(self, A):
        k = drazin_index(A)
        w = azumaya_left(A, left_strongly_pi_witness(A, k), k)
        assert verify_left_drazin(A, w.candidate, k)
        w = azumaya_right(A, right_strongly_pi_witness(A, k), k)
        assert verify_right_drazin(A, w.candidate, k)


class TestNormalization:
    def test_examples(self):
        assert normalize_left_gdrazin(I, I) == I
        assert normalize_left_gdrazin(N, O) == O
        assert normalize_right_gdrazin(N, O) == O

    @settings(max_examples=30, deadline=None)
    @given(rational_matrices())
    def test_normal_forms(self, A):
        X, _ = drazin_inverse(A)
        assert all(left_normal_form_checks(A, normalize_left_gdrazin(A, X)).values())
        checks = right_normal_form_checks(A, normalize_right_gdrazin(A, X))
        checks.pop("aca=c^2a (as printed)")
        assert all(checks.values())

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            normalize_left_gdrazin(I, O)


class TestIntertwine:
    def test_examples(self):
        assert intertwine_check(I, I, I, I, I)
        A = SquareMatrix.from_rows([[1, 1], [0, 0]])
        X, _ = drazin_inverse(A)
        assert intertwine_check(A, A, A, X, X)

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            intertwine_check(N, I, I, O, I)


class TestReverseOrder:
    def test_identity(self):
        assert reverse_order_left(I, I, I, I, 0).candidate == I

    def test_scaled_nilpotent(self):
        two = I.scale(2)
        w = reverse_order(two, N, I.scale(Fraction(1, 2)), O, Side.LEFT, 2)
        assert w.candidate == O
        assert verify_left_drazin(two @ N, w.candidate, w.index)

    def test_not_a_polynomial(self):
        with pytest.raises(PreconditionViolated):
            reverse_order(N, N.transpose(), O, O, Side.LEFT, 2)

    @settings(max_examples=30, deadline=None)
    @given(rational_matrices(min_dim=1, max_dim=3))
    def test_polynomial_family(self, b):
        a = poly_eval([1, 3, 1], b)
        x, _ = drazin_inverse(a)
        y, j = drazin_inverse(b)
        for side, verify in ((Side.LEFT, verify_left_gdrazin), (Side.RIGHT, verify_right_gdrazin)):
            w = reverse_order(a, b, x, y, side, generalized=True)
            assert verify(a @ b, w.candidate)
            w = reverse_order(a, b, x, y, side, j)
            assert w.index is not None


class TestSidedAgreement:
    def test_examples(self):
        assert sided_agreement_check(I, I, 0, I, 0)
        assert sided_agreement_check(N, O, 2, O, 2)

    def test_non_minimal_index(self):
        with pytest.raises(PreconditionViolated):
            sided_agreement_check(I, I, 1, I, 0)

    @settings(max_examples=30, deadline=None)
    @given(rational_matrices())
    def test_drazin_inverse_agrees(self, A):
        X, k = drazin_inverse(A)
        assert sided_agreement_check(A, X, k, X, k)

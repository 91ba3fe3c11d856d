from fractions import Fraction
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings

from codes.algebra import SquareMatrix, rank
from codes.errors import UnsupportedRingError
from codes.generators import planted_product
from codes.intertwine import IntertwinePair, pair_idempotent_family
from codes.ring_lab import FiniteRingSpec
from codes.scalars import GAUSSIAN, GaussianRational, mod
from codes.spectra import (
    JordanSpec, charpoly_equal, commuting_radius_check, eigenvalues, group_spectrum, intertwine_identity_check,
    jordan_block_matrix, jordan_realize, lifted_identity_audit, point_index, product_identity_check,
)
from tests.strategies import matrix_pairs, seeds

i = GaussianRational(0, 1)


def J(*blocks):
    return jordan_block_matrix(JordanSpec(tuple(blocks)))


class TestJordanRealize:
    def test_examples(self):
        assert jordan_realize(JordanSpec(((0, 1),))) == SquareMatrix.from_rows([[0]])
        spec = JordanSpec(((1, 2),))
        assert jordan_realize(spec, transform=SquareMatrix.identity(2)) == SquareMatrix.from_rows([[1, 1], [0, 1]])

    def test_gaussian_blocks(self):
        spec = JordanSpec(((i, 2), (1, 1)))
        assert spec.kind == GAUSSIAN and spec.dim == 3
        assert spec.largest_block(i) == 2
        assert spec.largest_block(5) == 0

    def test_bad_block(self):
        with pytest.raises(ValueError):
            JordanSpec(((1, 0),))

    @settings(max_examples=20, deadline=None)
    @given(seeds())
    def test_similarity_keeps_charpoly(self, seed):
        spec = JordanSpec(((2, 2), (0, 1), (Fraction(-1, 2), 1)))
        A = jordan_realize(spec, seed)
        assert charpoly_equal(A, jordan_block_matrix(spec))
        assert point_index(A, 2) == 2


class TestEigenvalues:
    def test_rational(self):
        eig, residual = eigenvalues(J((2, 2), (0, 1), (5, 1)))
        assert eig == [0, 2, 5]
        assert residual is None

    def test_gaussian_roots_of_rational_matrix(self):
        # t² + 1 = (t − i)(t + i)
        eig, residual = eigenvalues(SquareMatrix.from_rows([[0, -1], [1, 0]]))
        assert eig == [-i, i]
        assert residual is None

    def test_residual_factor(self):
        eig, residual = eigenvalues(SquareMatrix.from_rows([[0, 2], [1, 0]]))
        assert eig == []
        assert residual is not None and "t**2 - 2" in residual

    def test_mod_unsupported(self):
        with pytest.raises(UnsupportedRingError):
            eigenvalues(SquareMatrix.identity(2, mod(5)))


class TestPointIndex:
    def test_examples(self):
        I = SquareMatrix.identity(2)
        assert point_index(I, 1) == 1
        assert point_index(I, 0) == 0
        assert point_index(J((5, 2)), 5) == 2

    def test_gaussian_point(self):
        assert point_index(J((i, 3)), i) == 3
        assert point_index(J((i, 3)), 0) == 0


class TestGroupSpectrum:
    def test_diagonalizable(self):
        rep = group_spectrum(SquareMatrix.diag([1, 2, 2]))
        assert rep.group_spectrum == []
        assert rep.point_indices == {GaussianRational(1): 1, GaussianRational(2): 1}
        assert rep.drazin_spectra_empty

    def test_jordan_blocks(self):
        assert group_spectrum(J((3, 2))).group_spectrum == [GaussianRational(3)]
        assert group_spectrum(J((2, 2), (0, 1), (5, 1))).group_spectrum == [GaussianRational(2)]

    def test_record(self):
        record = group_spectrum(J((0, 2), (1, 1))).to_record()
        assert record["group_spectrum"] == ["0"]
        assert record["point_indices"] == {"0": 2, "1": 1}


class TestProductIdentity:
    def test_identity_factor(self):
        A = J((2, 2), (0, 1))
        rep = product_identity_check(A, SquareMatrix.identity(3))
        assert rep.passed, rep.failed_checks

    def test_non_commuting_idempotents(self):
        # AC, CA 모두 idempotent 이고 AC ≠ CA
        A = SquareMatrix.from_rows([[1, 0], [0, 0]])
        C = SquareMatrix.from_rows([[1, 1], [0, 0]])
        rep = product_identity_check(A, C)
        assert rep.passed, rep.failed_checks
        assert rep.indices["ind(I-AC)"] == rep.indices["ind(I-CA)"]

    def test_rank_one_products(self):
        # AC = E11, CA = E22
        A = SquareMatrix.from_rows([[0, 1], [0, 0]])
        C = SquareMatrix.from_rows([[0, 0], [1, 0]])
        rep = product_identity_check(A, C)
        assert rep.passed, rep.failed_checks
        assert rep.indices["ind(I-AC)"] == 1

    def test_singular_c_with_group_spectrum(self):
        # AC = diag(J₂(2), E11), CA = diag(J₂(2), E22), rank C = 3
        A = SquareMatrix.from_rows([[2, 1, 0, 0], [0, 2, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
        C = SquareMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]])
        assert rank(C) == 3
        assert group_spectrum(A @ C).group_spectrum == [GaussianRational(2)]
        assert group_spectrum(C @ A).group_spectrum == [GaussianRational(2)]
        rep = product_identity_check(A, C)
        assert rep.passed, rep.failed_checks
        assert rep.indices["ind(I-AC)"] == rep.indices["ind(I-CA)"] == 1

    @pytest.mark.parametrize("dim", [3, 4])
    @pytest.mark.parametrize("seed", range(4))
    def test_planted_product_family(self, dim, seed):
        inst = planted_product(np.random.default_rng(seed), SimpleNamespace(dim=dim))
        A, C = inst.matrices["a"], inst.matrices["c"]
        lam = inst.meta["planted"]
        assert lam != 0 and rank(C) < dim
        assert lam in group_spectrum(A @ C).group_spectrum
        assert lam in group_spectrum(C @ A).group_spectrum
        rep = product_identity_check(A, C)
        assert rep.passed, rep.failed_checks

    @settings(max_examples=20, deadline=None)
    @given(matrix_pairs(max_dim=3))
    def test_random(self, pair):
        A, C = pair
        rep = product_identity_check(A, C)
        assert rep.passed, rep.failed_checks


class TestIntertwineIdentity:
    @settings(max_examples=15, deadline=None)
    @given(seeds())
    def test_idempotent_pairs(self, seed):
        pair = pair_idempotent_family(1, 3, seed=seed)
        rep = intertwine_identity_check(pair)
        assert rep.passed, rep.failed_checks

    def test_lift_breaking_pair_is_skipped(self):
        # mod 2 에서 a² = 0 이지만 ℚ 에서는 a² = 2a
        kind = mod(2)
        a = SquareMatrix.from_rows([[1, 1], [1, 1]], kind)
        rep = intertwine_identity_check(IntertwinePair(a, SquareMatrix.zeros(2, kind), 1))
        assert rep.skipped and rep.passed
        assert not rep.checks

    def test_lift_that_stays_a_pair(self):
        kind = mod(2)
        e = SquareMatrix.from_rows([[1, 0], [0, 0]], kind)
        f = SquareMatrix.from_rows([[1, 1], [0, 0]], kind)
        rep = intertwine_identity_check(IntertwinePair(e, f, 1))
        assert not rep.skipped
        assert rep.passed, rep.failed_checks

    def test_every_surviving_lift_of_m2_z2(self):
        rep = lifted_identity_audit(FiniteRingSpec(2, 2), 1)
        assert rep.passed, rep.failed_checks
        assert rep.indices == {"pairs": 28, "kept": 26, "dropped": 2}


class TestCommutingRadius:
    def test_rational(self):
        rep = commuting_radius_check([1, 2, Fraction(-1, 2)], [3, -1, 0], seed=0)
        assert rep.passed, rep.failed_checks

    def test_gaussian(self):
        rep = commuting_radius_check([i, 2], [1, -i], seed=1)
        assert rep.passed, rep.failed_checks

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            commuting_radius_check([1], [1, 2])

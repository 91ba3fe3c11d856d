from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings

from codes.algebra import SquareMatrix
from codes.drazin import (
    Kind, Side, drazin_inverse, left_regular_witness, left_strongly_pi_witness, drazin_index,
    right_regular_witness, right_strongly_pi_witness, verify_left_drazin, verify_left_gdrazin,
    verify_left_regular, verify_left_strongly_pi, verify_right_drazin, verify_right_gdrazin,
    verify_right_regular, verify_right_strongly_pi,
)
from codes.errors import InvariantViolation, PreconditionViolated, RingTooLargeError
from codes.generators import case_two_quad, planted_pair, solved_quad
from codes.intertwine import (
    IntertwinePair, pair_condition, pair_drazin_transfer, pair_exhaustive, pair_gdrazin_transfer,
    pair_group_transfer, pair_idempotent_family, pair_index_preserved, pair_planted_family,
    pair_regular_transfer, pair_strong_pi_transfer, quad_to_pair,
)
from codes.ring_lab import FiniteRingSpec, enumerate_elements
from codes.scalars import mod
from tests.strategies import classical_quads, seeds

I = SquareMatrix.identity(2)
O = SquareMatrix.zeros(2)
N = SquareMatrix.from_rows([[0, 1], [0, 0]])

DRAZIN_SIDES = ((Side.LEFT, verify_left_drazin), (Side.RIGHT, verify_right_drazin))
GDRAZIN_SIDES = ((Side.LEFT, verify_left_gdrazin), (Side.RIGHT, verify_right_gdrazin))


def planted(seed, dim=3, **params):
    return planted_pair(np.random.default_rng(seed), SimpleNamespace(dim=dim, **params)).pair


class TestPairCondition:
    def test_examples(self):
        assert pair_condition(I, I, 1)
        assert pair_condition(O, O, 3)
        E = SquareMatrix.from_rows([[1, 0], [0, 0]])
        F = SquareMatrix.from_rows([[1, 1], [0, 0]])
        assert pair_condition(E, F, 1)
        # N·I ≠ I
        assert not pair_condition(N, I, 1)

    def test_invariant_enforced(self):
        with pytest.raises(InvariantViolation):
            IntertwinePair(N, I, 1)
        with pytest.raises(InvariantViolation):
            IntertwinePair(I, I, 0)

    def test_swapped(self):
        E = SquareMatrix.from_rows([[1, 0], [0, 0]])
        F = SquareMatrix.from_rows([[1, 1], [0, 0]])
        pair = IntertwinePair(E, F, 1).swapped()
        assert pair.a == F and pair.b == E


class TestIdempotentFamily:
    def test_extreme_ranks(self):
        pair = pair_idempotent_family(0, 3, seed=1)
        assert pair.a.is_zero() and pair.b.is_zero()
        pair = pair_idempotent_family(3, 3, seed=1)
        assert pair.a == pair.b == SquareMatrix.identity(3)

    def test_bad_rank(self):
        with pytest.raises(ValueError):
            pair_idempotent_family(4, 3)

    @settings(max_examples=20, deadline=None)
    @given(seeds())
    def test_idempotents(self, seed):
        pair = pair_idempotent_family(1, 3, seed=seed)
        assert pair.a @ pair.a == pair.a
        assert pair.b @ pair.b == pair.b
        assert pair_index_preserved(pair)


class TestPlantedFamily:
    def test_nilpotent_block_must_vanish(self):
        with pytest.raises(ValueError):
            pair_planted_family(I, 3, 2)

    @settings(max_examples=20, deadline=None)
    @given(seeds())
    def test_condition_and_index(self, seed):
        pair = planted(seed)
        assert pair_condition(pair.a, pair.b, pair.n)
        assert pair_index_preserved(pair)


class TestPairRegular:
    def test_zero_pair(self):
        pair = IntertwinePair(O, O, 1)
        assert pair_regular_transfer(pair, I) == I

    def test_precondition(self):
        # 1 − a = I, O·I ≠ I
        with pytest.raises(PreconditionViolated):
            pair_regular_transfer(IntertwinePair(O, O, 1), O)

    @settings(max_examples=20, deadline=None)
    @given(seeds())
    def test_both_sides(self, seed):
        pair = pair_idempotent_family(1, 3, seed=seed)
        one = pair.one
        for side, solve, verify in ((Side.LEFT, left_regular_witness, verify_left_regular),
                                    (Side.RIGHT, right_regular_witness, verify_right_regular)):
            y = pair_regular_transfer(pair, solve(one - pair.a), side)
            assert verify(one - pair.b, y)
            assert verify(one - pair.a, pair_regular_transfer(pair.swapped(), y, side))


class TestPairStrongPi:
    @pytest.mark.parametrize("seed", range(6))
    def test_planted(self, seed):
        pair = planted(seed)
        alpha, beta = pair.one - pair.a, pair.one - pair.b
        p = drazin_index(alpha)
        for side, solve, verify in ((Side.LEFT, left_strongly_pi_witness, verify_left_strongly_pi),
                                    (Side.RIGHT, right_strongly_pi_witness, verify_right_strongly_pi)):
            y = pair_strong_pi_transfer(pair, solve(alpha, p), p, side)
            assert verify(beta, y, p)


class TestPairDrazin:
    def test_zero_pair_index_zero(self):
        w = pair_drazin_transfer(IntertwinePair(O, O, 1), I, 0)
        assert w.candidate == I and w.index == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_planted(self, seed):
        pair = planted(seed)
        x, k = drazin_inverse(pair.one - pair.a)
        for side, verify in DRAZIN_SIDES:
            w = pair_drazin_transfer(pair, x, k, side)
            assert w.kind is Kind.DRAZIN
            assert verify(pair.one - pair.b, w.candidate, k)
            back = pair_drazin_transfer(pair.swapped(), w.candidate, k, side)
            assert verify(pair.one - pair.a, back.candidate, k)

    def test_planted_index_two(self):
        pair = planted(5, dim=3, planted_index=2, n=1)
        x, k = drazin_inverse(pair.one - pair.a)
        assert k == 2
        w = pair_drazin_transfer(pair, x, k)
        assert verify_left_drazin(pair.one - pair.b, w.candidate, 2)

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            pair_drazin_transfer(IntertwinePair(O, O, 1), O, 0)


class TestPairGroup:
    @pytest.mark.parametrize("seed", range(6))
    def test_idempotent(self, seed):
        pair = pair_idempotent_family(1, 3, seed=seed)
        x, k = drazin_inverse(pair.one - pair.a)
        assert k == 1
        for side, verify in DRAZIN_SIDES:
            w = pair_group_transfer(pair, x, side)
            assert w.kind is Kind.GROUP
            assert verify(pair.one - pair.b, w.candidate, 1)


class TestPairGDrazin:
    @pytest.mark.parametrize("seed", range(8))
    def test_planted(self, seed):
        pair = planted(seed)
        x, _ = drazin_inverse(pair.one - pair.a)
        for side, verify in GDRAZIN_SIDES:
            w = pair_gdrazin_transfer(pair, x, side)
            assert w.kind is Kind.GENERALIZED
            assert verify(pair.one - pair.b, w.candidate)
            back = pair_gdrazin_transfer(pair.swapped(), w.candidate, side)
            assert verify(pair.one - pair.a, back.candidate)


class TestQuadToPair:
    def test_examples(self):
        pair = quad_to_pair(I, I, I, I, 1)
        assert pair is not None and pair.a == I and pair.b == I
        # ac = N, db = Nᵀ: N·Nᵀ ≠ (Nᵀ)² = 0
        assert quad_to_pair(I, N.transpose(), N, I, 1) is None

    @settings(max_examples=30, deadline=None)
    @given(classical_quads())
    def test_every_quad_reduces(self, q):
        for n in (1, 2, 3):
            assert quad_to_pair(q.a, q.b, q.c, q.d, n) is not None

    @pytest.mark.parametrize("family", [case_two_quad, solved_quad])
    @pytest.mark.parametrize("seed", range(5))
    def test_every_family_quad_reduces(self, family, seed):
        q = family(np.random.default_rng(seed), SimpleNamespace(dim=3)).quad
        pair = quad_to_pair(q.a, q.b, q.c, q.d, 2)
        assert pair is not None and pair.a == q.ac


class TestPairExhaustive:
    def test_m2_z2(self):
        ring = FiniteRingSpec(2, 2)
        kind = mod(2)
        pairs = list(pair_exhaustive(ring, 1))
        # 16 개의 (a, a), 0 과 제곱 0 원소, 같은 image 의 rank-1 idempotent 쌍
        assert len(pairs) == 28
        found = {(p.a, p.b) for p in pairs}
        assert all((a, a) in found for a in enumerate_elements(ring))
        E = SquareMatrix.from_rows([[1, 0], [0, 0]], kind)
        F = SquareMatrix.from_rows([[1, 1], [0, 0]], kind)
        assert (E, F) in found
        # 조건이 (a, b) 에 대해 대칭
        assert all((b, a) in found for a, b in found)

    def test_budget(self):
        ring = FiniteRingSpec(2, 3, pair_budget=100)
        with pytest.raises(RingTooLargeError):
            list(pair_exhaustive(ring, 1))

    def test_transfers_over_z2(self):
        E = SquareMatrix.from_rows([[1, 0], [0, 0]], mod(2))
        F = SquareMatrix.from_rows([[1, 1], [0, 0]], mod(2))
        pair = IntertwinePair(E, F, 1)
        # 1 − E 는 idempotent: 자기 자신이 index 1 의 Drazin inverse
        alpha = pair.one - E
        w = pair_drazin_transfer(pair, alpha, 1)
        assert verify_left_drazin(pair.one - F, w.candidate, 1)
        assert w.candidate.kind == mod(2)

"""Transfers between 1 − a and 1 − b for pairs with ab^n = b^{n+1}, ba^n = a^{n+1}.

The pair condition is symmetric in (a, b), so every reverse transfer is the
forward transfer applied to ``pair.swapped()``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from codes.algebra import SquareMatrix, geometric_sum, inverse, mat_pow
from codes.drazin import (
    Kind, Side, Witness, drazin_index, verify_left_drazin, verify_left_gdrazin, verify_left_regular,
    verify_left_strongly_pi, verify_right_drazin, verify_right_gdrazin, verify_right_regular,
    verify_right_strongly_pi,
)
from codes.ring_lab import FiniteRingSpec, enumerate_elements
from codes.errors import (
    DimensionMismatchError, InvariantViolation, PreconditionViolated, RingTooLargeError,
    ScalarMismatchError, SingularResolventError,
)
from codes.scalars import RATIONAL, ScalarKind


@dataclass(frozen=True)
class IntertwinePair:
    a: SquareMatrix
    b: SquareMatrix
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvariantViolation(f"n must be >= 1, got {self.n}")
        if self.a.dim != self.b.dim:
            raise DimensionMismatchError("pair members must share one dimension")
        if self.a.kind != self.b.kind:
            raise ScalarMismatchError("pair members must share one scalar kind")
        if not pair_condition(self.a, self.b, self.n):
            raise InvariantViolation("ab^n = b^{n+1} and ba^n = a^{n+1} must hold")

    def swapped(self) -> IntertwinePair:
        return IntertwinePair(self.b, self.a, self.n)

    @property
    def one(self) -> SquareMatrix:
        return self.a.one()

    def matrices(self) -> dict[str, SquareMatrix]:
        return {"a": self.a, "b": self.b}


def pair_condition(a: SquareMatrix, b: SquareMatrix, n: int) -> bool:
    b_n = mat_pow(b, n)
    if a @ b_n != b_n @ b:
        return False
    a_n = mat_pow(a, n)
    return b @ a_n == a_n @ a


def _tail_sum(m: SquareMatrix, n: int) -> SquareMatrix:
    """S_m = Σ_{i=0}^{2n−1} m^i, (1 − m)·S_m = 1 − m^{2n}"""
    return geometric_sum(m, 2 * n)


def _projection(alpha: SquareMatrix, x: SquareMatrix, side: Side) -> SquareMatrix:
    one = alpha.one()
    return one - x @ alpha if side is Side.LEFT else one - alpha @ x


def _regular_formula(pair: IntertwinePair, x: SquareMatrix) -> SquareMatrix:
    a_n, b_n = mat_pow(pair.a, pair.n), mat_pow(pair.b, pair.n)
    return _tail_sum(pair.b, pair.n) + a_n @ x @ b_n


def pair_regular_transfer(pair: IntertwinePair, x: SquareMatrix, side: Side = Side.LEFT) -> SquareMatrix:
    """y = Σ_{i<2n} b^i + a^n·x·b^n"""
    side = Side(side)
    verify = verify_left_regular if side is Side.LEFT else verify_right_regular
    one = pair.one
    if not verify(one - pair.a, x):
        raise PreconditionViolated(f"x is not a {side.value} regular witness of 1 - a")
    y = _regular_formula(pair, x)
    if not verify(one - pair.b, y):
        raise InvariantViolation("transferred regular witness fails")
    return y


def pair_strong_pi_transfer(pair: IntertwinePair, x: SquareMatrix, idx: int,
                            side: Side = Side.LEFT) -> SquareMatrix:
    side = Side(side)
    verify = verify_left_strongly_pi if side is Side.LEFT else verify_right_strongly_pi
    one = pair.one
    if not verify(one - pair.a, x, idx):
        raise PreconditionViolated(f"x is not a {side.value} strongly pi-regular witness of 1 - a")
    y = _regular_formula(pair, x)
    if not verify(one - pair.b, y, idx):
        raise InvariantViolation("transferred strongly pi-regular witness fails")
    return y


def pair_drazin_transfer(pair: IntertwinePair, x: SquareMatrix, k: int, side: Side = Side.LEFT) -> Witness:
    """y = (1 − a^n·r·p·b^n)·S_b + a^n·x·b^n, r = Σ_{i<k}(1 − a^{2n})^i"""
    side = Side(side)
    verify = verify_left_drazin if side is Side.LEFT else verify_right_drazin
    one = pair.one
    alpha = one - pair.a
    if not verify(alpha, x, k):
        raise PreconditionViolated(f"x is not a {side.value} Drazin inverse of 1 - a at index {k}")
    a_n, b_n = mat_pow(pair.a, pair.n), mat_pow(pair.b, pair.n)
    p = _projection(alpha, x, side)
    r = geometric_sum(one - a_n @ a_n, k)
    correction = a_n @ r @ p @ b_n
    # p 는 a 와 가환, r 는 a 의 다항식
    if correction != a_n @ p @ r @ b_n:
        raise InvariantViolation("a^n r p b^n != a^n p r b^n")
    y = (one - correction) @ _tail_sum(pair.b, pair.n) + a_n @ x @ b_n
    if not verify(one - pair.b, y, k):
        raise InvariantViolation("transferred Drazin witness fails")
    return Witness(y, side, Kind.DRAZIN, k)


def pair_group_transfer(pair: IntertwinePair, x: SquareMatrix, side: Side = Side.LEFT) -> Witness:
    w = pair_drazin_transfer(pair, x, 1, side)
    return Witness(w.candidate, w.side, Kind.GROUP, 1)


def pair_gdrazin_transfer(pair: IntertwinePair, x: SquareMatrix, side: Side = Side.LEFT) -> Witness:
    """y = (1 − a^n·Z⁻¹·p·b^n)·S_b + a^n·x·b^n, Z = 1 − p(1 − a^{2n})"""
    side = Side(side)
    verify = verify_left_gdrazin if side is Side.LEFT else verify_right_gdrazin
    one = pair.one
    alpha = one - pair.a
    if not verify(alpha, x):
        raise PreconditionViolated(f"x is not a {side.value} generalized Drazin inverse of 1 - a")
    a_n, b_n = mat_pow(pair.a, pair.n), mat_pow(pair.b, pair.n)
    p = _projection(alpha, x, side)
    z_inv = inverse(one - p @ (one - a_n @ a_n))
    if z_inv is None:
        raise SingularResolventError("1 - p(1 - a^{2n}) is singular")
    y = (one - a_n @ z_inv @ p @ b_n) @ _tail_sum(pair.b, pair.n) + a_n @ x @ b_n
    if not verify(one - pair.b, y):
        raise InvariantViolation("transferred generalized Drazin witness fails")
    return Witness(y, side, Kind.GENERALIZED)


def pair_index_preserved(pair: IntertwinePair) -> bool:
    one = pair.one
    return drazin_index(one - pair.a) == drazin_index(one - pair.b)


def quad_to_pair(a, b, c, d, n: int) -> IntertwinePair | None:
    """ac(db)^n = (db)^{n+1}, db(ac)^n = (ac)^{n+1} 이면 (ac, db, n)"""
    ac, db = a @ c, d @ b
    if not pair_condition(ac, db, n):
        return None
    return IntertwinePair(ac, db, n)


### Generators
def _unimodular(rng: np.random.Generator, n: int, kind: ScalarKind) -> tuple[SquareMatrix, SquareMatrix]:
    """S = L·U (unit triangular 정수 행렬), S 와 S⁻¹"""
    L = [[1 if i == j else (int(rng.integers(-2, 3)) if i > j else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (int(rng.integers(-2, 3)) if i < j else 0) for j in range(n)] for i in range(n)]
    S = SquareMatrix.from_rows(L, kind) @ SquareMatrix.from_rows(U, kind)
    return S, inverse(S)


def pair_idempotent_family(r: int, m: int, seed: int | None = None, kind: ScalarKind = RATIONAL) -> IntertwinePair:
    """range 가 같은 두 idempotent: a = S·diag(I_r, 0)·S⁻¹, b = S·[[I_r, X], [0, 0]]·S⁻¹"""
    if not 0 <= r <= m:
        raise ValueError(f"rank {r} outside [0, {m}]")
    rng = np.random.default_rng(seed)
    base_a = [[1 if (i == j and i < r) else 0 for j in range(m)] for i in range(m)]
    base_b = [row[:] for row in base_a]
    for i in range(r):
        for j in range(r, m):
            base_b[i][j] = int(rng.integers(-3, 4))
    S, S_inv = _unimodular(rng, m, kind)
    a = S @ SquareMatrix.from_rows(base_a, kind) @ S_inv
    b = S @ SquareMatrix.from_rows(base_b, kind) @ S_inv
    return IntertwinePair(a, b, 1)


def pair_planted_family(block: SquareMatrix, nil_size: int, n: int, seed: int | None = None) -> IntertwinePair:
    """a = S(M ⊕ N)S⁻¹, b = S[[M, Y], [0, 0]]S⁻¹ with N a nilpotent Jordan block, N^n = 0.

    :param block: M (1 − M 의 index 가 1 − a 의 index 가 된다)
    :param nil_size: N 의 크기 (≤ n 이어야 N^n = 0)
    """
    if nil_size > n:
        raise ValueError(f"nilpotent block of size {nil_size} does not vanish at power {n}")
    rng = np.random.default_rng(seed)
    kind = block.kind
    r = block.dim
    m = r + nil_size
    zero = kind.zero()
    a_rows = [[zero] * m for _ in range(m)]
    b_rows = [[zero] * m for _ in range(m)]
    for i in range(r):
        for j in range(r):
            a_rows[i][j] = block[i, j]
            b_rows[i][j] = block[i, j]
        for j in range(r, m):
            b_rows[i][j] = kind.coerce(int(rng.integers(-2, 3)))
    for i in range(r, m - 1):
        a_rows[i][i + 1] = kind.one()
    S, S_inv = _unimodular(rng, m, kind)
    a = S @ SquareMatrix.from_rows(a_rows, kind) @ S_inv
    b = S @ SquareMatrix.from_rows(b_rows, kind) @ S_inv
    return IntertwinePair(a, b, n)


def pair_exhaustive(ring: FiniteRingSpec, n: int) -> Iterator[IntertwinePair]:
    """ring 의 모든 (a, b) 중 pair 조건을 만족하는 것 (row-major, value-major 순서)"""
    count = ring.element_count
    if count * count > ring.pair_budget:
        raise RingTooLargeError(f"{count}^2 pairs exceed the pair budget {ring.pair_budget}")
    elements = enumerate_elements(ring)
    for a, b in itertools.product(elements, repeat=2):
        if pair_condition(a, b, n):
            yield IntertwinePair(a, b, n)

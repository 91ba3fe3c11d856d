"""Instance generators. 모든 generator 는 (rng, params) -> Instance.

FAMILIES 테이블의 이름이 CLI ``--family`` 값이다.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import SimpleNamespace
from typing import Any, Callable

import numpy as np

from codes.algebra import SquareMatrix, inverse, matrix_equation_kernel
from codes.intertwine import IntertwinePair, pair_exhaustive, pair_idempotent_family, pair_planted_family
from codes.ring_lab import FiniteRingSpec
from codes.scalars import RATIONAL, ScalarKind
from codes.spectra import JordanSpec, jordan_realize, random_similarity
from codes.transfer import JacobsonQuad, quad_from_classical, quad_solve


@dataclass
class Instance:
    """generator 출력. 종류에 따라 quad / pair / matrices / ring 중 일부만 채워진다."""
    family: str
    quad: JacobsonQuad | None = None
    pair: IntertwinePair | None = None
    matrices: dict[str, SquareMatrix] = field(default_factory=dict)
    ring: FiniteRingSpec | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def all_matrices(self) -> dict[str, SquareMatrix]:
        out = dict(self.matrices)
        if self.quad is not None:
            out.update(self.quad.matrices())
        if self.pair is not None:
            out.update({f"pair_{k}": v for k, v in self.pair.matrices().items()})
        return out


# planted spectrum 에 쓰는 고유값 후보 (1 은 index 를 심을 때만 사용)
EIGEN_POOL = (Fraction(0), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3), Fraction(-2, 3))


def _param(params: SimpleNamespace | None, name: str, default):
    return getattr(params, name, default) if params is not None else default


def random_rational_matrix(rng: np.random.Generator, n: int, kind: ScalarKind = RATIONAL,
                           low: int = -3, high: int = 3, denominators=(1, 1, 1, 2, 3)) -> SquareMatrix:
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            num = int(rng.integers(low, high + 1))
            den = int(denominators[int(rng.integers(0, len(denominators)))])
            row.append(Fraction(num, den))
        rows.append(row)
    return SquareMatrix.from_rows(rows, kind)


def random_invertible(rng: np.random.Generator, n: int, kind: ScalarKind = RATIONAL) -> SquareMatrix:
    # 대각 성분을 0 이 아닌 값으로 바꾼 unimodular 변환
    S = random_similarity(rng, n, kind)
    D = SquareMatrix.diag([Fraction(int(rng.choice([-2, -1, 1, 2, 3])), int(rng.choice([1, 2]))) for _ in range(n)], kind)
    return S @ D


def planted_spec(rng: np.random.Generator, n: int, one_block: int | None = None,
                 with_zero: bool = False) -> JordanSpec:
    """고유값 1 에 크기 one_block 짜리 Jordan block 을 심은 spectrum

    :param one_block: None 이면 0..n 에서 무작위
    :param with_zero: True 이면 남은 자리 중 하나를 고유값 0 으로
    """
    if one_block is None:
        one_block = int(rng.integers(0, n + 1))
    one_block = min(one_block, n)
    blocks = []
    if one_block:
        blocks.append((Fraction(1), one_block))
    rest = n - one_block
    if with_zero and rest:
        size = int(rng.integers(1, rest + 1))
        blocks.append((Fraction(0), size))
        rest -= size
    while rest:
        size = int(rng.integers(1, rest + 1))
        lam = EIGEN_POOL[int(rng.integers(0, len(EIGEN_POOL)))]
        blocks.append((lam, size))
        rest -= size
    return JordanSpec(tuple(blocks))


def planted_matrix(rng: np.random.Generator, n: int, **kwargs) -> SquareMatrix:
    return jordan_realize(planted_spec(rng, n, **kwargs), rng)


### Families
def classical_quad(rng, params=None) -> Instance:
    """a = M·c⁻¹ so that ac = M carries a planted eigenvalue-1 block"""
    n = _param(params, "dim", 2)
    M = planted_matrix(rng, n, one_block=_param(params, "planted_index", None))
    c = random_invertible(rng, n)
    a = M @ inverse(c)
    return Instance("classical-quad", quad=quad_from_classical(a, c))


def case_two_quad(rng, params=None) -> Instance:
    """a = d, b = 1, c ∈ 1 + ker(z ↦ aza)"""
    n = _param(params, "dim", 2)
    a = planted_matrix(rng, n, one_block=_param(params, "planted_index", None), with_zero=True)
    kernel = matrix_equation_kernel([[(a, a)]], n, a.kind)
    c = a.one()
    for basis in kernel:
        c = c + basis.scale(int(rng.integers(-2, 3)))
    return Instance("case-II-quad", quad=JacobsonQuad(a, a.one(), c, a))


def solved_quad(rng, params=None) -> Instance:
    """classical quad 를 (a, b, c, d) ↦ (s a t⁻¹, u b s⁻¹, t c s⁻¹, s d u⁻¹) 로 옮긴 뒤 c 를 다시 푼다"""
    n = _param(params, "dim", 2)
    seed_quad = classical_quad(rng, params).quad
    s, t, u = (random_invertible(rng, n) for _ in range(3))
    s_inv, t_inv, u_inv = inverse(s), inverse(t), inverse(u)
    a = s @ seed_quad.a @ t_inv
    d = s @ seed_quad.d @ u_inv
    b = u @ seed_quad.b @ s_inv
    quad = quad_solve(a, d, b)
    if quad is None:
        # t c s⁻¹ 가 해이므로 도달하지 않는다
        quad = JacobsonQuad(a, b, t @ seed_quad.c @ s_inv, d)
    return Instance("solved-quad", quad=quad)


def random_matrix_family(rng, params=None) -> Instance:
    """dim 1..max_dim 무작위 행렬 (절반은 planted index)"""
    n = _param(params, "dim", 3)
    if int(rng.integers(0, 2)):
        A = random_rational_matrix(rng, n)
    else:
        spec = planted_spec(rng, n, with_zero=True)
        # 고유값 0 에 심어야 A 자체의 index 가 커진다
        A = jordan_realize(JordanSpec(tuple((lam - 1 if lam == 1 else lam, s) for lam, s in spec.blocks)), rng)
    return Instance("random-matrix", matrices={"a": A})


def matrix_pair_family(rng, params=None) -> Instance:
    n = _param(params, "dim", 3)
    return Instance("random-pair", matrices={"a": random_rational_matrix(rng, n), "c": random_rational_matrix(rng, n)})


def planted_product(rng, params=None) -> Instance:
    """A = S·diag(J₂(λ), N)·T, C = T⁻¹·diag(1, Z)·S⁻¹ (N strictly upper, Z strictly lower)

    AC ~ diag(J₂(λ), NZ), CA ~ diag(J₂(λ), ZN) 이므로 λ ≠ 0 은 두 group spectrum 에 모두 들어간다.
    dim > 2 이면 C 는 singular.
    """
    n = _param(params, "dim", 3)
    r = min(n, 2)
    nonzero = [v for v in EIGEN_POOL if v != 0]
    lam = nonzero[int(rng.integers(0, len(nonzero)))]
    dA = [[Fraction(0)] * n for _ in range(n)]
    dC = [[Fraction(0)] * n for _ in range(n)]
    for i in range(r):
        dA[i][i] = lam
        dC[i][i] = Fraction(1)
    if r == 2:
        dA[0][1] = Fraction(1)
    for i in range(r, n):
        for j in range(r, n):
            if i < j:
                dA[i][j] = Fraction(int(rng.integers(-2, 3)))
            elif i > j:
                dC[i][j] = Fraction(int(rng.integers(-2, 3)))
    S, T = random_invertible(rng, n), random_invertible(rng, n)
    A = S @ SquareMatrix.from_rows(dA) @ T
    C = inverse(T) @ SquareMatrix.from_rows(dC) @ inverse(S)
    # 크기 1 block 의 λ 는 group spectrum 에 들어가지 않는다
    meta = {"planted": lam} if r == 2 else {}
    return Instance("planted-product", matrices={"a": A, "c": C}, meta=meta)


def cline_family(rng, params=None) -> Instance:
    """무작위 a, 가역 c. a 의 절반은 planted (ac 가 큰 index 를 갖도록)"""
    n = _param(params, "dim", 3)
    c = random_invertible(rng, n)
    if int(rng.integers(0, 2)):
        a = random_rational_matrix(rng, n)
    else:
        spec = planted_spec(rng, n, with_zero=True)
        M = jordan_realize(JordanSpec(tuple((lam - 1 if lam == 1 else lam, s) for lam, s in spec.blocks)), rng)
        a = M @ inverse(c)
    return Instance("cline", matrices={"a": a, "c": c})


def idempotent_pair(rng, params=None) -> Instance:
    m = _param(params, "dim", 2)
    r = _param(params, "rank", None)
    if r is None:
        r = int(rng.integers(0, m + 1))
    return Instance("idempotent-pair", pair=pair_idempotent_family(r, m, rng))


def planted_pair(rng, params=None) -> Instance:
    m = _param(params, "dim", 3)
    n = _param(params, "n", int(rng.integers(1, 3)))
    nil_size = int(rng.integers(0, min(n, m - 1) + 1)) if m > 1 else 0
    r = m - nil_size
    block = planted_matrix(rng, r, one_block=_param(params, "planted_index", None))
    return Instance("planted-pair", pair=pair_planted_family(block, nil_size, n, rng))


def planted_jordan(rng, params=None) -> Instance:
    spec = _param(params, "spec", None)
    if spec is None:
        spec = planted_spec(rng, _param(params, "dim", 3))
    elif not isinstance(spec, JordanSpec):
        spec = JordanSpec(tuple(spec))
    seed = None if _param(params, "identity_transform", False) else rng
    A = jordan_realize(spec, seed)
    return Instance("planted-jordan", matrices={"a": A}, meta={"spec": spec})


def exhaustive_ring(rng, params=None) -> Instance:
    """M_k(ℤ/m) 전체. with_pairs 이면 pair 조건을 만족하는 (a, b) 도 미리 모은다 (gen 용)"""
    ring = FiniteRingSpec(
        _param(params, "ring_dim", 2), _param(params, "modulus", 2),
        budget=_param(params, "budget", 10_000), pair_budget=_param(params, "pair_budget", 100_000),
    )
    ring.check_budget()
    n = _param(params, "n", 1)
    meta = {"n": n}
    if _param(params, "with_pairs", False):
        meta["pairs"] = list(pair_exhaustive(ring, n))
    return Instance("exhaustive-ring", ring=ring, meta=meta)


FAMILIES: dict[str, Callable[[np.random.Generator, SimpleNamespace | None], Instance]] = {
    "classical-quad": classical_quad,
    "solved-quad": solved_quad,
    "case-II-quad": case_two_quad,
    "idempotent-pair": idempotent_pair,
    "planted-pair": planted_pair,
    "planted-jordan": planted_jordan,
    "exhaustive-ring": exhaustive_ring,
    "random-matrix": random_matrix_family,
    "random-pair": matrix_pair_family,
    "planted-product": planted_product,
    "cline": cline_family,
}


def get_family(name: str):
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    return FAMILIES[name]

"""Exhaustive witness search over small matrix rings M_k(ℤ/m)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from math import ceil, log2

from codes.algebra import SquareMatrix, powers
from codes.drazin import (
    azumaya_left, azumaya_right, drazin_index, verify_left_drazin, verify_right_drazin,
)
from codes.errors import BudgetExceededError
from codes.reports import VerificationReport
from codes.scalars import ScalarKind, mod


@dataclass(frozen=True)
class FiniteRingSpec:
    """M_dim(ℤ/modulus)

    :param int budget: 원소 개수 상한 (기본 10⁴)
    :param int pair_budget: pair 전수 조사 상한 (기본 10⁵)
    """
    dim: int
    modulus: int
    budget: int = 10_000
    pair_budget: int = 100_000

    @property
    def element_count(self) -> int:
        return self.modulus ** (self.dim * self.dim)

    @property
    def kind(self) -> ScalarKind:
        return mod(self.modulus)

    @property
    def default_bound(self) -> int:
        return self.dim * ceil(log2(self.modulus)) + self.dim

    def check_budget(self):
        if self.element_count > self.budget:
            raise BudgetExceededError(f"{self.element_count} elements exceed budget {self.budget}")

    def __str__(self):
        return f"M{self.dim}(Z{self.modulus})"


@cache
def enumerate_elements(ring: FiniteRingSpec) -> tuple[SquareMatrix, ...]:
    """row-major, value-major 사전식 순서"""
    ring.check_budget()
    k, kind = ring.dim, ring.kind
    return tuple(
        SquareMatrix.from_vector([kind.coerce(v) for v in values], k, kind)
        for values in itertools.product(range(ring.modulus), repeat=k * k)
    )


def _scan(ring: FiniteRingSpec, a: SquareMatrix, bound: int | None, accept):
    # index 우선(minimal), 같은 index 안에서는 사전식 첫 원소
    elements = enumerate_elements(ring)
    bound = ring.default_bound if bound is None else bound
    pw = powers(a, bound + 1)
    for idx in range(bound + 1):
        for x in elements:
            if accept(x, pw, idx):
                return x, idx
    return None


def _left_spi(x, pw, p):
    a = pw[1]
    return x @ pw[p + 1] == pw[p] and a @ x @ a == x @ pw[2]


def _right_spi(y, pw, q):
    a = pw[1]
    return pw[q + 1] @ y == pw[q] and a @ y @ a == pw[2] @ y


def _left_drazin(x, pw, j):
    a = pw[1]
    return x @ pw[j + 1] == pw[j] and x @ x @ a == x and a @ x @ a == x @ pw[2]


def _right_drazin(y, pw, j):
    a = pw[1]
    return pw[j + 1] @ y == pw[j] and a @ y @ y == y and a @ y @ a == pw[2] @ y


def search_left_strongly_pi(ring: FiniteRingSpec, a: SquareMatrix, p_max: int | None = None):
    return _scan(ring, a, p_max, _left_spi)


def search_right_strongly_pi(ring: FiniteRingSpec, a: SquareMatrix, q_max: int | None = None):
    return _scan(ring, a, q_max, _right_spi)


def search_left_drazin(ring: FiniteRingSpec, a: SquareMatrix, j_max: int | None = None):
    return _scan(ring, a, j_max, _left_drazin)


def search_right_drazin(ring: FiniteRingSpec, a: SquareMatrix, j_max: int | None = None):
    return _scan(ring, a, j_max, _right_drazin)


def azumaya_audit(ring: FiniteRingSpec) -> VerificationReport:
    """모든 원소 a 에 대해: strongly-π witness 존재 ⇔ Drazin witness 존재,
    Azumaya 실현이 같은 index 에서 Drazin predicate 를 통과, 최소 index 일치.
    """
    elements = enumerate_elements(ring)
    rep = VerificationReport(f"azumaya-audit/{ring}")
    counterexamples = 0
    max_index = 0
    field_ring = ring.kind.is_field
    for pos, a in enumerate(elements):
        problems = []
        for side, spi_search, dr_search, realize, verify in (
            ("left", search_left_strongly_pi, search_left_drazin, azumaya_left, verify_left_drazin),
            ("right", search_right_strongly_pi, search_right_drazin, azumaya_right, verify_right_drazin),
        ):
            spi = spi_search(ring, a)
            dr = dr_search(ring, a)
            if (spi is None) != (dr is None):
                problems.append(f"{side} equivalence")
                continue
            if spi is None:
                continue
            x, p = spi
            c = realize(a, x, p)
            if not verify(a, c.candidate, p):
                problems.append(f"{side} realization")
            if dr[1] != p:
                problems.append(f"{side} minimal index {p} vs {dr[1]}")
            if field_ring and drazin_index(a) != p:
                problems.append(f"{side} field index {drazin_index(a)} vs {p}")
            max_index = max(max_index, p)
        if problems:
            counterexamples += 1
            rep.notes.append(f"element #{pos} {a.entries_as_strings()}: {'; '.join(problems)}")
            rep.matrices[f"element_{pos}"] = a
    rep.check("strongly-pi <=> drazin, azumaya realization, minimal indices", counterexamples == 0)
    rep.indices["elements_audited"] = len(elements)
    rep.indices["counterexamples"] = counterexamples
    rep.indices["max_index"] = max_index
    if field_ring:
        rep.notes.append(f"{ring}: searched indices compared with rank-based drazin_index")
    return rep

"""Exact spectral computations: planted Jordan forms, point indices, group
spectra and the product / intertwining spectral identities.

Eigenvalues are read off the exact characteristic polynomial factored over
ℚ(i) with sympy; irreducible factors of degree ≥ 2 are kept as the residual.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from codes.algebra import SquareMatrix, inverse
from codes.drazin import drazin_index
from codes.errors import UnsupportedRingError
from codes.intertwine import IntertwinePair, pair_condition, pair_exhaustive
from codes.reports import VerificationReport
from codes.ring_lab import FiniteRingSpec
from codes.scalars import GAUSSIAN, RATIONAL, GaussianRational, ModInt, ScalarKind

_T = sympy.Symbol("t")


@dataclass(frozen=True)
class JordanSpec:
    """(eigenvalue, block size) 목록"""
    blocks: tuple[tuple[GaussianRational, int], ...]

    def __post_init__(self):
        blocks = tuple((_as_gaussian(lam), int(size)) for lam, size in self.blocks)
        if any(size < 1 for _, size in blocks):
            raise ValueError("Jordan block sizes must be positive")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dim(self) -> int:
        return sum(size for _, size in self.blocks)

    @property
    def kind(self) -> ScalarKind:
        return GAUSSIAN if any(lam.im != 0 for lam, _ in self.blocks) else RATIONAL

    def largest_block(self, lam) -> int:
        lam = _as_gaussian(lam)
        return max((size for mu, size in self.blocks if mu == lam), default=0)


@dataclass
class SpectrumReport:
    eigenvalues: list = field(default_factory=list)
    point_indices: dict = field(default_factory=dict)
    group_spectrum: list = field(default_factory=list)
    residual_factor: str | None = None
    # 행렬은 strongly π-regular 이므로 one-sided (generalized) Drazin spectra 는 공집합
    drazin_spectra_empty: bool = True

    def to_record(self) -> dict:
        return {
            "eigenvalues": [str(v) for v in self.eigenvalues],
            "point_indices": {str(k): v for k, v in self.point_indices.items()},
            "group_spectrum": [str(v) for v in self.group_spectrum],
            "residual_factor": self.residual_factor,
            "drazin_spectra_empty": self.drazin_spectra_empty,
        }


def _as_gaussian(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, ModInt):
        raise UnsupportedRingError("eigenvalues are Gaussian rationals")
    return GaussianRational(Fraction(value))


def _sort_key(lam):
    lam = _as_gaussian(lam)
    return (lam.re, lam.im)


def jordan_block_matrix(spec: JordanSpec) -> SquareMatrix:
    kind = spec.kind
    n = spec.dim
    rows = [[kind.zero()] * n for _ in range(n)]
    start = 0
    for lam, size in spec.blocks:
        for i in range(size):
            rows[start + i][start + i] = kind.coerce(lam)
            if i + 1 < size:
                rows[start + i][start + i + 1] = kind.one()
        start += size
    return SquareMatrix.from_rows(rows, kind)


def random_similarity(rng: np.random.Generator, n: int, kind: ScalarKind = RATIONAL) -> SquareMatrix:
    """S = L·U, 대각 성분이 1인 정수 삼각행렬의 곱 (항상 가역)"""
    L = [[1 if i == j else (int(rng.integers(-2, 3)) if i > j else 0) for j in range(n)] for i in range(n)]
    U = [[1 if i == j else (int(rng.integers(-2, 3)) if i < j else 0) for j in range(n)] for i in range(n)]
    return SquareMatrix.from_rows(L, kind) @ SquareMatrix.from_rows(U, kind)


def jordan_realize(spec: JordanSpec, seed=None, *, transform: SquareMatrix | None = None) -> SquareMatrix:
    """S·J·S⁻¹. seed=None 이고 transform 도 없으면 S = I"""
    J = jordan_block_matrix(spec)
    if transform is None and seed is None:
        return J
    S = transform.to_kind(J.kind) if transform is not None else random_similarity(np.random.default_rng(seed), J.dim, J.kind)
    S_inv = inverse(S)
    if S_inv is None:
        raise ValueError("similarity transform is singular")
    return S @ J @ S_inv


### sympy bridge
def _to_sympy_scalar(v):
    if isinstance(v, Fraction):
        return sympy.Rational(v.numerator, v.denominator)
    if isinstance(v, GaussianRational):
        return sympy.Rational(v.re.numerator, v.re.denominator) + sympy.I * sympy.Rational(v.im.numerator, v.im.denominator)
    raise UnsupportedRingError(f"charpoly over {type(v).__name__} is not supported")


def _from_sympy_scalar(expr) -> GaussianRational:
    re, im = sympy.expand_complex(expr).as_real_imag()
    re, im = sympy.Rational(re), sympy.Rational(im)
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def charpoly(A: SquareMatrix) -> sympy.Expr:
    """det(t·I − A), 전개된 sympy 식"""
    M = sympy.Matrix([[_to_sympy_scalar(v) for v in row] for row in A.rows])
    return sympy.expand(M.charpoly(_T).as_expr())


def charpoly_equal(A: SquareMatrix, B: SquareMatrix) -> bool:
    return sympy.expand(charpoly(A) - charpoly(B)) == 0


def eigenvalues(A: SquareMatrix) -> tuple[list[GaussianRational], str | None]:
    """ℚ(i) 위에서 분해되는 근 (중복 제거, 정렬) 과 나머지 인수"""
    if A.kind.name == "mod":
        raise UnsupportedRingError("spectra need rational or Gaussian scalars")
    _, factors = sympy.factor_list(charpoly(A), _T, extension=sympy.I)
    roots, residual = set(), []
    for f, mult in factors:
        poly = sympy.Poly(f, _T)
        if poly.degree() == 1:
            c1, c0 = poly.all_coeffs()
            roots.add(_from_sympy_scalar(-c0 / c1))
        elif poly.degree() > 1:
            residual.append(f"({f})^{mult}" if mult > 1 else f"({f})")
    return sorted(roots, key=_sort_key), ("*".join(residual) or None)


def _shifted(A: SquareMatrix, lam) -> SquareMatrix:
    lam = _as_gaussian(lam)
    if A.kind == RATIONAL and lam.im != 0:
        A = A.to_kind(GAUSSIAN)
    I = A.one()
    return I.scale(lam if A.kind == GAUSSIAN else lam.re) - A


def point_index(A: SquareMatrix, lam) -> int:
    """drazin_index(λI − A)"""
    return drazin_index(_shifted(A, lam))


def group_spectrum(A: SquareMatrix) -> SpectrumReport:
    eig, residual = eigenvalues(A)
    report = SpectrumReport(eigenvalues=eig, residual_factor=residual)
    for lam in eig:
        report.point_indices[lam] = point_index(A, lam)
    report.group_spectrum = [lam for lam in eig if report.point_indices[lam] >= 2]
    return report


def _nonzero(values) -> list:
    return [v for v in values if v]


def product_identity_check(A: SquareMatrix, C: SquareMatrix, instance_id: str = "product") -> VerificationReport:
    """charpoly(AC) = charpoly(CA), 0 이 아닌 고유값의 point index 일치, ind(I − AC) = ind(I − CA)"""
    rep = VerificationReport(instance_id)
    AC, CA = A @ C, C @ A
    rep.check("charpoly(AC) = charpoly(CA)", charpoly_equal(AC, CA))
    s_ac, s_ca = group_spectrum(AC), group_spectrum(CA)
    rep.check("nonzero eigenvalues agree", _nonzero(s_ac.eigenvalues) == _nonzero(s_ca.eigenvalues))
    agree = all(point_index(CA, lam) == s_ac.point_indices[lam] for lam in _nonzero(s_ac.eigenvalues))
    rep.check("nonzero point indices agree", agree)
    rep.check("group spectra agree away from 0", _nonzero(s_ac.group_spectrum) == _nonzero(s_ca.group_spectrum))
    k_ac, k_ca = drazin_index(AC.one() - AC), drazin_index(CA.one() - CA)
    rep.indices["ind(I-AC)"] = k_ac
    rep.indices["ind(I-CA)"] = k_ca
    rep.check("ind(I-AC) = ind(I-CA)", k_ac == k_ca)
    if s_ac.residual_factor:
        rep.notes.append("residual factor present; irrational eigenvalues excluded")
    return rep


def intertwine_identity_check(pair: IntertwinePair, instance_id: str = "intertwine") -> VerificationReport:
    """σ_g(a)∖{0} = σ_g(b)∖{0}, 0 이 아닌 point index 일치, ind(1 − a) = ind(1 − b)

    ℤ/m 위의 pair 는 대표원 {0..m-1} 으로 ℚ 에 올린다. 올린 pair 가 ab^n = b^{n+1}, ba^n = a^{n+1} 을
    만족하지 않으면 skipped report 를 돌려준다.
    """
    rep = VerificationReport(instance_id)
    a, b = pair.a, pair.b
    if a.kind.name == "mod":
        a, b = a.to_kind(RATIONAL), b.to_kind(RATIONAL)
        if not pair_condition(a, b, pair.n):
            rep.skipped = True
            rep.notes.append("lift to Q breaks ab^n = b^{n+1}, ba^n = a^{n+1}")
            return rep
    s_a, s_b = group_spectrum(a), group_spectrum(b)
    rep.check("nonzero eigenvalues agree", _nonzero(s_a.eigenvalues) == _nonzero(s_b.eigenvalues))
    agree = all(point_index(b, lam) == s_a.point_indices[lam] for lam in _nonzero(s_a.eigenvalues))
    rep.check("nonzero point indices agree", agree)
    rep.check("group spectra agree away from 0", _nonzero(s_a.group_spectrum) == _nonzero(s_b.group_spectrum))
    k_a, k_b = drazin_index(a.one() - a), drazin_index(b.one() - b)
    rep.indices["ind(1-a)"] = k_a
    rep.indices["ind(1-b)"] = k_b
    rep.check("ind(1-a) = ind(1-b)", k_a == k_b)
    return rep


def lifted_identity_audit(ring: FiniteRingSpec, n: int = 1) -> VerificationReport:
    """ring 의 모든 pair 를 ℚ 로 올려서, pair 조건이 살아남는 것마다 spectral identity 를 확인"""
    rep = VerificationReport(f"lift {ring} n={n}")
    pairs = kept = 0
    for i, pair in enumerate(pair_exhaustive(ring, n)):
        pairs += 1
        sub = intertwine_identity_check(pair, f"pair_{i}")
        if sub.skipped:
            continue
        kept += 1
        if not sub.passed:
            rep.matrices[f"pair_{i}_a"] = pair.a
            rep.matrices[f"pair_{i}_b"] = pair.b
        rep.checks.extend((f"pair_{i}: {name}", ok) for name, ok in sub.checks)
    rep.indices.update({"pairs": pairs, "kept": kept, "dropped": pairs - kept})
    rep.check("every surviving lift satisfies the identity", kept == 0 or all(ok for _, ok in rep.checks))
    return rep


def commuting_radius_check(lams: Sequence, mus: Sequence, seed=None) -> VerificationReport:
    """A = S·diag(λ)·S⁻¹, B = S·diag(μ)·S⁻¹ (가환) 에 대해 r(AB)² ≤ r(A)²·r(B)² (정확한 |·|²)"""
    if len(lams) != len(mus):
        raise ValueError("eigenvalue lists must have equal length")
    rep = VerificationReport("commuting-radius")
    S = random_similarity(np.random.default_rng(seed), len(lams))
    A = jordan_realize(JordanSpec(tuple((lam, 1) for lam in lams)), transform=S)
    B = jordan_realize(JordanSpec(tuple((mu, 1) for mu in mus)), transform=S)
    kind = GAUSSIAN if GAUSSIAN in (A.kind, B.kind) else RATIONAL
    A, B = A.to_kind(kind), B.to_kind(kind)
    rep.check("AB = BA", A @ B == B @ A)
    radius_sq = lambda values: max((_as_gaussian(v).norm() for v in values), default=Fraction(0))
    eig_ab, _ = eigenvalues(A @ B)
    rep.check("r(AB) <= r(A) r(B)", radius_sq(eig_ab) <= radius_sq(lams) * radius_sq(mus))
    return rep

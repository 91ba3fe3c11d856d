"""Exact square-matrix algebra over the scalar rings of ``codes.scalars``.

Public matrices are square and immutable. The elimination helpers work on plain
row lists so the vectorized linear systems (n² unknowns) can reuse them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Iterable, Sequence

from codes.errors import DimensionMismatchError, ScalarMismatchError, UnsupportedRingError
from codes.scalars import GAUSSIAN, RATIONAL, GaussianRational, ModInt, ScalarKind


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """n×n 행렬. 모든 entry 는 kind 가 가리키는 같은 scalar ring 의 원소."""
    kind: ScalarKind
    rows: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0:
            raise DimensionMismatchError("matrix dimension must be positive")
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatchError("matrix must be square")

    ### 생성자
    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Any]], kind: ScalarKind = RATIONAL) -> SquareMatrix:
        return cls(kind, tuple(tuple(kind.coerce(v) for v in row) for row in rows))

    @classmethod
    def identity(cls, n: int, kind: ScalarKind = RATIONAL) -> SquareMatrix:
        one, zero = kind.one(), kind.zero()
        return cls(kind, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int, kind: ScalarKind = RATIONAL) -> SquareMatrix:
        zero = kind.zero()
        return cls(kind, tuple((zero,) * n for _ in range(n)))

    @classmethod
    def diag(cls, values: Sequence[Any], kind: ScalarKind = RATIONAL) -> SquareMatrix:
        n = len(values)
        zero = kind.zero()
        return cls(kind, tuple(
            tuple(kind.coerce(values[i]) if i == j else zero for j in range(n)) for i in range(n)
        ))

    @classmethod
    def from_vector(cls, vec: Sequence[Any], n: int, kind: ScalarKind) -> SquareMatrix:
        """row-major 길이 n² 벡터를 행렬로"""
        return cls(kind, tuple(tuple(vec[i * n:(i + 1) * n]) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def vector(self) -> list:
        return [v for row in self.rows for v in row]

    def transpose(self) -> SquareMatrix:
        return SquareMatrix(self.kind, tuple(zip(*self.rows)))

    def to_kind(self, kind: ScalarKind) -> SquareMatrix:
        if kind == self.kind:
            return self
        if self.kind.name == "mod":
            # ℤ/m 의 대표원 {0..m-1} 을 그대로 들어올린다
            return SquareMatrix.from_rows([[v.value for v in row] for row in self.rows], kind)
        return SquareMatrix.from_rows(self.rows, kind)

    def is_zero(self) -> bool:
        return not any(v for row in self.rows for v in row)

    def scale(self, c) -> SquareMatrix:
        c = self.kind.coerce(c)
        return SquareMatrix(self.kind, tuple(tuple(c * v for v in row) for row in self.rows))

    def one(self) -> SquareMatrix:
        return SquareMatrix.identity(self.dim, self.kind)

    ### 연산자
    def __matmul__(self, other: SquareMatrix) -> SquareMatrix:
        return mat_mul(self, other)

    def __add__(self, other: SquareMatrix) -> SquareMatrix:
        _check_compatible(self, other)
        return SquareMatrix(self.kind, tuple(
            tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)
        ))

    def __sub__(self, other: SquareMatrix) -> SquareMatrix:
        _check_compatible(self, other)
        return SquareMatrix(self.kind, tuple(
            tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)
        ))

    def __neg__(self) -> SquareMatrix:
        return SquareMatrix(self.kind, tuple(tuple(-x for x in r) for r in self.rows))

    def __pow__(self, k: int) -> SquareMatrix:
        return mat_pow(self, k)

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.kind == other.kind and self.rows == other.rows

    def __hash__(self):
        return hash((self.kind, self.rows))

    def entries_as_strings(self) -> list[list[str]]:
        return [[self.kind.format_entry(v) for v in row] for row in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.entries_as_strings())
        return f"SquareMatrix[{self.kind}]({body})"


def _check_compatible(A: SquareMatrix, B: SquareMatrix):
    if A.dim != B.dim:
        raise DimensionMismatchError(f"dim {A.dim} vs dim {B.dim}")
    if A.kind != B.kind:
        raise ScalarMismatchError(f"{A.kind} vs {B.kind}")


def _require_field(kind: ScalarKind):
    if not kind.is_field:
        raise UnsupportedRingError(f"{kind} is not a field")


def mat_mul(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix:
    _check_compatible(A, B)
    zero = A.kind.zero()
    cols = list(zip(*B.rows))
    return SquareMatrix(A.kind, tuple(
        tuple(sum((x * y for x, y in zip(row, col)), zero) for col in cols) for row in A.rows
    ))


def mat_pow(A: SquareMatrix, k: int) -> SquareMatrix:
    """A^k, repeated squaring. A^0 = I"""
    if k < 0:
        raise ValueError(f"negative exponent {k}")
    result = A.one()
    base = A
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def powers(A: SquareMatrix, upto: int) -> list[SquareMatrix]:
    """[A^0, A^1, ..., A^upto]"""
    out = [A.one()]
    for _ in range(upto):
        out.append(out[-1] @ A)
    return out


def poly_eval(coeffs: Sequence[Any], A: SquareMatrix) -> SquareMatrix:
    """Σ coeffs[i]·A^i (Horner)"""
    result = SquareMatrix.zeros(A.dim, A.kind)
    for c in reversed(coeffs):
        result = result @ A + A.one().scale(c)
    return result


def geometric_sum(A: SquareMatrix, count: int) -> SquareMatrix:
    """Σ_{j<count} A^j. count == 0 이면 영행렬"""
    total = SquareMatrix.zeros(A.dim, A.kind)
    term = A.one()
    for _ in range(count):
        total = total + term
        term = term @ A
    return total


### Elimination on plain row lists
def row_reduce(rows: Sequence[Sequence[Any]], kind: ScalarKind, track: bool = True):
    """Gauss-Jordan elimination over a field.

    :param rows: h×w 행렬 (list of rows)
    :return tuple: (R, E, pivots) with E·rows = R, R in reduced row echelon form.
        track=False 이면 E 는 None.
    """
    _require_field(kind)
    h = len(rows)
    w = len(rows[0]) if h else 0
    zero, one = kind.zero(), kind.one()
    R = [list(r) for r in rows]
    E = [[one if i == j else zero for j in range(h)] for i in range(h)] if track else None
    pivots = []
    r = 0
    for c in range(w):
        if r == h:
            break
        piv = next((i for i in range(r, h) if R[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            R[r], R[piv] = R[piv], R[r]
            if track:
                E[r], E[piv] = E[piv], E[r]
        inv = kind.inv(R[r][c])
        R[r] = [v * inv for v in R[r]]
        if track:
            E[r] = [v * inv for v in E[r]]
        for i in range(h):
            f = R[i][c]
            if i != r and f:
                R[i] = [vi - f * vr for vi, vr in zip(R[i], R[r])]
                if track:
                    E[i] = [vi - f * vr for vi, vr in zip(E[i], E[r])]
        pivots.append(c)
        r += 1
    return R, E, pivots


def solve_vector_system(coeffs: Sequence[Sequence[Any]], rhs: Sequence[Any], kind: ScalarKind,
                        width: int | None = None):
    """M·y = rhs 의 해 하나 (free variable = 0) 또는 None"""
    width = len(coeffs[0]) if coeffs else (width or 0)
    aug = [list(row) + [b] for row, b in zip(coeffs, rhs)]
    R, _, pivots = row_reduce(aug, kind, track=False)
    if width in pivots:
        return None  # inconsistent: pivot in the rhs column
    y = [kind.zero()] * width
    for t, p in enumerate(pivots):
        y[p] = R[t][width]
    return y


def null_space(coeffs: Sequence[Sequence[Any]], kind: ScalarKind, width: int | None = None) -> list[list]:
    width = len(coeffs[0]) if coeffs else (width or 0)
    R, _, pivots = row_reduce(coeffs, kind, track=False) if coeffs else ([], None, [])
    basis = []
    free = [c for c in range(width) if c not in pivots]
    for f in free:
        v = [kind.zero()] * width
        v[f] = kind.one()
        for t, p in enumerate(pivots):
            v[p] = -R[t][f]
        basis.append(v)
    return basis


def _equation_rows(terms: Sequence[tuple[SquareMatrix, SquareMatrix]], n: int, kind: ScalarKind):
    # (Σ_t L_t X R_t)_{ij} 에서 X_{kl} 의 계수는 Σ_t L_t[i,k]·R_t[l,j]
    zero = kind.zero()
    rows = []
    for i in range(n):
        for j in range(n):
            row = []
            for k in range(n):
                for l in range(n):
                    acc = zero
                    for L, R in terms:
                        acc = acc + L.rows[i][k] * R.rows[l][j]
                    row.append(acc)
            rows.append(row)
    return rows


def solve_matrix_equations(equations, n: int, kind: ScalarKind) -> SquareMatrix | None:
    """Solve a system of linear matrix equations in one unknown X.

    :param equations: list of (terms, C) where terms = [(L, R), ...] means Σ L·X·R = C
    :return SquareMatrix | None: free parameters zeroed
    """
    coeffs, rhs = [], []
    for terms, C in equations:
        coeffs.extend(_equation_rows(terms, n, kind))
        rhs.extend(C.vector())
    y = solve_vector_system(coeffs, rhs, kind, width=n * n)
    if y is None:
        return None
    return SquareMatrix.from_vector(y, n, kind)


def matrix_equation_kernel(term_lists, n: int, kind: ScalarKind) -> list[SquareMatrix]:
    """homogeneous 시스템 Σ L·X·R = 0 (여러 개)의 해공간 basis"""
    coeffs = []
    for terms in term_lists:
        coeffs.extend(_equation_rows(terms, n, kind))
    return [SquareMatrix.from_vector(v, n, kind) for v in null_space(coeffs, kind, width=n * n)]


### rank, solve, inverse
def rank(A: SquareMatrix) -> int:
    _require_field(A.kind)
    _, _, pivots = row_reduce(A.rows, A.kind, track=False)
    return len(pivots)


def solve_left(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix | None:
    """X·A = B 의 해 (free variable 0) 또는 None.

    X 의 j 번째 행 y 는 Aᵀ·yᵀ = (B 의 j 번째 행)ᵀ 를 푼다.
    """
    _check_compatible(A, B)
    _require_field(A.kind)
    At = A.transpose().rows
    out = []
    for b in B.rows:
        y = solve_vector_system(At, b, A.kind)
        if y is None:
            return None
        out.append(tuple(y))
    return SquareMatrix(A.kind, tuple(out))


def solve_right(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix | None:
    """A·X = B 의 해 (free variable 0) 또는 None"""
    _check_compatible(A, B)
    _require_field(A.kind)
    cols = []
    for b in zip(*B.rows):
        y = solve_vector_system(A.rows, b, A.kind)
        if y is None:
            return None
        cols.append(y)
    return SquareMatrix(A.kind, tuple(zip(*cols)))


def inner_inverse(A: SquareMatrix) -> SquareMatrix:
    """{1}-inverse G (A·G·A = A) from the rank factorization A = F·H.

    E·A = R (RREF), pivots p_t. G = Q·E with Q[p_t, t] = 1.
    """
    _require_field(A.kind)
    R, E, pivots = row_reduce(A.rows, A.kind)
    n = A.dim
    zero = A.kind.zero()
    G = [[zero] * n for _ in range(n)]
    for t, p in enumerate(pivots):
        G[p] = list(E[t])
    return SquareMatrix(A.kind, tuple(tuple(r) for r in G))


def determinant(A: SquareMatrix):
    """field 위 행렬식. 합성수 modulus 는 정수 lift 의 행렬식 mod m"""
    if not A.kind.is_field:
        det = determinant(A.to_kind(RATIONAL))
        return A.kind.coerce(int(det))
    M = [list(r) for r in A.rows]
    n = A.dim
    det = A.kind.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return A.kind.zero()
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = A.kind.inv(M[c][c])
        for i in range(c + 1, n):
            f = M[i][c] * inv
            if f:
                M[i] = [vi - f * vc for vi, vc in zip(M[i], M[c])]
    return det


def inverse(A: SquareMatrix) -> SquareMatrix | None:
    if A.kind.is_field:
        _, E, pivots = row_reduce(A.rows, A.kind)
        if len(pivots) < A.dim:
            return None
        return SquareMatrix(A.kind, tuple(tuple(r) for r in E))
    # ℤ/m (합성수): det 이 unit 일 때만 가역, A^{-1} = adj(A)·det^{-1}
    m = A.kind.modulus
    lifted = A.to_kind(RATIONAL)
    det_q = determinant(lifted)
    if gcd(int(det_q) % m, m) != 1:
        return None
    inv_q = inverse(lifted)
    det_inv = pow(int(det_q) % m, -1, m)
    rows = []
    for row in inv_q.rows:
        adj_row = [v * det_q for v in row]
        # adj(A) 는 정수 행렬
        rows.append(tuple(ModInt(int(Fraction(v)) * det_inv, m) for v in adj_row))
    return SquareMatrix(A.kind, tuple(rows))


def is_nilpotent(A: SquareMatrix) -> bool:
    return mat_pow(A, A.dim).is_zero()


def lift_to_gaussian(A: SquareMatrix) -> SquareMatrix:
    return A.to_kind(GAUSSIAN)


__all__ = [
    "SquareMatrix", "mat_mul", "mat_pow", "powers", "poly_eval", "geometric_sum",
    "rank", "solve_left", "solve_right", "inverse", "inner_inverse", "determinant",
    "is_nilpotent", "row_reduce", "solve_vector_system", "null_space",
    "solve_matrix_equations", "matrix_equation_kernel", "lift_to_gaussian",
    "GaussianRational",
]

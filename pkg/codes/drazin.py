"""Drazin index / inverse, one-sided witness predicates and the constructions
built directly on them (Azumaya realization, normalization, intertwining,
reverse-order law).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from codes.algebra import (
    SquareMatrix, inner_inverse, is_nilpotent, mat_pow, powers, rank, solve_left,
    solve_matrix_equations, solve_right, solve_vector_system,
)
from codes.errors import IndexTooLargeError, InvariantViolation, PreconditionViolated, UnsupportedRingError
from codes.reports import VerificationReport


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"


class Kind(str, Enum):
    REGULAR = "regular"
    PI_REGULAR = "pi-regular"
    STRONGLY_PI = "strongly-pi-regular"
    DRAZIN = "drazin"
    GROUP = "group"
    GENERALIZED = "generalized-drazin"


@dataclass(frozen=True)
class Witness:
    """inverse 후보와 그 종류(side × kind)와 index"""
    candidate: SquareMatrix
    side: Side
    kind: Kind
    index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.index is not None and self.index < 0:
            raise InvariantViolation(f"negative index {self.index}")
        if self.kind is Kind.GROUP and self.index != 1:
            raise InvariantViolation("group witness must carry index 1")

    def to_record(self) -> dict:
        return {
            "side": self.side.value,
            "kind": self.kind.value,
            "index": self.index,
            "candidate": self.candidate.entries_as_strings(),
        }


def _field_only(a: SquareMatrix):
    if not a.kind.is_field:
        raise UnsupportedRingError(f"{a.kind} is not a field")


### Index & canonical inverses
def drazin_index(A: SquareMatrix) -> int:
    """smallest k with rank(A^k) = rank(A^{k+1})"""
    _field_only(A)
    prev_rank = A.dim
    P = A.one()
    for k in range(A.dim + 1):
        P = P @ A
        r = rank(P)
        if r == prev_rank:
            return k
        prev_rank = r
    return A.dim  # unreachable: rank 열은 dim 단계 안에 안정화된다


def drazin_inverse(A: SquareMatrix) -> tuple[SquareMatrix, int]:
    """X = A^k·G·A^k, G 는 A^{2k+1} 의 {1}-inverse"""
    k = drazin_index(A)
    Ak = mat_pow(A, k)
    G = inner_inverse(mat_pow(A, 2 * k + 1))
    return Ak @ G @ Ak, k


def group_inverse(A: SquareMatrix) -> SquareMatrix:
    X, k = drazin_inverse(A)
    if k >= 2:
        raise IndexTooLargeError(f"drazin index {k} >= 2, no group inverse")
    return X


### Predicates
def verify_drazin(a: SquareMatrix, x: SquareMatrix, j: int) -> bool:
    """two-sided: ax = xa, x²a = x, a^{j+1}x = a^j"""
    ax = a @ x
    return ax == x @ a and x @ x @ a == x and mat_pow(a, j + 1) @ x == mat_pow(a, j)


def verify_gdrazin(a: SquareMatrix, x: SquareMatrix) -> bool:
    ax = a @ x
    return ax == x @ a and x @ x @ a == x and is_nilpotent(a @ x @ a - a)


def verify_left_drazin(a: SquareMatrix, x: SquareMatrix, j: int) -> bool:
    if j < 0:
        return False
    a_j = mat_pow(a, j)
    if x @ a_j @ a != a_j:
        return False
    return x @ x @ a == x and a @ x @ a == x @ a @ a


def verify_right_drazin(a: SquareMatrix, y: SquareMatrix, j: int) -> bool:
    if j < 0:
        return False
    a_j = mat_pow(a, j)
    if a_j @ a @ y != a_j:
        return False
    return a @ y @ y == y and a @ y @ a == a @ a @ y


def verify_left_gdrazin(a: SquareMatrix, x: SquareMatrix) -> bool:
    return a @ x @ a == x @ a @ a and x @ x @ a == x and is_nilpotent(a @ x @ a - a)


def verify_right_gdrazin(a: SquareMatrix, y: SquareMatrix) -> bool:
    return a @ y @ a == a @ a @ y and a @ y @ y == y and is_nilpotent(a @ y @ a - a)


def verify_left_regular(a: SquareMatrix, x: SquareMatrix) -> bool:
    return x @ a @ a == a


def verify_right_regular(a: SquareMatrix, x: SquareMatrix) -> bool:
    return a @ a @ x == a


def verify_left_pi_regular(a: SquareMatrix, x: SquareMatrix, n: int) -> bool:
    """x·a^{2n} = a^n"""
    a_n = mat_pow(a, n)
    return x @ a_n @ a_n == a_n


def verify_right_pi_regular(a: SquareMatrix, x: SquareMatrix, n: int) -> bool:
    a_n = mat_pow(a, n)
    return a_n @ a_n @ x == a_n


def verify_left_strongly_pi(a: SquareMatrix, x: SquareMatrix, p: int) -> bool:
    if p < 0:
        return False
    a_p = mat_pow(a, p)
    return x @ a_p @ a == a_p and a @ x @ a == x @ a @ a


def verify_right_strongly_pi(a: SquareMatrix, y: SquareMatrix, q: int) -> bool:
    if q < 0:
        return False
    a_q = mat_pow(a, q)
    return a_q @ a @ y == a_q and a @ y @ a == a @ a @ y


VERIFIERS = {
    (Side.LEFT, Kind.REGULAR): lambda a, w: verify_left_regular(a, w.candidate),
    (Side.RIGHT, Kind.REGULAR): lambda a, w: verify_right_regular(a, w.candidate),
    (Side.LEFT, Kind.PI_REGULAR): lambda a, w: verify_left_pi_regular(a, w.candidate, w.index),
    (Side.RIGHT, Kind.PI_REGULAR): lambda a, w: verify_right_pi_regular(a, w.candidate, w.index),
    (Side.LEFT, Kind.STRONGLY_PI): lambda a, w: verify_left_strongly_pi(a, w.candidate, w.index),
    (Side.RIGHT, Kind.STRONGLY_PI): lambda a, w: verify_right_strongly_pi(a, w.candidate, w.index),
    (Side.LEFT, Kind.DRAZIN): lambda a, w: verify_left_drazin(a, w.candidate, w.index),
    (Side.RIGHT, Kind.DRAZIN): lambda a, w: verify_right_drazin(a, w.candidate, w.index),
    (Side.LEFT, Kind.GROUP): lambda a, w: verify_left_drazin(a, w.candidate, 1),
    (Side.RIGHT, Kind.GROUP): lambda a, w: verify_right_drazin(a, w.candidate, 1),
    (Side.LEFT, Kind.GENERALIZED): lambda a, w: verify_left_gdrazin(a, w.candidate),
    (Side.RIGHT, Kind.GENERALIZED): lambda a, w: verify_right_gdrazin(a, w.candidate),
    (Side.TWO_SIDED, Kind.DRAZIN): lambda a, w: verify_drazin(a, w.candidate, w.index),
    (Side.TWO_SIDED, Kind.GROUP): lambda a, w: verify_drazin(a, w.candidate, 1),
    (Side.TWO_SIDED, Kind.GENERALIZED): lambda a, w: verify_gdrazin(a, w.candidate),
}


def verify_witness(a: SquareMatrix, w: Witness) -> bool:
    """Witness 의 side/kind 에 맞는 predicate 로 검증"""
    return VERIFIERS[(w.side, w.kind)](a, w)


### Witness solvers
def left_regular_witness(a: SquareMatrix) -> SquareMatrix | None:
    return solve_left(a @ a, a)


def right_regular_witness(a: SquareMatrix) -> SquareMatrix | None:
    return solve_right(a @ a, a)


def left_strongly_pi_witness(a: SquareMatrix, p: int) -> SquareMatrix | None:
    """x·a^{p+1} = a^p, a·x·a − x·a² = 0 을 x 에 대한 선형계로 푼다"""
    _field_only(a)
    one = a.one()
    a_p = mat_pow(a, p)
    zero = SquareMatrix.zeros(a.dim, a.kind)
    return solve_matrix_equations([
        ([(one, a_p @ a)], a_p),
        ([(a, a), (-one, a @ a)], zero),
    ], a.dim, a.kind)


def right_strongly_pi_witness(a: SquareMatrix, q: int) -> SquareMatrix | None:
    _field_only(a)
    one = a.one()
    a_q = mat_pow(a, q)
    zero = SquareMatrix.zeros(a.dim, a.kind)
    return solve_matrix_equations([
        ([(a_q @ a, one)], a_q),
        ([(a, a), (-(a @ a), one)], zero),
    ], a.dim, a.kind)


### Azumaya realization
def azumaya_left(a: SquareMatrix, x: SquareMatrix, p: int) -> Witness:
    """c = x^{p+1}·a^p 는 index p 의 left Drazin inverse"""
    if not verify_left_strongly_pi(a, x, p):
        raise PreconditionViolated("x is not a left strongly pi-regular witness of a at index p")
    c = mat_pow(x, p + 1) @ mat_pow(a, p)
    return Witness(c, Side.LEFT, Kind.DRAZIN, p)


def azumaya_right(a: SquareMatrix, y: SquareMatrix, q: int) -> Witness:
    if not verify_right_strongly_pi(a, y, q):
        raise PreconditionViolated("y is not a right strongly pi-regular witness of a at index q")
    c = mat_pow(a, q) @ mat_pow(y, q + 1)
    return Witness(c, Side.RIGHT, Kind.DRAZIN, q)


### Normalization b = xax
def normalize_left_gdrazin(a: SquareMatrix, x: SquareMatrix) -> SquareMatrix:
    if not verify_left_gdrazin(a, x):
        raise PreconditionViolated("x is not a left generalized Drazin inverse of a")
    return x @ a @ x


def normalize_right_gdrazin(a: SquareMatrix, y: SquareMatrix) -> SquareMatrix:
    if not verify_right_gdrazin(a, y):
        raise PreconditionViolated("y is not a right generalized Drazin inverse of a")
    return y @ a @ y


def left_normal_form_checks(a: SquareMatrix, b: SquareMatrix) -> dict[str, bool]:
    """aba = ba², bab = b²a = b, aba − a nilpotent"""
    bab = b @ a @ b
    return {
        "aba=ba^2": a @ b @ a == b @ a @ a,
        "bab=b": bab == b,
        "b^2a=b": b @ b @ a == b,
        "aba-a nilpotent": is_nilpotent(a @ b @ a - a),
    }


def right_normal_form_checks(a: SquareMatrix, c: SquareMatrix) -> dict[str, bool]:
    """mirror: aca = a²c, cac = ac² = c, aca − a nilpotent.

    'aca=c^2a (as printed)' 는 참고용 항목이다 (일반적으로 성립하지 않는다).
    """
    cac = c @ a @ c
    return {
        "aca=a^2c": a @ c @ a == a @ a @ c,
        "cac=c": cac == c,
        "ac^2=c": a @ c @ c == c,
        "aca-a nilpotent": is_nilpotent(a @ c @ a - a),
        "aca=c^2a (as printed)": a @ c @ a == c @ c @ a,
    }


### Intertwining
def intertwine_check(a, b, z, x, y) -> bool:
    """az = zb 이고 x, y 가 각각 a 의 left / b 의 right gD-inverse 이면 xz = zy"""
    if a @ z != z @ b:
        raise PreconditionViolated("az != zb")
    if not verify_left_gdrazin(a, x):
        raise PreconditionViolated("x is not a left generalized Drazin inverse of a")
    if not verify_right_gdrazin(b, y):
        raise PreconditionViolated("y is not a right generalized Drazin inverse of b")
    return x @ z == z @ y


### Reverse-order law
def is_polynomial_in(a: SquareMatrix, b: SquareMatrix) -> bool:
    """a = Σ_{i<dim} c_i b^i 를 만족하는 계수 c 가 존재하는가 (double commutant of b)"""
    _field_only(a)
    pw = powers(b, b.dim - 1)
    vecs = [P.vector() for P in pw]
    coeffs = [list(col) for col in zip(*vecs)]  # n² × dim
    return solve_vector_system(coeffs, a.vector(), a.kind) is not None


def reverse_order(a, b, x, y, side: Side = Side.LEFT, j: int | None = None,
                  generalized: bool = False) -> Witness:
    """yx 는 ab 의 one-sided (generalized) Drazin inverse.

    :param x: a 의 two-sided Drazin (generalized=True 이면 gD) inverse
    :param y: b 의 one-sided witness (side 쪽), Drazin 이면 index j
    """
    side = Side(side)
    if not is_polynomial_in(a, b):
        raise PreconditionViolated("a is not a polynomial in b")
    if generalized:
        if not verify_gdrazin(a, x):
            raise PreconditionViolated("x is not the generalized Drazin inverse of a")
        ok = verify_left_gdrazin(b, y) if side is Side.LEFT else verify_right_gdrazin(b, y)
        if not ok:
            raise PreconditionViolated(f"y is not a {side.value} generalized Drazin inverse of b")
        return Witness(y @ x, side, Kind.GENERALIZED)
    if not verify_drazin(a, x, drazin_index(a)):
        raise PreconditionViolated("x is not the Drazin inverse of a")
    verify = verify_left_drazin if side is Side.LEFT else verify_right_drazin
    if j is None or not verify(b, y, j):
        raise PreconditionViolated(f"y is not a {side.value} Drazin inverse of b at index {j}")
    ab, yx = a @ b, y @ x
    for jj in range(ab.dim + j + 1):
        if verify(ab, yx, jj):
            return Witness(yx, side, Kind.DRAZIN, jj)
    raise InvariantViolation("yx is not a one-sided Drazin inverse of ab at any index")


def reverse_order_left(a, b, x, y, j: int | None = None, generalized: bool = False) -> Witness:
    return reverse_order(a, b, x, y, Side.LEFT, j, generalized)


def reverse_order_right(a, b, x, y, j: int | None = None, generalized: bool = False) -> Witness:
    return reverse_order(a, b, x, y, Side.RIGHT, j, generalized)


### One-sided agreement
def _minimal_index(verify, a, x, j) -> bool:
    return verify(a, x, j) and (j == 0 or not verify(a, x, j - 1))


def sided_agreement_check(a, x, j: int, y, k: int) -> bool:
    """left Drazin (x, j) 와 right Drazin (y, k) 이 모두 최소 index 로 주어지면 x = y, j = k"""
    if not _minimal_index(verify_left_drazin, a, x, j):
        raise PreconditionViolated("(x, j) is not a left Drazin inverse with minimal index")
    if not _minimal_index(verify_right_drazin, a, y, k):
        raise PreconditionViolated("(y, k) is not a right Drazin inverse with minimal index")
    return x == y and j == k


def core_report(a: SquareMatrix, instance_id: str = "core") -> VerificationReport:
    """drazin_inverse 자기일관성: 두 one-sided predicate 통과 + index 최소성"""
    rep = VerificationReport(instance_id)
    X, k = drazin_inverse(a)
    rep.indices["k"] = k
    rep.check("two-sided drazin", verify_drazin(a, X, k))
    rep.check("left drazin at k", verify_left_drazin(a, X, k))
    rep.check("right drazin at k", verify_right_drazin(a, X, k))
    if k >= 1:
        rep.check("left minimality", not verify_left_drazin(a, X, k - 1))
        rep.check("right minimality", not verify_right_drazin(a, X, k - 1))
    rep.check("sided agreement", sided_agreement_check(a, X, k, X, k))
    rep.witness = Witness(X, Side.TWO_SIDED, Kind.DRAZIN, k)
    return rep

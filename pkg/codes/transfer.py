"""Jacobson-type transfers between α = 1 − ac and β = 1 − bd for quads
(a, b, c, d) with acd = dbd and dba = aca.

Forward (α → β) and reverse (β → α) transfers share one formula with the roles
of (bac, d) and (ac, bd) exchanged, see ``_Roles``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from codes.algebra import SquareMatrix, geometric_sum, inverse, is_nilpotent, mat_pow, solve_matrix_equations
from codes.drazin import (
    Kind, Side, Witness, drazin_index, verify_left_drazin, verify_left_gdrazin, verify_left_pi_regular,
    verify_left_regular, verify_left_strongly_pi, verify_right_drazin, verify_right_gdrazin,
    verify_right_pi_regular, verify_right_regular, verify_right_strongly_pi,
)
from codes.errors import (
    DimensionMismatchError, InvariantViolation, PreconditionViolated, ScalarMismatchError,
    SingularResolventError, UnsupportedRingError,
)


@dataclass(frozen=True)
class JacobsonQuad:
    a: SquareMatrix
    b: SquareMatrix
    c: SquareMatrix
    d: SquareMatrix

    def __post_init__(self):
        mats = (self.a, self.b, self.c, self.d)
        if len({m.dim for m in mats}) != 1:
            raise DimensionMismatchError("quad members must share one dimension")
        if len({m.kind for m in mats}) != 1:
            raise ScalarMismatchError("quad members must share one scalar kind")
        if not self.holds():
            raise InvariantViolation("acd = dbd and dba = aca must hold")

    def holds(self) -> bool:
        a, b, c, d = self.a, self.b, self.c, self.d
        return a @ c @ d == d @ b @ d and d @ b @ a == a @ c @ a

    @property
    def one(self) -> SquareMatrix:
        return self.a.one()

    @property
    def ac(self) -> SquareMatrix:
        return self.a @ self.c

    @property
    def bd(self) -> SquareMatrix:
        return self.b @ self.d

    @property
    def bac(self) -> SquareMatrix:
        return self.b @ self.a @ self.c

    @property
    def alpha(self) -> SquareMatrix:
        return self.one - self.ac

    @property
    def beta(self) -> SquareMatrix:
        return self.one - self.bd

    def matrices(self) -> dict[str, SquareMatrix]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


def quad_from_classical(a: SquareMatrix, c: SquareMatrix) -> JacobsonQuad:
    return JacobsonQuad(a, c, c, a)


def quad_solve(a: SquareMatrix, d: SquareMatrix, b: SquareMatrix) -> JacobsonQuad | None:
    """a, d, b 를 고정하면 acd = dbd, aca = dba 는 c 에 대해 선형"""
    if not a.kind.is_field:
        raise UnsupportedRingError(f"{a.kind} is not a field")
    c = solve_matrix_equations([
        ([(a, d)], d @ b @ d),
        ([(a, a)], d @ b @ a),
    ], a.dim, a.kind)
    if c is None:
        return None
    return JacobsonQuad(a, b, c, d)


@dataclass(frozen=True)
class _Roles:
    """y = (1 − L·p·r·R)(1 + target) + L·x·R, source → target"""
    left: SquareMatrix
    right: SquareMatrix
    source: SquareMatrix
    target: SquareMatrix


def _roles(q: JacobsonQuad, reverse: bool) -> _Roles:
    if reverse:
        return _Roles(q.d, q.bac, q.bd, q.ac)
    return _Roles(q.bac, q.d, q.ac, q.bd)


def _projection(alpha: SquareMatrix, x: SquareMatrix, side: Side) -> SquareMatrix:
    # left: p = 1 − xα, right: p = 1 − αx
    one = alpha.one()
    return one - x @ alpha if side is Side.LEFT else one - alpha @ x


def _regular_formula(roles: _Roles, x: SquareMatrix) -> SquareMatrix:
    one = x.one()
    return one + roles.target + roles.left @ x @ roles.right


def _drazin_formula(roles: _Roles, x: SquareMatrix, k: int, side: Side) -> SquareMatrix:
    one = x.one()
    alpha = one - roles.source
    p = _projection(alpha, x, side)
    r = geometric_sum(one - roles.source @ roles.source, k)
    return (one - roles.left @ p @ r @ roles.right) @ (one + roles.target) + roles.left @ x @ roles.right


def _gdrazin_formula(roles: _Roles, x: SquareMatrix, side: Side) -> SquareMatrix:
    one = x.one()
    alpha = one - roles.source
    p = _projection(alpha, x, side)
    bracket = one - p @ alpha @ (one + roles.source)
    bracket_inv = inverse(bracket)
    if bracket_inv is None:
        raise SingularResolventError("1 - p·α·(1 + source) is singular")
    return (one - roles.left @ p @ bracket_inv @ roles.right) @ (one + roles.target) + roles.left @ x @ roles.right


def _source_target(q: JacobsonQuad, reverse: bool) -> tuple[SquareMatrix, SquareMatrix]:
    return (q.beta, q.alpha) if reverse else (q.alpha, q.beta)


### Regular
def regular_transfer(q: JacobsonQuad, x: SquareMatrix, side: Side = Side.LEFT, reverse: bool = False) -> SquareMatrix:
    """y = 1 + bd + bac·x·d (reverse: 1 + ac + d·x·bac)"""
    side = Side(side)
    src, tgt = _source_target(q, reverse)
    verify = verify_left_regular if side is Side.LEFT else verify_right_regular
    if not verify(src, x):
        raise PreconditionViolated(f"x is not a {side.value} regular witness")
    y = _regular_formula(_roles(q, reverse), x)
    if not verify(tgt, y):
        raise InvariantViolation(f"transferred {side.value} regular witness fails")
    return y


def left_regular_transfer(q: JacobsonQuad, x: SquareMatrix) -> SquareMatrix:
    return regular_transfer(q, x, Side.LEFT)


def right_regular_transfer(q: JacobsonQuad, x: SquareMatrix) -> SquareMatrix:
    return regular_transfer(q, x, Side.RIGHT)


### π-regular via the binomial power quad
def binomial_elements(q: JacobsonQuad, n: int, convention: str = "corrected") -> tuple[SquareMatrix, SquareMatrix]:
    """b_n, c_n with (1 − bd)^n = 1 − b_n·d and (1 − ac)^n = 1 − a·c_n.

    corrected: 계수 C(n,i)(−1)^{i+1}. literal: 계수 C(n,i)(−1)^i (부호 그대로).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if convention not in ("corrected", "literal"):
        raise ValueError(f"unknown convention {convention!r}")
    shift = 1 if convention == "corrected" else 0
    kind, dim = q.a.kind, q.a.dim
    b_n = SquareMatrix.zeros(dim, kind)
    c_n = SquareMatrix.zeros(dim, kind)
    bd, ac = q.bd, q.ac
    for i in range(1, n + 1):
        coef = comb(n, i) * (-1) ** (i + shift)
        b_n = b_n + (mat_pow(bd, i - 1) @ q.b).scale(coef)
        c_n = c_n + (q.c @ mat_pow(ac, i - 1)).scale(coef)
    return b_n, c_n


def binomial_probe(q: JacobsonQuad, n: int) -> dict[str, bool]:
    """두 부호 규약 각각에 대해 power identity 와 quad 조건을 계산한다"""
    one = q.one
    out = {}
    for convention in ("corrected", "literal"):
        b_n, c_n = binomial_elements(q, n, convention)
        a, d = q.a, q.d
        out[f"{convention}: (1-bd)^n = 1-b_n d"] = mat_pow(q.beta, n) == one - b_n @ d
        out[f"{convention}: (1-ac)^n = 1-a c_n"] = mat_pow(q.alpha, n) == one - a @ c_n
        out[f"{convention}: a c_n d = d b_n d"] = a @ c_n @ d == d @ b_n @ d
        out[f"{convention}: a c_n a = d b_n a"] = a @ c_n @ a == d @ b_n @ a
        out[f"{convention}: d b_n a = a c_n a"] = d @ b_n @ a == a @ c_n @ a
    return out


def power_quad(q: JacobsonQuad, n: int) -> JacobsonQuad:
    """(a, b_n, c_n, d): α_n = α^n, β_n = β^n"""
    b_n, c_n = binomial_elements(q, n)
    return JacobsonQuad(q.a, b_n, c_n, q.d)


def pi_regular_transfer(q: JacobsonQuad, x: SquareMatrix, n: int, side: Side = Side.LEFT) -> Witness:
    """x·α^{2n} = α^n  ⟹  y·β^{2n} = β^n (right: mirror)"""
    side = Side(side)
    verify = verify_left_pi_regular if side is Side.LEFT else verify_right_pi_regular
    if not verify(q.alpha, x, n):
        raise PreconditionViolated(f"x is not a {side.value} pi-regular witness at n={n}")
    qn = power_quad(q, n)
    y = _regular_formula(_roles(qn, False), x)
    if not verify(q.beta, y, n):
        raise InvariantViolation("transferred pi-regular witness fails")
    return Witness(y, side, Kind.PI_REGULAR, n)


### Strongly π-regular
def strong_pi_transfer(q: JacobsonQuad, x: SquareMatrix, p: int, side: Side = Side.LEFT,
                       reverse: bool = False) -> SquareMatrix:
    side = Side(side)
    src, tgt = _source_target(q, reverse)
    verify = verify_left_strongly_pi if side is Side.LEFT else verify_right_strongly_pi
    if not verify(src, x, p):
        raise PreconditionViolated(f"x is not a {side.value} strongly pi-regular witness at index {p}")
    y = _regular_formula(_roles(q, reverse), x)
    if not verify(tgt, y, p):
        raise InvariantViolation("transferred strongly pi-regular witness fails")
    return y


### Drazin / group / generalized Drazin
def drazin_transfer(q: JacobsonQuad, x: SquareMatrix, k: int, side: Side = Side.LEFT,
                    reverse: bool = False) -> Witness:
    side = Side(side)
    src, tgt = _source_target(q, reverse)
    verify = verify_left_drazin if side is Side.LEFT else verify_right_drazin
    if not verify(src, x, k):
        raise PreconditionViolated(f"x is not a {side.value} Drazin inverse at index {k}")
    y = _drazin_formula(_roles(q, reverse), x, k, side)
    if not verify(tgt, y, k):
        raise InvariantViolation("transferred Drazin witness fails")
    return Witness(y, side, Kind.DRAZIN, k)


def group_transfer(q: JacobsonQuad, x: SquareMatrix, side: Side = Side.LEFT, reverse: bool = False) -> Witness:
    w = drazin_transfer(q, x, 1, side, reverse)
    return Witness(w.candidate, w.side, Kind.GROUP, 1)


def gdrazin_transfer(q: JacobsonQuad, x: SquareMatrix, side: Side = Side.LEFT, reverse: bool = False) -> Witness:
    side = Side(side)
    src, tgt = _source_target(q, reverse)
    verify = verify_left_gdrazin if side is Side.LEFT else verify_right_gdrazin
    if not verify(src, x):
        raise PreconditionViolated(f"x is not a {side.value} generalized Drazin inverse")
    y = _gdrazin_formula(_roles(q, reverse), x, side)
    if not verify(tgt, y):
        raise InvariantViolation("transferred generalized Drazin witness fails")
    return Witness(y, side, Kind.GENERALIZED)


def gdrazin_defect_nilpotent(beta: SquareMatrix, y: SquareMatrix) -> bool:
    """β − β·y·β 가 nilpotent"""
    return is_nilpotent(beta - beta @ y @ beta)


def index_preserved(q: JacobsonQuad) -> bool:
    return drazin_index(q.alpha) == drazin_index(q.beta)


### Cline (partial)
def _cline(a, c, x, k, side: Side) -> Witness:
    verify = verify_left_drazin if side is Side.LEFT else verify_right_drazin
    if not verify(a @ c, x, k):
        raise PreconditionViolated(f"x is not a {side.value} Drazin inverse of ac at index {k}")
    # 정사각 행렬에서 one-sided invertible ⇔ invertible
    unit = c if side is Side.LEFT else a
    if inverse(unit) is None:
        raise PreconditionViolated(f"{'c' if side is Side.LEFT else 'a'} is not invertible")
    y = c @ x @ x @ a
    if not verify(c @ a, y, k + 1):
        raise InvariantViolation(f"c x^2 a is not a {side.value} Drazin inverse of ca at index {k + 1}")
    return Witness(y, side, Kind.DRAZIN, k + 1)


def cline_partial_left(a: SquareMatrix, c: SquareMatrix, x: SquareMatrix, k: int) -> Witness:
    """y = c·x²·a 는 ca 의 index k+1 left Drazin inverse"""
    return _cline(a, c, x, k, Side.LEFT)


def cline_partial_right(a: SquareMatrix, c: SquareMatrix, x: SquareMatrix, k: int) -> Witness:
    return _cline(a, c, x, k, Side.RIGHT)

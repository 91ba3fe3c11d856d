"""Drazin lab 예외 계층.

predicate 함수는 bool 을 돌려주고, 생성(construction) 함수는 아래 예외를 던진다.
"""


class DrazinLabError(Exception):
    """모든 라이브러리 예외의 루트"""


class DimensionMismatchError(DrazinLabError, ValueError):
    pass


class ScalarMismatchError(DrazinLabError, TypeError):
    pass


class UnsupportedRingError(DrazinLabError):
    """field 가 필요한 연산을 합성수 modulus 위에서 호출한 경우"""


class MatrixFormatError(DrazinLabError, ValueError):
    pass


class PreconditionViolated(DrazinLabError):
    pass


class IndexTooLargeError(DrazinLabError):
    pass


class SingularResolventError(DrazinLabError):
    """역행렬이 반드시 존재해야 하는 bracket 이 특이행렬인 경우 (invariant bug)"""


class InvariantViolation(DrazinLabError):
    pass


class BudgetExceededError(DrazinLabError):
    pass


class RingTooLargeError(BudgetExceededError):
    pass


class UnknownTheoremError(DrazinLabError, KeyError):
    pass

"""Exact scalar rings: rational, Gaussian rational, integers mod m.

Rationals are plain ``fractions.Fraction`` values. The two other variants are
small immutable classes with the same operator surface, so matrix code never
branches on the scalar variant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from codes.errors import MatrixFormatError, ScalarMismatchError


@dataclass(frozen=True, slots=True, eq=False)
class GaussianRational:
    """re + im·i with exact rational parts"""
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2"""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational({self})"


@dataclass(frozen=True, slots=True, eq=False)
class ModInt:
    """value mod modulus; 서로 다른 modulus 끼리는 연산 불가"""
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _lift(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ScalarMismatchError(f"mod {self.modulus} vs mod {other.modulus}")
            return other
        if isinstance(other, int):
            return ModInt(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ModInt(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ModInt(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ModInt(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def inverse(self) -> ModInt:
        try:
            return ModInt(pow(self.value, -1, self.modulus), self.modulus)
        except ValueError:
            raise ZeroDivisionError(f"{self.value} is not a unit mod {self.modulus}") from None

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            # 대표원 {0..m-1} 만 같다고 본다. hash(self.value) 와 일관
            return 0 <= other < self.modulus and self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"ModInt({self.value} mod {self.modulus})"


@dataclass(frozen=True)
class ScalarKind:
    """행렬 하나의 모든 entry 가 공유하는 scalar ring 정보

    :param str name: 'rational' | 'gaussian' | 'mod'
    :param int modulus: name == 'mod' 일 때만 사용
    """
    name: str
    modulus: int | None = None

    def __post_init__(self):
        if self.name not in SCALAR_NAMES:
            raise MatrixFormatError(f"unknown scalar kind {self.name!r}")
        if self.name == "mod" and (self.modulus is None or self.modulus < 2):
            raise MatrixFormatError(f"mod scalar needs modulus >= 2, got {self.modulus}")
        if self.name != "mod" and self.modulus is not None:
            raise MatrixFormatError(f"{self.name} scalar takes no modulus")

    @classmethod
    def parse(cls, text: str) -> ScalarKind:
        text = text.strip()
        if text.startswith("mod:"):
            try:
                return cls("mod", int(text[4:]))
            except ValueError:
                raise MatrixFormatError(f"bad modulus in {text!r}") from None
        return cls(text)

    def __str__(self):
        return f"mod:{self.modulus}" if self.name == "mod" else self.name

    @property
    def is_field(self) -> bool:
        if self.name == "mod":
            return bool(isprime(self.modulus))
        return True

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def coerce(self, value):
        """int / Fraction / str / 같은 종류의 scalar 를 이 ring 의 원소로 변환"""
        if isinstance(value, str):
            return self.parse_entry(value)
        if self.name == "rational":
            if isinstance(value, GaussianRational):
                if value.im != 0:
                    raise ScalarMismatchError(f"{value} is not rational")
                return value.re
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
        elif self.name == "gaussian":
            if isinstance(value, GaussianRational):
                return value
            if isinstance(value, (int, Fraction)):
                return GaussianRational(Fraction(value))
        else:
            if isinstance(value, ModInt):
                if value.modulus != self.modulus:
                    raise ScalarMismatchError(f"mod {value.modulus} entry in mod {self.modulus} matrix")
                return value
            if isinstance(value, int):
                return ModInt(value, self.modulus)
            if isinstance(value, Fraction):
                return ModInt(value.numerator, self.modulus) / ModInt(value.denominator, self.modulus)
        raise ScalarMismatchError(f"cannot coerce {value!r} into {self}")

    def parse_entry(self, text: str):
        s = text.replace(" ", "")
        try:
            if self.name == "rational":
                return Fraction(s)
            if self.name == "gaussian":
                return _parse_gaussian(s)
            return ModInt(int(s), self.modulus)
        except (ValueError, ZeroDivisionError):
            raise MatrixFormatError(f"cannot parse {text!r} as {self} entry") from None

    def format_entry(self, value) -> str:
        return str(value)

    def inv(self, value):
        if isinstance(value, Fraction):
            return 1 / value
        return value.inverse()


def _parse_gaussian(s: str) -> GaussianRational:
    # "p/q", "p/q+r/si", "-i", "3/4i"
    if not s.endswith("i"):
        return GaussianRational(Fraction(s))
    body = s[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        real, imag = "0", body
    else:
        real, imag = body[:cut], body[cut:]
    if imag in ("", "+", "-"):
        imag += "1"
    return GaussianRational(Fraction(real), Fraction(imag))


SCALAR_NAMES = ("rational", "gaussian", "mod")
RATIONAL = ScalarKind("rational")
GAUSSIAN = ScalarKind("gaussian")


def mod(m: int) -> ScalarKind:
    return ScalarKind("mod", m)

"""Exact coefficient fields: rationals and prime residue fields.

No floating point anywhere; scalars support +, -, *, / and compare by
value. Field objects build scalars and are attached to algebra elements to
guard against mixing coefficients from different fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class FieldError(Exception):
    pass


@dataclass(frozen=True)
class ModInt:
    value: int
    p: int

    def _check(self, other: "ModInt") -> None:
        if not isinstance(other, ModInt) or other.p != self.p:
            raise FieldError("mixed moduli in residue arithmetic")

    def __add__(self, other: "ModInt") -> "ModInt":
        self._check(other)
        return ModInt((self.value + other.value) % self.p, self.p)

    def __sub__(self, other: "ModInt") -> "ModInt":
        self._check(other)
        return ModInt((self.value - other.value) % self.p, self.p)

    def __mul__(self, other: "ModInt") -> "ModInt":
        self._check(other)
        return ModInt((self.value * other.value) % self.p, self.p)

    def __truediv__(self, other: "ModInt") -> "ModInt":
        self._check(other)
        if other.value % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        inv = pow(other.value, self.p - 2, self.p)
        return ModInt((self.value * inv) % self.p, self.p)

    def __neg__(self) -> "ModInt":
        return ModInt(-self.value % self.p, self.p)

    def __bool__(self) -> bool:
        return self.value % self.p != 0

    def __str__(self) -> str:
        return str(self.value % self.p)


Scalar = Union[Fraction, ModInt]


@dataclass(frozen=True)
class RationalField:
    name: str = "Q"

    def of(self, num: int, den: int = 1) -> Fraction:
        return Fraction(num, den)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError("modulus %d is not prime" % self.p)

    @property
    def name(self) -> str:
        return "F%d" % self.p

    def of(self, num: int, den: int = 1) -> ModInt:
        if den % self.p == 0:
            raise ZeroDivisionError("denominator divisible by %d" % self.p)
        inv = pow(den % self.p, self.p - 2, self.p)
        return ModInt((num * inv) % self.p, self.p)

    @property
    def zero(self) -> ModInt:
        return ModInt(0, self.p)

    @property
    def one(self) -> ModInt:
        return ModInt(1, self.p)


Field = Union[RationalField, PrimeField]

QQ = RationalField()


def parse_field(text: str) -> Field:
    """Parse a field name: Q, or F<p> for a prime p."""
    t = text.strip()
    if t in ("Q", "q"):
        return QQ
    if t and t[0] in ("F", "f") and t[1:].isdigit():
        return PrimeField(int(t[1:]))
    raise FieldError("unknown field %r (expected Q or F<prime>)" % text)

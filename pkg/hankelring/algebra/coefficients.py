import random
import re
from fractions import Fraction
from typing import Union

from sympy import isprime
from sympy.polys.domains import GF, QQ

Coefficient = Union[int, Fraction]


class FieldError(Exception):
    def __init__(self, message):
        super().__init__(message)


class RationalField:
    """
    The field of rational numbers with exact, arbitrary-precision arithmetic.

    Coefficients are stored as Python ints when integral and as `fractions.Fraction` otherwise.
    Both representations are always in lowest terms with a positive denominator, so equal
    coefficients compare and hash equal.
    """

    tag = "QQ"
    characteristic = 0
    zero: Coefficient = 0
    one: Coefficient = 1

    def normalize(self, value: Coefficient) -> Coefficient:
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        return value

    def convert(self, value: Union[int, Fraction, str]) -> Coefficient:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise FieldError(f"Cannot convert {value!r} into a rational coefficient.")
        return self.normalize(value)

    def inverse(self, value: Coefficient) -> Coefficient:
        if value == 0:
            raise ZeroDivisionError("Zero has no inverse.")
        return self.normalize(Fraction(1) / value)

    def divide(self, numerator: Coefficient, denominator: Coefficient) -> Coefficient:
        return self.normalize(Fraction(numerator) / denominator)

    def to_text(self, value: Coefficient) -> str:
        return str(value)

    def parse(self, text: str) -> Coefficient:
        try:
            return self.normalize(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError):
            raise FieldError(f"'{text}' is not a rational number.")

    def random_element(self, rng: random.Random, bound: int = 10) -> Coefficient:
        return rng.randint(-bound, bound)

    def sympy_domain(self):
        return QQ

    def to_sympy(self, value: Coefficient):
        value = Fraction(value)
        return QQ(value.numerator, value.denominator)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash(self.tag)

    def __repr__(self) -> str:
        return self.tag


class PrimeField:
    """
    The prime field GF(p), values stored as ints in [0, p).

    Parameters
    ----------
    p : int
        A prime at most 2**31.

    Raises
    ------
    FieldError
        If `p` is not a prime or exceeds 2**31.
    """

    def __init__(self, p: int) -> None:
        if p > 2**31 or not isprime(p):
            raise FieldError(f"GF(p) needs a prime p <= 2^31, got {p}.")
        self.p = p
        self.characteristic = p
        self.tag = f"GF({p})"
        self.zero = 0
        self.one = 1

    def normalize(self, value: int) -> int:
        return value % self.p

    def convert(self, value: Union[int, Fraction, str]) -> int:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self.divide(value.numerator, value.denominator)
        if isinstance(value, bool) or not isinstance(value, int):
            raise FieldError(f"Cannot convert {value!r} into an element of {self.tag}.")
        return value % self.p

    def inverse(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("Zero has no inverse.")
        return pow(value, self.p - 2, self.p)

    def divide(self, numerator: int, denominator: int) -> int:
        return numerator * self.inverse(denominator) % self.p

    def to_text(self, value: int) -> str:
        return str(value)

    def parse(self, text: str) -> int:
        text = text.strip()
        if "/" in text:
            numerator, denominator = text.split("/", 1)
            return self.divide(int(numerator), int(denominator))
        try:
            return int(text) % self.p
        except ValueError:
            raise FieldError(f"'{text}' is not an element of {self.tag}.")

    def random_element(self, rng: random.Random, bound: int = 0) -> int:
        return rng.randrange(self.p)

    def sympy_domain(self):
        return GF(self.p)

    def to_sympy(self, value: int):
        return GF(self.p)(value)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(self.tag)

    def __repr__(self) -> str:
        return self.tag


Field = Union[RationalField, PrimeField]

_FIELD_TAG = re.compile(r"^\s*GF\(\s*(\d+)\s*\)\s*$")


def field_from_tag(tag: str) -> Field:
    """
    Build a coefficient field from its tag, either "QQ" or "GF(p)".

    Raises
    ------
    FieldError
        If the tag is not recognized or p is not an admissible prime.
    """
    if tag.strip() == "QQ":
        return RationalField()
    match = _FIELD_TAG.match(tag)
    if match is None:
        raise FieldError(f"Unknown coefficient field '{tag}'. Use 'QQ' or 'GF(p)'.")
    return PrimeField(int(match.group(1)))

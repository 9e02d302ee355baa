from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Dict, Sequence, Tuple

from hankelring.algebra.coefficients import Field
from hankelring.algebra.monomials import ExponentVector

if TYPE_CHECKING:
    from hankelring.algebra.polynomials import Polynomial


class OrderError(Exception):
    def __init__(self, message):
        super().__init__(message)


@lru_cache(maxsize=1 << 18)
def _lex_key(m: ExponentVector) -> tuple:
    return m


@lru_cache(maxsize=1 << 18)
def _degrevlex_key(m: ExponentVector) -> tuple:
    return (sum(m), tuple([-e for e in reversed(m)]))


class MonomialOrder:
    """
    A term order on the monomials of a ring, named by its kind.

    Three kinds are supported, all with respect to the ring's variable order x1 > x2 > ... > xk:

    - `lex`: compare exponent vectors entry by entry from the first variable.
    - `degrevlex`: compare total degree first; on a tie, the monomial with the *smaller* exponent
      in the last variable where they differ is the larger one.
    - `block(k)`: compare the first `k` variables by degrevlex and break ties with degrevlex on the
      remaining variables. Any monomial involving the first block is larger than every monomial
      free of it, which makes this an elimination order for the first `k` variables.

    Worked degrevlex comparisons in three variables:

    - x2^2 > x1*x3: both have degree 2; they differ last in x3, where x2^2 has exponent 0 < 1.
    - x1^2 > x1*x2 > x2^2 > x1*x3 > x2*x3 > x3^2.
    - x3^3 > x1^2: degree decides first.

    Orders compare equal when their kind (and block size) agree; each order exposes `key`, a
    function mapping an exponent vector to a sort key, so that `max(monomials, key=order.key)` is
    the leading monomial.
    """

    __slots__ = ("kind", "block_size", "key")

    def __init__(self, kind: str, block_size: int = 0) -> None:
        if kind == "lex":
            key = _lex_key
        elif kind == "degrevlex":
            key = _degrevlex_key
        elif kind == "block":
            if block_size < 0:
                raise OrderError("The first block of an elimination order cannot be negative.")
            key = _block_key(block_size)
        else:
            raise OrderError(f"Unknown monomial order '{kind}'.")
        self.kind = kind
        self.block_size = block_size if kind == "block" else 0
        self.key = key

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def degrevlex(cls) -> "MonomialOrder":
        return cls("degrevlex")

    @classmethod
    def block(cls, block_size: int) -> "MonomialOrder":
        return cls("block", block_size)

    @classmethod
    def from_name(cls, name: str) -> "MonomialOrder":
        """Parse the output of `name`: 'lex', 'degrevlex' or 'block(k)'."""
        name = name.strip()
        if name.startswith("block(") and name.endswith(")"):
            try:
                return cls.block(int(name[6:-1]))
            except ValueError:
                raise OrderError(f"Malformed block order '{name}'.")
        return cls(name)

    @property
    def name(self) -> str:
        if self.kind == "block":
            return f"block({self.block_size})"
        return self.kind

    def greater(self, a: ExponentVector, b: ExponentVector) -> bool:
        return self.key(a) > self.key(b)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonomialOrder)
            and other.kind == self.kind
            and other.block_size == self.block_size
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.block_size))

    def __repr__(self) -> str:
        return f"MonomialOrder({self.name})"


_block_keys: Dict[int, object] = {}


def _block_key(block_size: int):
    if block_size not in _block_keys:

        @lru_cache(maxsize=1 << 18)
        def key(m: ExponentVector) -> tuple:
            return (_degrevlex_key(m[:block_size]), _degrevlex_key(m[block_size:]))

        _block_keys[block_size] = key
    return _block_keys[block_size]


LEX = MonomialOrder.lex()
DEGREVLEX = MonomialOrder.degrevlex()


@dataclass(frozen=True)
class PolynomialRing:
    """
    A standard graded polynomial ring over QQ or GF(p).

    Parameters
    ----------
    variables : Tuple[str, ...]
        Distinct variable names, in the order x1 > x2 > ... used by every monomial order.
    field : Field
        The coefficient field; its type fixes how coefficients are normalized.
    """

    variables: Tuple[str, ...]
    field: Field

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Variable names must be distinct, got {self.variables}.")

    @classmethod
    def from_prefix(cls, prefix: str, count: int, field: Field) -> "PolynomialRing":
        """The ring in `prefix`1, ..., `prefix``count`."""
        return cls(variables=tuple(f"{prefix}{i}" for i in range(1, count + 1)), field=field)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ValueError(f"'{name}' is not a variable of {self}.")

    def gen(self, name_or_index) -> "Polynomial":
        from hankelring.algebra.polynomials import Polynomial

        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exponents = [0] * self.nvars
        exponents[i] = 1
        return Polynomial(self, {tuple(exponents): self.field.one})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def one(self) -> "Polynomial":
        from hankelring.algebra.polynomials import Polynomial

        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def zero(self) -> "Polynomial":
        from hankelring.algebra.polynomials import Polynomial

        return Polynomial(self, {})

    def monomial(self, exponents: ExponentVector, coefficient=1) -> "Polynomial":
        from hankelring.algebra.polynomials import Polynomial

        return Polynomial(self, {tuple(exponents): self.field.convert(coefficient)})

    def subring(self, names: Sequence[str]) -> "PolynomialRing":
        for name in names:
            self.index(name)
        return PolynomialRing(variables=tuple(names), field=self.field)

    def with_field(self, field: Field) -> "PolynomialRing":
        return PolynomialRing(variables=self.variables, field=field)

    def monomial_text(self, exponents: ExponentVector) -> str:
        factors = []
        for name, e in zip(self.variables, exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors)

    def __str__(self) -> str:
        return f"{self.field}[{', '.join(self.variables)}]"

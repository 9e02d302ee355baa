import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from hankelring.algebra.coefficients import Coefficient
from hankelring.algebra.monomials import ExponentVector, degree, multiply
from hankelring.algebra.rings import LEX, MonomialOrder, PolynomialRing
from hankelring.exceptions import PreconditionError, RingMismatchError


class ParseError(Exception):
    def __init__(self, message):
        super().__init__(message)


Scalar = Union[int, Fraction]

_NUMBER = re.compile(r"^\d+(/\d+)?$")
_VARIABLE_POWER = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(\^(\d+))?$")


class Polynomial:
    """
    An exact multivariate polynomial: a map from exponent vectors to nonzero coefficients.

    Polynomials are immutable once built. Zero coefficients are never stored, so two polynomials of
    the same ring are equal exactly when their term maps are equal. Arithmetic accepts ints and
    Fractions as constants on either side.

    Parameters
    ----------
    ring : PolynomialRing
        The ring the polynomial lives in.
    terms : Dict[Tuple[int, ...], Coefficient]
        Exponent vector to coefficient. Coefficients are normalized into the ring's field and
        zero entries are dropped.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Dict[ExponentVector, Coefficient]) -> None:
        field = ring.field
        clean = {}
        for m, c in terms.items():
            c = field.convert(c)
            if c:
                if len(m) != ring.nvars:
                    raise PreconditionError(
                        f"Exponent vector {m} does not match the {ring.nvars} variables of {ring}."
                    )
                clean[tuple(m)] = c
        self.ring = ring
        self.terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def from_normalized(
        cls, ring: PolynomialRing, terms: Dict[ExponentVector, Coefficient]
    ) -> "Polynomial":
        """Wrap a term map whose coefficients are already normalized and nonzero."""
        polynomial = cls.__new__(cls)
        polynomial.ring = ring
        polynomial.terms = terms
        polynomial._hash = None
        return polynomial

    @classmethod
    def constant(cls, ring: PolynomialRing, value: Scalar) -> "Polynomial":
        return cls(ring, {(0,) * ring.nvars: value})

    @classmethod
    def parse(cls, text: str, ring: PolynomialRing) -> "Polynomial":
        """
        Parse the canonical text format produced by `to_text`.

        The format is a sum of terms `c*x1^a1*...*xk^ak` separated by `+` or `-`. A coefficient of
        1 and exponents of 1 may be omitted; `0` denotes the zero polynomial.

        Raises
        ------
        ParseError
            If a token is neither a coefficient nor a known variable power.
        """
        text = text.replace(" ", "")
        if not text:
            raise ParseError("Cannot parse an empty string.")
        if text == "0":
            return ring.zero()
        field = ring.field
        terms: Dict[ExponentVector, Coefficient] = {}
        pieces = re.split(r"([+-])", text)
        sign = 1
        expect_term = True
        for piece in pieces:
            if piece in ("+", "-"):
                sign = -sign if piece == "-" else sign
                expect_term = True
                continue
            if not piece:
                continue
            if not expect_term:
                raise ParseError(f"Missing operator before '{piece}'.")
            coefficient = field.convert(sign)
            exponents = [0] * ring.nvars
            for factor in piece.split("*"):
                if _NUMBER.match(factor):
                    coefficient = field.normalize(coefficient * field.parse(factor))
                    continue
                match = _VARIABLE_POWER.match(factor)
                if match is None or match.group(1) not in ring.variables:
                    raise ParseError(f"Unknown factor '{factor}' for {ring}.")
                exponents[ring.index(match.group(1))] += int(match.group(3) or 1)
            m = tuple(exponents)
            terms[m] = field.normalize(terms.get(m, field.zero) + coefficient)
            sign = 1
            expect_term = False
        return cls(ring, terms)

    def to_text(self) -> str:
        """Canonical text: terms in descending lex order, `c*x1^a1*...` joined by `+`/`-`."""
        if not self.terms:
            return "0"
        field = self.ring.field
        parts: List[str] = []
        for m in sorted(self.terms, key=LEX.key, reverse=True):
            c = self.terms[m]
            if field.characteristic == 0:
                negative = c < 0
                magnitude = -c if negative else c
            else:
                negative, magnitude = False, c
            monomial = self.ring.monomial_text(m)
            if not monomial:
                body = field.to_text(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{field.to_text(magnitude)}*{monomial}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    # ------------------------------------------------------------------ arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"Cannot combine elements of {self.ring} and {other.ring}.")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            value = field.normalize(terms.get(m, 0) + c)
            if value:
                terms[m] = value
            else:
                terms.pop(m, None)
        return Polynomial.from_normalized(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        field = self.ring.field
        return Polynomial.from_normalized(
            self.ring, {m: field.normalize(-c) for m, c in self.terms.items()}
        )

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        terms: Dict[ExponentVector, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = multiply(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial.from_normalized(
            self.ring, {m: v for m, v in ((m, field.normalize(c)) for m, c in terms.items()) if v}
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise PreconditionError(f"Polynomial powers need a nonnegative integer, got {k}.")
        p = self.ring.characteristic
        if p and k and k % p == 0:
            return (self ** (k // p)).frobenius(p)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self, q: int) -> "Polynomial":
        """
        The q-th power in characteristic p, with q a power of p, computed term by term.

        Raises
        ------
        PreconditionError
            If the ring has characteristic zero or `q` is not a power of the characteristic.
        """
        p = self.ring.characteristic
        if not p or not _is_power_of(q, p):
            raise PreconditionError(f"{q} is not a power of the characteristic of {self.ring}.")
        return Polynomial.from_normalized(
            self.ring, {tuple([e * q for e in m]): c for m, c in self.terms.items()}
        )

    def scale(self, factor: Scalar) -> "Polynomial":
        field = self.ring.field
        factor = field.convert(factor)
        if not factor:
            return self.ring.zero()
        return Polynomial.from_normalized(
            self.ring, {m: field.normalize(c * factor) for m, c in self.terms.items()}
        )

    # ------------------------------------------------------------------ comparisons

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Polynomial.constant(self.ring, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    __str__ = to_text

    # ------------------------------------------------------------------ structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({degree(m) for m in self.terms}) <= 1

    def variables_used(self) -> Tuple[int, ...]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(sorted(used))

    def leading_term(self, order: MonomialOrder) -> Tuple[ExponentVector, Coefficient]:
        """
        The greatest term of the polynomial for `order`.

        Raises
        ------
        PreconditionError
            If the polynomial is zero.
        """
        if not self.terms:
            raise PreconditionError("The zero polynomial has no leading term.")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder) -> ExponentVector:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inverse(c))

    # ------------------------------------------------------------------ maps

    def substitute(
        self, images: Sequence["Polynomial"], target: PolynomialRing = None
    ) -> "Polynomial":
        """
        Apply the ring map sending the i-th variable to `images[i]`.

        Parameters
        ----------
        images : Sequence[Polynomial]
            One image per variable, all in the `target` ring.
        target : PolynomialRing, optional
            Ring of the images; inferred from the first image when omitted.
        """
        if len(images) != self.ring.nvars:
            raise PreconditionError(
                f"Expected {self.ring.nvars} images for {self.ring}, got {len(images)}."
            )
        if target is None:
            target = images[0].ring if images else self.ring
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            if (i, e) not in powers:
                powers[(i, e)] = images[i] ** e
            return powers[(i, e)]

        result = target.zero()
        for m, c in self.terms.items():
            term = Polynomial.constant(target, c) if target.field == self.ring.field else None
            if term is None:
                raise RingMismatchError("Substitution cannot change the coefficient field.")
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def map_to_ring(self, target: PolynomialRing, positions: Sequence[int]) -> "Polynomial":
        """
        Rename variables: variable i of this ring becomes variable `positions[i]` of `target`.
        """
        if target.field != self.ring.field:
            raise RingMismatchError("Variable renaming cannot change the coefficient field.")
        terms = {}
        for m, c in self.terms.items():
            exponents = [0] * target.nvars
            for i, e in enumerate(m):
                if e:
                    if positions[i] is None:
                        raise PreconditionError(
                            f"Variable {self.ring.variables[i]} has no image in {target}."
                        )
                    exponents[positions[i]] += e
            terms[tuple(exponents)] = c
        return Polynomial.from_normalized(target, terms)

    def to_ring(self, target: PolynomialRing) -> "Polynomial":
        """Move into a ring sharing variable names (a subring or an extension)."""
        positions = [
            target.variables.index(name) if name in target.variables else None
            for name in self.ring.variables
        ]
        return self.map_to_ring(target, positions)

    def evaluate(self, point: Sequence[Coefficient]) -> Coefficient:
        field = self.ring.field
        total = field.zero
        for m, c in self.terms.items():
            value = c
            for x, e in zip(point, m):
                if e:
                    value = value * x**e
            total = total + value
        return field.normalize(total)


def _is_power_of(q: int, p: int) -> bool:
    if q < p:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def poly_arith(f: Polynomial, g: Polynomial = None, op: str = "add", k: int = None) -> Polynomial:
    """
    Exact ring operation on polynomials: `add`, `sub`, `mul`, or `pow` (with exponent `k`).

    Raises
    ------
    RingMismatchError
        If `f` and `g` belong to different rings.
    PreconditionError
        For a negative exponent or an unknown operation.
    """
    if op == "pow":
        return f**k
    if g is None:
        raise PreconditionError(f"Operation '{op}' needs a second operand.")
    if f.ring != g.ring:
        raise RingMismatchError(f"Cannot combine elements of {f.ring} and {g.ring}.")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise PreconditionError(f"Unknown operation '{op}'.")


def leading_term(f: Polynomial, order: MonomialOrder) -> Tuple[ExponentVector, Coefficient]:
    return f.leading_term(order)


def product(factors: Iterable[Polynomial], ring: PolynomialRing) -> Polynomial:
    result = ring.one()
    for factor in factors:
        result = result * factor
    return result


def exact_division(f: Polynomial, g: Polynomial, order: MonomialOrder = LEX) -> Polynomial:
    """
    The quotient f / g when g divides f.

    Raises
    ------
    PreconditionError
        If g is zero or does not divide f.
    """
    if not g:
        raise PreconditionError("Division by the zero polynomial.")
    if f.ring != g.ring:
        raise RingMismatchError(f"Cannot divide an element of {f.ring} by one of {g.ring}.")
    field = f.ring.field
    lead_g, c_g = g.leading_term(order)
    inverse = field.inverse(c_g)
    remainder = dict(f.terms)
    result: Dict[ExponentVector, Coefficient] = {}
    while remainder:
        m = max(remainder, key=order.key)
        if not all(a >= b for a, b in zip(m, lead_g)):
            raise PreconditionError(f"{g} does not divide {f}.")
        shift = tuple([a - b for a, b in zip(m, lead_g)])
        factor = field.normalize(remainder[m] * inverse)
        result[shift] = factor
        for t, c in g.terms.items():
            target = multiply(t, shift)
            value = field.normalize(remainder.get(target, 0) - factor * c)
            if value:
                remainder[target] = value
            else:
                remainder.pop(target, None)
    return Polynomial.from_normalized(f.ring, result)

"""
Exponent vectors and the elementary operations on them.

A monomial x1^a1 * ... * xk^ak of a ring with k variables is represented by the tuple
(a1, ..., ak) of nonnegative ints; its length always equals the ring arity and its total degree
is the sum of its entries.
"""
from itertools import combinations_with_replacement
from typing import Iterator, Sequence, Tuple

ExponentVector = Tuple[int, ...]


def degree(m: ExponentVector) -> int:
    return sum(m)


def multiply(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    return tuple([x + y for x, y in zip(a, b)])


def divides(a: ExponentVector, b: ExponentVector) -> bool:
    """True if the monomial `a` divides `b`."""
    return all(x <= y for x, y in zip(a, b))


def quotient(b: ExponentVector, a: ExponentVector) -> ExponentVector:
    """The monomial b / a; the caller guarantees that `a` divides `b`."""
    return tuple([y - x for x, y in zip(a, b)])


def lcm(a: ExponentVector, b: ExponentVector) -> ExponentVector:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def coprime(a: ExponentVector, b: ExponentVector) -> bool:
    return not any(x and y for x, y in zip(a, b))


def support(m: ExponentVector) -> Tuple[int, ...]:
    return tuple(i for i, e in enumerate(m) if e)


def unit(nvars: int, index: int, exponent: int = 1) -> ExponentVector:
    exponents = [0] * nvars
    exponents[index] = exponent
    return tuple(exponents)


def monomials_of_degree(
    nvars: int, d: int, indices: Sequence[int] = None
) -> Iterator[ExponentVector]:
    """
    Yield every monomial of total degree `d` in the variables `indices` (all variables by default).
    """
    if indices is None:
        indices = range(nvars)
    for choice in combinations_with_replacement(indices, d):
        exponents = [0] * nvars
        for i in choice:
            exponents[i] += 1
        yield tuple(exponents)


def minimalize(monomials: Sequence[ExponentVector]) -> Tuple[ExponentVector, ...]:
    """Minimal generators of the monomial ideal spanned by `monomials`, in ascending degree."""
    minimal = []
    for m in sorted(set(monomials), key=lambda m: (sum(m), m)):
        if not any(divides(g, m) for g in minimal):
            minimal.append(m)
    return tuple(minimal)

"""
Ideal-theoretic operations built on reduced Gröbner bases.

- Intersections use the extra-variable trick: I ∩ J is the elimination of y from yI + (1 - y)J.
- The quotient by one element is (I : g) = (I ∩ (g)) / g; the quotient by an ideal intersects the
  quotients by its generators.
- Saturation iterates quotients until the reduced basis stops changing.
- Radical membership adds 1 - z·f with a fresh variable z and tests for the unit ideal.
"""
import logging
from typing import Sequence

from hankelring.algebra.polynomials import Polynomial, exact_division
from hankelring.algebra.rings import DEGREVLEX, MonomialOrder, PolynomialRing
from hankelring.exceptions import PreconditionError
from hankelring.groebner.ideals import Ideal, ZeroIdealError

logger = logging.getLogger(__name__)


class CharacteristicError(Exception):
    def __init__(self, message):
        super().__init__(message)


def _fresh_name(ring: PolynomialRing, base: str) -> str:
    name = base
    suffix = 0
    while name in ring.variables:
        suffix += 1
        name = f"{base}{suffix}"
    return name


def _extend(ring: PolynomialRing, base: str) -> PolynomialRing:
    """The ring with one new variable placed first."""
    return PolynomialRing(variables=(_fresh_name(ring, base),) + ring.variables, field=ring.field)


def _elimination_filter(basis: Sequence[Polynomial], block: int) -> list:
    return [g for g in basis if not any(any(m[:block]) for m in g.terms)]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """
    I ∩ J, by eliminating y from y·I + (1 - y)·J.

    Examples
    --------
    (x) ∩ (y) in F[x, y] is (xy).
    """
    I._check(J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    extended = _extend(ring, "y_int")
    y = extended.gen(0)
    one = extended.one()
    generators = [y * f.to_ring(extended) for f in I.generators]
    generators += [(one - y) * g.to_ring(extended) for g in J.generators]
    order = MonomialOrder.block(1)
    basis = Ideal(extended, generators).groebner_basis(order)
    kept = [g.to_ring(ring) for g in _elimination_filter(basis, 1)]
    return Ideal(ring, kept)


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise PreconditionError("Cannot intersect an empty family of ideals.")
    result = ideals[0]
    for other in ideals[1:]:
        result = intersect(result, other)
    return result


def element_quotient(I: Ideal, g: Polynomial) -> Ideal:
    """(I : g) for a single element g."""
    if not g:
        raise ZeroIdealError("The quotient by the zero element is not defined here.")
    ring = I.ring
    if g.is_constant() or I.is_zero():
        return Ideal(ring, I.groebner_basis())
    if I.contains(g):
        return Ideal(ring, [ring.one()])
    meet = intersect(I, Ideal(ring, [g]))
    return Ideal(ring, [exact_division(h, g) for h in meet.groebner_basis()])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """
    (I : J) = {f : fJ ⊆ I}, the intersection of (I : g) over the generators g of J.

    Raises
    ------
    ZeroIdealError
        If J is the zero ideal.
    """
    I._check(J)
    if J.is_zero():
        raise ZeroIdealError("The quotient by the zero ideal is the whole ring; refusing it.")
    parts = [element_quotient(I, g) for g in J.generators]
    return intersect_all(parts)


def saturation(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f^∞) by iterated quotients until the reduced basis is stable."""
    if not f:
        raise PreconditionError("Saturation by zero is not defined.")
    current = Ideal(I.ring, I.groebner_basis())
    steps = 0
    while True:
        following = element_quotient(current, f)
        steps += 1
        if following == current:
            logger.debug(f"Saturation stabilized after {steps} quotients.")
            return current
        current = following


def eliminate(I: Ideal, drop: Sequence[str]) -> Ideal:
    """
    I ∩ F[kept variables], as an ideal of the subring on the kept variables.

    The dropped variables are moved to the front of a permuted ring and eliminated with a block
    order; the kept variables keep their relative order.
    """
    ring = I.ring
    for name in drop:
        ring.index(name)
    kept = [name for name in ring.variables if name not in drop]
    permuted = PolynomialRing(variables=tuple(drop) + tuple(kept), field=ring.field)
    target = ring.subring(kept)
    generators = [f.to_ring(permuted) for f in I.generators]
    basis = Ideal(permuted, generators).groebner_basis(MonomialOrder.block(len(drop)))
    survivors = [g.to_ring(target) for g in _elimination_filter(basis, len(drop))]
    return Ideal(target, survivors)


def frobenius_power(I: Ideal, q: int, formal: bool = False) -> Ideal:
    """
    The bracket power I^[q], generated by the q-th powers of the generators of I.

    In characteristic p, with q a power of p, the reduced bases of I^[q] are the q-th powers of
    those of I; bases already cached on I are carried over for free.

    Parameters
    ----------
    I : Ideal
        The ideal.
    q : int
        A power of the characteristic.
    formal : bool, optional
        Allow the formal bracket (generators raised to q) in characteristic zero.

    Raises
    ------
    CharacteristicError
        If q is not a power of the characteristic and `formal` is not set.
    """
    p = I.ring.characteristic
    if p == 0:
        if not formal:
            raise CharacteristicError(
                f"Frobenius powers need positive characteristic, {I.ring} has 0."
            )
        return Ideal(I.ring, [f**q for f in I.generators])
    if not _is_power(q, p):
        raise CharacteristicError(f"{q} is not a power of the characteristic {p}.")
    bracket = Ideal(I.ring, [f.frobenius(q) for f in I.generators])
    cached = I.cached_bases()
    if DEGREVLEX not in cached:
        cached[DEGREVLEX] = I.groebner_basis(DEGREVLEX)
    for order, basis in cached.items():
        bracket.seed_basis(order, [g.frobenius(q) for g in basis])
    return bracket


def _is_power(q: int, p: int) -> bool:
    if q < p:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """True iff f lies in the radical of I, by the Rabinowitsch trick."""
    if f.ring != I.ring:
        I._check(Ideal(f.ring))
    if not f:
        return True
    extended = _extend(I.ring, "z_rad")
    z = extended.gen(0)
    generators = [g.to_ring(extended) for g in I.generators]
    generators.append(extended.one() - z * f.to_ring(extended))
    return Ideal(extended, generators).is_unit()

import logging
from typing import List, Optional, Sequence

from hankelring.algebra.polynomials import Polynomial
from hankelring.groebner.hilbert import generator_count, min_generators
from hankelring.groebner.ideals import Ideal, ZeroIdealError
from hankelring.groebner.operations import element_quotient, intersect_all
from hankelring.hankel.model import HankelContext

logger = logging.getLogger(__name__)


class DivisorialIdeal:
    """
    A nonzero ideal J of a Hankel determinantal ring R, stored as its preimage in A (which
    contains I). The reflexive hull is computed once and cached.

    Parameters
    ----------
    ctx : HankelContext
        The ring R.
    preimage : Ideal
        An ideal of A; the generators of I are added to it.
    label : str, optional
        A name used in logs and reports.

    Raises
    ------
    ZeroIdealError
        If J is zero in R.
    """

    def __init__(self, ctx: HankelContext, preimage: Ideal, label: str = None) -> None:
        self.ctx = ctx
        self.preimage = ctx.quotient.lift(preimage)
        self.label = label
        self.generators = ctx.quotient.residue_generators(preimage)
        if not self.generators:
            raise ZeroIdealError(f"{preimage} is zero in {ctx}.")
        self._hull: Optional["DivisorialIdeal"] = None

    @classmethod
    def from_generators(
        cls, ctx: HankelContext, generators: Sequence[Polynomial], label: str = None
    ) -> "DivisorialIdeal":
        return cls(ctx, Ideal(ctx.ring, list(generators)), label)

    def minimal_generators(self) -> List[tuple]:
        """Graded minimal generator counts of J as an ideal of R."""
        return min_generators(self.preimage, modulo=self.ctx.ideal)

    def generator_count(self) -> int:
        return generator_count(self.preimage, modulo=self.ctx.ideal)

    def contains(self, other: "DivisorialIdeal") -> bool:
        return self.preimage.contains_ideal(other.preimage)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DivisorialIdeal):
            return NotImplemented
        return self.preimage == other.preimage

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        name = self.label or ", ".join(f.to_text() for f in self.generators)
        return f"DivisorialIdeal({name})"


def _colon(ctx: HankelContext, base: Ideal, generators: Sequence[Polynomial]) -> Ideal:
    """Preimage of (base :_R (generators)), where `base` is a preimage containing I."""
    generators = [g for g in generators if not ctx.quotient.is_zero(g)]
    if not generators:
        return Ideal(ctx.ring, [ctx.ring.one()])
    return intersect_all([element_quotient(base, g) for g in generators])


def reflexive_hull(J: DivisorialIdeal, element: Polynomial = None) -> DivisorialIdeal:
    """
    The double dual of J, computed as (a :_R (a :_R J)) for a nonzero a in J.

    Parameters
    ----------
    J : DivisorialIdeal
        A nonzero ideal of R.
    element : Polynomial, optional
        The element a, by default the first generator of J that is nonzero in R. The hull does not
        depend on this choice.
    """
    if element is None and J._hull is not None:
        return J._hull
    ctx = J.ctx
    a = element if element is not None else J.generators[0]
    if ctx.quotient.is_zero(a) or not J.preimage.contains(a):
        raise ZeroIdealError(f"{a.to_text()} is not a nonzero element of {J}.")
    principal = ctx.quotient.ideal([a])
    dual = _colon(ctx, principal, J.generators)
    double_dual = _colon(ctx, principal, ctx.quotient.residue_generators(dual))
    hull = DivisorialIdeal(ctx, double_dual, label=f"hull({J.label})" if J.label else None)
    hull._hull = hull
    if element is None:
        J._hull = hull
    logger.debug(f"Hull of {J}: {len(hull.preimage.groebner_basis())} basis elements.")
    return hull


def class_product(first: DivisorialIdeal, second: DivisorialIdeal) -> DivisorialIdeal:
    """The divisorial product hull(J1 J2)."""
    ctx = first.ctx
    products = [f * g for f in first.generators for g in second.generators]
    return reflexive_hull(DivisorialIdeal.from_generators(ctx, products))


def class_power(J: DivisorialIdeal, k: int) -> DivisorialIdeal:
    """hull(J^k) for k >= 1."""
    if k < 1:
        raise ValueError(f"Class powers need k >= 1, got {k}.")
    power = reflexive_hull(J)
    for _ in range(k - 1):
        power = class_product(power, J)
    return power


def is_principal(J: DivisorialIdeal) -> bool:
    """Whether the class of J is trivial: its hull needs a single generator."""
    return reflexive_hull(J).generator_count() == 1


def class_order(J: DivisorialIdeal, bound: int = None) -> Optional[int]:
    """
    The least k >= 1 with hull(J^k) principal, searched up to `bound` (n - t + 3 by default).

    Returns None when no power up to the bound is principal.
    """
    ctx = J.ctx
    bound = bound if bound is not None else ctx.n - ctx.t + 3
    power = reflexive_hull(J)
    for k in range(1, bound + 1):
        if power.generator_count() == 1:
            return k
        if k < bound:
            power = class_product(power, J)
    logger.warning(f"No principal class power of {J} up to {bound}.")
    return None

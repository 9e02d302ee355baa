import logging
from functools import lru_cache
from typing import Iterable

from hankelring.algebra.coefficients import PrimeField
from hankelring.algebra.monomials import ExponentVector
from hankelring.algebra.polynomials import Polynomial
from hankelring.exceptions import PreconditionError
from hankelring.groebner.ideals import Ideal
from hankelring.groebner.operations import frobenius_power, ideal_quotient
from hankelring.hankel.model import HankelContext
from hankelring.hankel.witness import fedder_witness
from hankelring.verifier.reports import VerificationReport

logger = logging.getLogger(__name__)

FEDDER_ANCHOR = (
    "Thm fpure: F-purity: R = A/I is F-pure iff (I^[p] : I) is not contained in m^[p]; the "
    "witness f with squarefree lex initial term satisfies f^{p-1} I in I^[p]"
)


def below_bracket(m: ExponentVector, q: int) -> bool:
    """Whether the monomial lies outside m^[q] = (x_1^q, ..., x_N^q)."""
    return all(e < q for e in m)


def outside_bracket(f: Polynomial, q: int) -> bool:
    """Whether f is not in m^[q]: some term of f has every exponent below q."""
    return any(below_bracket(m, q) for m in f.terms)


def ideal_outside_bracket(generators: Iterable[Polynomial], q: int) -> bool:
    return any(outside_bracket(f, q) for f in generators)


def require_prime_field(ctx: HankelContext) -> int:
    if not isinstance(ctx.field, PrimeField):
        raise PreconditionError(
            f"Frobenius computations need a prime field, {ctx} is over {ctx.field}."
        )
    return ctx.field.p


def frobenius_colon(I: Ideal, q: int) -> Ideal:
    """(I^[q] :_A I) for q a power of the characteristic."""
    return ideal_quotient(frobenius_power(I, q), I)


@lru_cache(maxsize=64)
def context_colon(ctx: HankelContext, q: int) -> Ideal:
    """`frobenius_colon` of the defining ideal, memoized per context and q."""
    colon = frobenius_colon(ctx.ideal, q)
    logger.debug(f"(I^[{q}] : I) for {ctx}: {len(colon.groebner_basis())} basis elements.")
    return colon


def fedder_check(ctx: HankelContext) -> VerificationReport:
    """
    Fedder's criterion for R over GF(p), and the witness route through f^{p-1}.

    The verdict is F-pure when some reduced basis element of (I^[p] : I) has a term outside the
    monomial ideal m^[p].
    """
    parameters = ctx.parameters()
    try:
        p = require_prime_field(ctx)
    except PreconditionError as e:
        return VerificationReport.not_applicable("fedder", parameters, FEDDER_ANCHOR, str(e))
    bracket = frobenius_power(ctx.ideal, p)
    colon = context_colon(ctx, p)
    basis = colon.groebner_basis()
    f = fedder_witness(ctx)
    power = f ** (p - 1)
    return VerificationReport.compare(
        "fedder",
        parameters,
        FEDDER_ANCHOR,
        computed={
            "f_pure": ideal_outside_bracket(basis, p),
            "bracket_in_colon": colon.contains_ideal(bracket),
            "witness_in_colon": colon.contains(power),
            "witness_outside_bracket": outside_bracket(power, p),
            "witness_times_ideal_in_bracket": all(
                bracket.contains(power * g) for g in ctx.ideal.generators
            ),
            "colon_basis_size": len(basis),
        },
        expected={
            "f_pure": True,
            "bracket_in_colon": True,
            "witness_in_colon": True,
            "witness_outside_bracket": True,
            "witness_times_ideal_in_bracket": True,
        },
    )

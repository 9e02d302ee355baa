"""
Symbolic powers of the height one prime p = p<1> and the divisor class group of R.

The k-th symbolic power is never computed by primary decomposition. Instead p<k> is certified
to equal it by five exact checks:

1. the ordinary power p^k lies in p<k>;
2. p<k> lies in p and every generator of p lies in the radical of p<k>;
3. R / p<k> has the multiplicity k C(n, t-2) of an unmixed ideal: the length of
   A / (P_k + (x1..x_{t-2}, x_{n+1}..x_{n+t-1})) equals it, and the degrevlex initial ideal
   contains the staircase that bounds it;
4. (p<k> : w) = p<k> for elements w outside p;
5. hull(p^k) = p<k>.
"""
import logging
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Optional, Tuple

from hankelring.algebra.polynomials import Polynomial
from hankelring.exceptions import PreconditionError
from hankelring.divisors.divisorial import (
    DivisorialIdeal,
    class_order,
    class_power,
    class_product,
    is_principal,
    reflexive_hull,
)
from hankelring.groebner.operations import element_quotient, radical_membership
from hankelring.hankel.identities import cm_initial_ideal_check
from hankelring.hankel.model import (
    HankelContext,
    p_bracket,
    p_bracket_generators,
    p_power_generators,
)
from hankelring.verifier.reports import VerificationReport

logger = logging.getLogger(__name__)

SYMBOLIC_ANCHOR = "Thm class-group: symbolic powers: p^(k) = p<k> for 1 <= k <= n-t+2"
CLASS_GROUP_ANCHOR = (
    "Thm class-group: divisor class group: Cl(R) is cyclic of order n-t+2 generated by [p]; "
    "omega_R = p^(2) is minimally generated by C(n-1, t-1) elements of degree t-1 and has class "
    "order n-t+2 (odd) or (n-t+2)/2 (even)"
)
Q_POWER_ANCHOR = (
    "Remark mcm: rank one MCM modules: q^i is isomorphic to p^(n-t+2-i) for q = p<n-t+1>"
)
VALUATION_ANCHOR = (
    "Lemma valuation: valuation along p: v([1..t-1 | i_1..i_{t-1}]) = n+1-i_{t-1}, and v is "
    "additive"
)


def _top(ctx: HankelContext) -> int:
    return ctx.n - ctx.t + 2


def prime_ideal(ctx: HankelContext) -> DivisorialIdeal:
    return DivisorialIdeal(ctx, p_bracket(ctx, 1), label="p")


def bracket_ideal(ctx: HankelContext, k: int) -> DivisorialIdeal:
    return DivisorialIdeal(ctx, p_bracket(ctx, k), label=f"p<{k}>")


def symbolic_power_verify(ctx: HankelContext, k: int) -> VerificationReport:
    t, n = ctx.t, ctx.n
    parameters = dict(ctx.parameters(), k=k)
    if t < 2 or not 1 <= k <= _top(ctx):
        return VerificationReport.not_applicable(
            "symbolic-power", parameters, SYMBOLIC_ANCHOR, f"needs t >= 2 and 1 <= k <= {_top(ctx)}"
        )
    bracket = p_bracket(ctx, k)
    prime = p_bracket(ctx, 1)

    power_contained = all(bracket.contains(f) for f in p_power_generators(ctx, k))
    radical = prime.contains_ideal(bracket) and all(
        radical_membership(g, bracket) for g in p_bracket_generators(ctx, 1)
    )
    unmixed = cm_initial_ideal_check(ctx, k)
    outside = [ctx.x(ctx.nvars), ctx.minor(tuple(range(2, t + 1)), tuple(range(n - t + 2, n + 1)))]
    stable = all(element_quotient(bracket, w) == bracket for w in outside)
    hull = class_power(prime_ideal(ctx), k)
    notes = [] if unmixed.passed else list(unmixed.notes)
    return VerificationReport.compare(
        "symbolic-power",
        parameters,
        SYMBOLIC_ANCHOR,
        computed={
            "ordinary_power_contained": power_contained,
            "radical_is_p": radical,
            "length": unmixed.computed["length"],
            "initial_containment": unmixed.computed["initial_containment"],
            "quotient_stable": stable,
            "hull_of_power_is_bracket": hull.preimage == bracket,
        },
        expected={
            "ordinary_power_contained": True,
            "radical_is_p": True,
            "length": k * comb(n, t - 2),
            "initial_containment": True,
            "quotient_stable": True,
            "hull_of_power_is_bracket": True,
        },
        notes=notes,
    )


def expected_canonical_order(t: int, n: int) -> int:
    top = n - t + 2
    return top if top % 2 else top // 2


def canonical_module(ctx: HankelContext) -> Tuple[DivisorialIdeal, int, Optional[int]]:
    """
    omega_R = p<2> with its minimal generator count and the order of its class.

    Raises
    ------
    PreconditionError
        If t < 2.
    """
    if ctx.t < 2:
        raise PreconditionError("The canonical module is computed for t >= 2.")
    omega = bracket_ideal(ctx, 2)
    omega.label = "omega"
    return omega, omega.generator_count(), class_order(omega)


def valuation_proxy(ctx: HankelContext, g: Polynomial) -> int:
    """
    max{k <= n-t+2 : g in p<k>}, and 0 when g is outside p: the valuation of g along p, capped.

    Raises
    ------
    PreconditionError
        If g is zero in R.
    """
    if ctx.t < 2:
        raise PreconditionError("The valuation along p needs t >= 2.")
    if ctx.quotient.is_zero(g):
        raise PreconditionError(f"{g.to_text()} is zero in {ctx}.")
    value = 0
    for k in range(1, _top(ctx) + 1):
        if not p_bracket(ctx, k).contains(g):
            break
        value = k
    return value


def class_group_check(ctx: HankelContext) -> VerificationReport:
    t, n = ctx.t, ctx.n
    parameters = ctx.parameters()
    if t < 2:
        return VerificationReport.not_applicable(
            "class-group", parameters, CLASS_GROUP_ANCHOR, "needs t >= 2"
        )
    top = _top(ctx)
    prime = prime_ideal(ctx)
    principal = []
    power = reflexive_hull(prime)
    for k in range(1, top + 1):
        principal.append(power.generator_count() == 1)
        if k < top:
            power = class_product(power, prime)
    order = next((k for k, flag in enumerate(principal, 1) if flag), None)
    logger.debug(f"Class powers of p in {ctx}: principal flags {principal}.")
    omega, omega_count, omega_order = canonical_module(ctx)
    degrees = [d for d, _ in omega.minimal_generators()]
    return VerificationReport.compare(
        "class-group",
        parameters,
        CLASS_GROUP_ANCHOR,
        computed={
            "class_order": order,
            "top_bracket_principal": bracket_ideal(ctx, top).generator_count() == 1,
            "principal_lower_powers": [k for k in range(1, top) if principal[k - 1]],
            "omega_generators": omega_count,
            "omega_generator_degree": min(degrees),
            "omega_class_order": omega_order,
        },
        expected={
            "class_order": top,
            "top_bracket_principal": True,
            "principal_lower_powers": [],
            "omega_generators": comb(n - 1, t - 1),
            "omega_generator_degree": t - 1,
            "omega_class_order": expected_canonical_order(t, n),
        },
    )


def q_power_class_check(ctx: HankelContext) -> VerificationReport:
    """[q^i] = [p^(n-t+2-i)], decided as: hull(q^i p^i) is principal."""
    parameters = ctx.parameters()
    if ctx.t < 2:
        return VerificationReport.not_applicable(
            "q-power-class", parameters, Q_POWER_ANCHOR, "needs t >= 2"
        )
    top = _top(ctx)
    prime = prime_ideal(ctx)
    q = bracket_ideal(ctx, top - 1)
    matching = [
        i
        for i in range(1, top)
        if is_principal(class_product(class_power(q, i), class_power(prime, i)))
    ]
    return VerificationReport.compare(
        "q-power-class",
        parameters,
        Q_POWER_ANCHOR,
        computed={"matching_powers": matching},
        expected={"matching_powers": list(range(1, top))},
    )


def valuation_check(ctx: HankelContext) -> VerificationReport:
    """
    The capped valuation of every generating minor [1..t-1 | i], and of every product of two of
    them, against min(n+1-i_{t-1}, n-t+2) and the capped sum.
    """
    t, n = ctx.t, ctx.n
    parameters = ctx.parameters()
    if t < 2:
        return VerificationReport.not_applicable(
            "valuation", parameters, VALUATION_ANCHOR, "needs t >= 2"
        )
    top = _top(ctx)
    rows = tuple(range(1, t))
    columns = list(combinations(range(1, n + 1), t - 1))
    values = {c: valuation_proxy(ctx, ctx.minor(rows, c)) for c in columns}
    formula_mismatches = [c for c in columns if values[c] != min(n + 1 - c[-1], top)]
    additivity_mismatches = []
    for a, b in combinations_with_replacement(columns, 2):
        f = ctx.minor(rows, a) * ctx.minor(rows, b)
        if valuation_proxy(ctx, f) != min(values[a] + values[b], top):
            additivity_mismatches.append((a, b))
    return VerificationReport.compare(
        "valuation",
        parameters,
        VALUATION_ANCHOR,
        computed={
            "minors": len(columns),
            "formula_mismatches": formula_mismatches,
            "additivity_mismatches": additivity_mismatches,
        },
        expected={"formula_mismatches": [], "additivity_mismatches": []},
    )

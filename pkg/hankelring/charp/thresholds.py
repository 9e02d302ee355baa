"""
Test exponents nu_e and F-pure thresholds of Hankel determinantal rings.

For q = p^e and an ideal a of R = A/I with preimage J,

    nu_e(a) = max{r >= 0 : (I^[q] : I) J^r is not contained in m^[q]},

and fpt(a) = lim nu_e(a) / q. The maximal ideal of R and the ideals I_i(H) of the polynomial ring
(where I = 0) are covered, each compared against its closed form.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from hankelring.algebra.linear import SparseEchelon, Vector
from hankelring.algebra.matrices import minors
from hankelring.algebra.polynomials import Polynomial
from hankelring.charp.fedder import below_bracket, context_colon, require_prime_field
from hankelring.exceptions import BudgetExhaustedError, PreconditionError
from hankelring.groebner.hilbert import height
from hankelring.groebner.settings import engine_settings
from hankelring.hankel.model import GeneralHankelContext, HankelContext
from hankelring.hankel.witness import fedder_witness
from hankelring.verifier.reports import Status, VerificationReport

logger = logging.getLogger(__name__)

DEFAULT_E_MAX = 2

FPT_MAXIMAL_ANCHOR = (
    "Thm fpt1: F-pure threshold of the homogeneous maximal ideal: fpt(m_R) = 2(t-1)/(n-t+2), with "
    "nu_e(m_R) = (t-1) floor(2(q-1)/(n-t+2))"
)
FPT_DETERMINANTAL_ANCHOR = (
    "Thm fpt2: F-pure threshold of the determinantal ideal: "
    "fpt(I_t(H)) = min{(n+t-2i+1)/(t-i+1) : 1 <= i <= t}"
)
HEIGHT_CHAIN_ANCHOR = (
    "Thm fpt2: heights of the smaller minors: height I_i(H) = n+t-2i+1, and the witness f lies in "
    "I_i(H)^(n+t-2i+1)"
)
SYMBOLIC_GAP_NOTE = (
    "only ordinary-power membership of the witness is certified; membership in the symbolic power "
    "I_i^(n+t-2i+1) is not"
)

Target = Union[str, int]
MAXIMAL = "maximal"


def fpt_maximal_closed_form(t: int, n: int) -> Fraction:
    return Fraction(2 * (t - 1), n - t + 2)


def nu_maximal_closed_form(t: int, n: int, q: int) -> int:
    return (t - 1) * ((2 * (q - 1)) // (n - t + 2))


def fpt_determinantal_closed_form(t: int, n: int) -> Fraction:
    """min{(n+t-2i+1)/(t-i+1)}; the minimum over i = 1 is the height n+t-1 of m."""
    return min(Fraction(n + t - 2 * i + 1, t - i + 1) for i in range(1, t + 1))


@dataclass(frozen=True)
class FrobeniusQuery:
    """
    One nu_e computation: the ring, the exponent e and the target ideal.

    `target` is "maximal" for the homogeneous maximal ideal of R, or an integer i for I_i(H) in
    the polynomial ring.
    """

    ctx: HankelContext
    e: int
    target: Target = MAXIMAL

    def __post_init__(self) -> None:
        require_prime_field(self.ctx)
        if self.e < 1:
            raise PreconditionError(f"Frobenius exponents start at 1, got e={self.e}.")
        if self.target != MAXIMAL and not (
            isinstance(self.target, int) and 1 <= self.target <= self.ctx.t
        ):
            raise PreconditionError(f"Unknown target {self.target!r} for {self.ctx}.")

    @property
    def p(self) -> int:
        return self.ctx.field.p

    @property
    def q(self) -> int:
        return self.p**self.e

    def evaluate(self) -> "NuObservation":
        if self.target == MAXIMAL:
            nu, trace = _scan_maximal(self.ctx, self.q)
        else:
            nu, trace = _scan_ambient(self.ctx, self.target, self.q)
        return NuObservation(self.e, self.q, nu, Fraction(nu, self.q), trace)


@dataclass(frozen=True)
class NuObservation:
    e: int
    q: int
    nu: int
    ratio: Fraction
    trace: Tuple[Tuple[int, bool], ...] = ()

    def to_dict(self) -> dict:
        return {
            "e": self.e,
            "q": self.q,
            "nu": self.nu,
            "ratio": self.ratio,
            "trace": [[r, contained] for r, contained in self.trace],
        }


@dataclass
class FptResult:
    """
    A closed-form threshold with the observations nu_e / q that support it.

    `exhausted` holds the budget that stopped the observations early, if any; the observations
    made before that point are kept.
    """

    closed_form: Fraction
    observations: List[NuObservation] = field(default_factory=list)
    verdict: bool = True
    failures: List[str] = field(default_factory=list)
    exhausted: Optional[int] = None

    @property
    def partial(self) -> bool:
        return self.exhausted is not None

    def report(self, check: str, parameters: dict, anchor: str) -> VerificationReport:
        if not self.observations and self.partial:
            return VerificationReport.budget_exhausted(check, parameters, anchor, self.exhausted)
        notes = list(self.failures)
        if self.partial:
            notes.append(
                f"observations stop at e={self.observations[-1].e}: "
                f"step budget {self.exhausted} exhausted"
            )
        return VerificationReport(
            check,
            parameters,
            anchor,
            Status.PASS if self.verdict else Status.FAIL,
            computed={
                "closed_form": self.closed_form,
                "observations": [o.to_dict() for o in self.observations],
            },
            expected={"closed_form": self.closed_form, "within_bounds": True},
            notes=notes,
        )


def _bracket_slack(f: Polynomial, q: int) -> int:
    """
    The largest r with f m^r not inside m^[q]: over the terms of f outside m^[q], the best total
    room sum(q - 1 - a_j) below the bracket. -1 when f lies in m^[q].
    """
    room = [sum(q - 1 - a for a in m) for m in f.terms if below_bracket(m, q)]
    return max(room, default=-1)


def _scan_maximal(ctx: HankelContext, q: int) -> Tuple[int, Tuple[Tuple[int, bool], ...]]:
    basis = context_colon(ctx, q).groebner_basis()
    slack = max((_bracket_slack(g, q) for g in basis), default=-1)
    trace = []
    r = 0
    while True:
        contained = r > slack
        trace.append((r, contained))
        if contained:
            break
        r += 1
    return r - 1, tuple(trace)


def nu_e_maximal_ideal(ctx: HankelContext, e: int) -> int:
    """
    nu_e of the maximal ideal of R, by ascending r until (I^[q] : I) m^r lies in m^[q].

    Containment in the monomial ideal m^[q] is decided generator-wise and term-wise on the
    reduced basis of the colon.

    Raises
    ------
    PreconditionError
        If the field is not GF(p) or e < 1.
    BudgetExhaustedError
        If the colon computation runs over the step budget.
    """
    return FrobeniusQuery(ctx, e).evaluate().nu


def _truncate(vector: Vector, q: int) -> Vector:
    return {m: c for m, c in vector.items() if below_bracket(m, q)}


def _times(vector: Vector, g: Polynomial, q: int, domain) -> Vector:
    out: Dict[tuple, int] = {}
    for a, c in vector.items():
        for b, d in g.terms.items():
            m = tuple(x + y for x, y in zip(a, b))
            if below_bracket(m, q):
                out[m] = domain.normalize(out.get(m, 0) + c * d)
    return {m: c for m, c in out.items() if c}


def _scan_ambient(
    ctx: Union[HankelContext, GeneralHankelContext], i: int, q: int
) -> Tuple[int, Tuple[Tuple[int, bool], ...]]:
    domain = ctx.ring.field
    generators = list(minors(ctx.matrix, i))
    budget = engine_settings().step_budget
    steps = 0
    # J^r modulo m^[q], one echelon basis per power
    span = SparseEchelon(domain)
    span.extend(_truncate(g.terms, q) for g in generators)
    trace = [(0, False)]
    r = 1
    while len(span):
        trace.append((r, False))
        following = SparseEchelon(domain)
        for vector in span.vectors():
            for g in generators:
                steps += len(vector) * len(g.terms)
                if steps > budget:
                    raise BudgetExhaustedError(
                        f"Powers of I_{i} modulo m^[{q}] ran over {budget} steps at r={r + 1}.",
                        budget,
                    )
                product = _times(vector, g, q, domain)
                if product:
                    following.add(product)
        span = following
        r += 1
    trace.append((r, True))
    logger.debug(f"nu for I_{i} at q={q}: {r - 1} after {steps} steps.")
    return r - 1, tuple(trace)


def nu_e_ambient(ctx: Union[HankelContext, GeneralHankelContext], i: int, e: int) -> int:
    """
    nu_e(I_i(H)) in the polynomial ring: max{r : I_i^r is not inside m^[q]}.

    Powers are built one factor at a time as spans modulo m^[q]; terms inside the bracket are
    dropped after every multiplication.

    Raises
    ------
    PreconditionError
        If the field is not GF(p), e < 1 or i is not a valid minor size.
    BudgetExhaustedError
        If the power spans run over the step budget.
    """
    domain = ctx.ring.field
    if not domain.characteristic:
        raise PreconditionError(f"nu_e needs a prime field, {ctx} is over {domain}.")
    if e < 1:
        raise PreconditionError(f"Frobenius exponents start at 1, got e={e}.")
    if not 1 <= i <= min(len(ctx.matrix), len(ctx.matrix[0])):
        raise PreconditionError(f"No minors of size {i} in {ctx}.")
    q = domain.characteristic**e
    return _scan_ambient(ctx, i, q)[0]


def _observe(queries: Sequence[FrobeniusQuery], result: FptResult) -> FptResult:
    for query in queries:
        try:
            result.observations.append(query.evaluate())
        except BudgetExhaustedError as e:
            logger.warning(f"{query.ctx}: nu_{query.e} for {query.target} stopped: {e}")
            result.exhausted = e.budget
            break
    return result


def _check_monotone(result: FptResult) -> None:
    ratios = [o.ratio for o in result.observations]
    if any(b < a for a, b in zip(ratios, ratios[1:])):
        result.failures.append(f"nu_e / q is not nondecreasing: {[str(r) for r in ratios]}")


def fpt_maximal_ideal(ctx: HankelContext, e_max: int = DEFAULT_E_MAX) -> FptResult:
    """
    fpt(m_R) as a closed form, with nu_e(m_R) observed for e = 1..e_max.

    Each observation must equal (t-1) floor(2(q-1)/(n-t+2)) and stay within 2(t-1)/q below the
    threshold; the ratios must not decrease.
    """
    t, n = ctx.t, ctx.n
    closed = fpt_maximal_closed_form(t, n)
    result = _observe([FrobeniusQuery(ctx, e) for e in range(1, e_max + 1)], FptResult(closed))
    for o in result.observations:
        expected = nu_maximal_closed_form(t, n, o.q)
        if o.nu != expected:
            result.failures.append(f"nu_{o.e} = {o.nu}, closed form {expected}")
        if not 0 <= closed - o.ratio <= Fraction(2 * (t - 1), o.q):
            result.failures.append(f"nu_{o.e}/q = {o.ratio} is not within 2(t-1)/q below {closed}")
    _check_monotone(result)
    result.verdict = not result.failures
    return result


def fpt_determinantal(ctx: HankelContext, e_max: int = DEFAULT_E_MAX) -> FptResult:
    """
    fpt(I_t(H)) as a closed form, with nu_e(I_t) in the polynomial ring for e = 1..e_max.

    Observations must lie within (n+t-1)/q of the threshold and the ratios must not decrease.
    """
    t, n = ctx.t, ctx.n
    closed = fpt_determinantal_closed_form(t, n)
    result = _observe([FrobeniusQuery(ctx, e, t) for e in range(1, e_max + 1)], FptResult(closed))
    for o in result.observations:
        if abs(o.ratio - closed) > Fraction(n + t - 1, o.q):
            result.failures.append(
                f"nu_{o.e}/q = {o.ratio} is farther than (n+t-1)/q from {closed}"
            )
    _check_monotone(result)
    result.verdict = not result.failures
    return result


def fpt_maximal_check(ctx: HankelContext, e_max: int = DEFAULT_E_MAX) -> VerificationReport:
    parameters = dict(ctx.parameters(), e_max=e_max)
    try:
        result = fpt_maximal_ideal(ctx, e_max)
    except PreconditionError as e:
        return VerificationReport.not_applicable(
            "fpt-maximal", parameters, FPT_MAXIMAL_ANCHOR, str(e)
        )
    report = result.report("fpt-maximal", parameters, FPT_MAXIMAL_ANCHOR)
    report.computed["within_bounds"] = result.verdict
    return report


def fpt_determinantal_check(ctx: HankelContext, e_max: int = DEFAULT_E_MAX) -> VerificationReport:
    parameters = dict(ctx.parameters(), e_max=e_max)
    try:
        result = fpt_determinantal(ctx, e_max)
    except PreconditionError as e:
        return VerificationReport.not_applicable(
            "fpt-determinantal", parameters, FPT_DETERMINANTAL_ANCHOR, str(e)
        )
    report = result.report("fpt-determinantal", parameters, FPT_DETERMINANTAL_ANCHOR)
    report.computed["within_bounds"] = result.verdict
    return report


def _witness_power(ctx: HankelContext, f: Polynomial, i: int) -> int:
    """The largest m <= n+t-2i+1 with f in I_i^m, searched upwards."""
    cap = min(ctx.n + ctx.t - 2 * i + 1, f.degree // i)
    if i == 1:
        # I_1 is the maximal ideal and f is homogeneous
        return cap
    ideal = ctx.determinantal_ideal(i)
    power = 0
    for m in range(1, cap + 1):
        if not (ideal**m).contains(f):
            break
        power = m
    return power


def height_chain_check(ctx: HankelContext) -> VerificationReport:
    """
    height I_i(H) for i = 1..t from the dimension engine, and the largest ordinary power of each
    I_i(H) that contains the Fedder witness.
    """
    t, n = ctx.t, ctx.n
    f = fedder_witness(ctx)
    heights = [height(ctx.determinantal_ideal(i)) for i in range(1, t + 1)]
    powers = [_witness_power(ctx, f, i) for i in range(1, t + 1)]
    logger.debug(f"{ctx}: heights {heights}, witness powers {powers}.")
    return VerificationReport.compare(
        "height-chain",
        ctx.parameters(),
        HEIGHT_CHAIN_ANCHOR,
        computed={
            "heights": heights,
            "witness_ordinary_powers": powers,
            "witness_degree": f.degree,
            "top_height": heights[-1],
        },
        expected={
            "heights": [n + t - 2 * i + 1 for i in range(1, t + 1)],
            "witness_degree": n + t - 1,
            "top_height": n - t + 1,
        },
        notes=[SYMBOLIC_GAP_NOTE],
    )

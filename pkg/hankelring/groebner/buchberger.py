"""
Buchberger's algorithm with the Gebauer-Möller installation of the product and chain criteria.

Polynomials are handled internally as plain term dicts with monic leading terms; the public
functions take and return `Polynomial` values. Every reduction step is charged to a
`ReductionBudget`, so a runaway computation ends with `BudgetExhaustedError` instead of hanging.
"""
import heapq
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from hankelring.algebra.coefficients import Coefficient, Field
from hankelring.algebra.monomials import ExponentVector, coprime, divides, lcm, multiply, quotient
from hankelring.algebra.polynomials import Polynomial
from hankelring.algebra.rings import MonomialOrder, PolynomialRing
from hankelring.exceptions import BudgetExhaustedError, RingMismatchError
from hankelring.groebner.settings import engine_settings

logger = logging.getLogger(__name__)

Terms = Dict[ExponentVector, Coefficient]


class ReductionBudget:
    """
    Counts reduction steps against a limit.

    Parameters
    ----------
    limit : int, optional
        Maximum number of steps; the active engine settings decide when omitted.
    """

    def __init__(self, limit: int = None) -> None:
        self.limit = limit if limit is not None else engine_settings().step_budget
        self.used = 0

    def charge(self, steps: int = 1) -> None:
        self.used += steps
        if self.used > self.limit:
            raise BudgetExhaustedError(
                f"Gröbner computation exceeded its budget of {self.limit} reduction steps.",
                budget=self.limit,
            )


def _subtract_multiple(
    f: Terms, g: Terms, shift: ExponentVector, factor: Coefficient, field: Field
) -> None:
    """f -= factor * x^shift * g, in place."""
    for m, c in g.items():
        target = multiply(m, shift)
        value = field.normalize(f.get(target, 0) - factor * c)
        if value:
            f[target] = value
        else:
            f.pop(target, None)


def _make_monic(f: Terms, lead: ExponentVector, field: Field) -> Terms:
    c = f[lead]
    if c == 1:
        return f
    inverse = field.inverse(c)
    return {m: field.normalize(v * inverse) for m, v in f.items()}


class _Reducer:
    def __init__(self, order: MonomialOrder, field: Field, budget: ReductionBudget) -> None:
        self.key = order.key
        self.field = field
        self.budget = budget

    def lead(self, f: Terms) -> ExponentVector:
        return max(f, key=self.key)

    def top_reduce(self, f: Terms, divisors: Sequence[Tuple[ExponentVector, Terms]]) -> Terms:
        """Reduce until the leading monomial of f is divisible by no divisor lead."""
        f = dict(f)
        while f:
            m = self.lead(f)
            for lead, g in divisors:
                if divides(lead, m):
                    self.budget.charge()
                    _subtract_multiple(f, g, quotient(m, lead), f[m], self.field)
                    break
            else:
                return f
        return f

    def full_reduce(self, f: Terms, divisors: Sequence[Tuple[ExponentVector, Terms]]) -> Terms:
        """Reduce every term of f; divisors must be monic."""
        f = dict(f)
        remainder: Terms = {}
        while f:
            m = self.lead(f)
            for lead, g in divisors:
                if divides(lead, m):
                    self.budget.charge()
                    _subtract_multiple(f, g, quotient(m, lead), f[m], self.field)
                    break
            else:
                remainder[m] = f.pop(m)
        return remainder


class _Basis:
    """Mutable state of one Buchberger run: polynomials, leads, live pairs, and the pair heap."""

    def __init__(self, reducer: _Reducer) -> None:
        self.reducer = reducer
        self.polys: List[Terms] = []
        self.leads: List[ExponentVector] = []
        self.active: List[bool] = []
        self.pairs: Dict[Tuple[int, int], ExponentVector] = {}
        self.heap: List[tuple] = []

    def divisors(self) -> List[Tuple[ExponentVector, Terms]]:
        return [(self.leads[i], self.polys[i]) for i in range(len(self.polys)) if self.active[i]]

    def _push(self, pair: Tuple[int, int], m: ExponentVector) -> None:
        self.pairs[pair] = m
        heapq.heappush(self.heap, (sum(m), self.reducer.key(m), pair))

    def insert(self, h: Terms) -> None:
        """Add h (top-reduced, monic) and update the pair set by the Gebauer-Möller criteria."""
        lead_h = self.reducer.lead(h)
        k = len(self.polys)

        candidates = {
            i: lcm(self.leads[i], lead_h) for i in range(k) if self.active[i]
        }
        # chain criterion on new pairs: drop a pair whose lcm is a proper multiple of another's
        survivors = [
            i
            for i, m in candidates.items()
            if not any(
                j != i and candidates[j] != m and divides(candidates[j], m) for j in candidates
            )
        ]
        # among equal lcms keep one pair, none if any of them has coprime leads
        by_lcm: Dict[ExponentVector, List[int]] = {}
        for i in survivors:
            by_lcm.setdefault(candidates[i], []).append(i)
        new_pairs = []
        for m, indices in by_lcm.items():
            if any(coprime(self.leads[i], lead_h) for i in indices):
                continue
            new_pairs.append((min(indices), m))

        # chain criterion on old pairs
        for (i, j), m in list(self.pairs.items()):
            if (
                divides(lead_h, m)
                and lcm(self.leads[i], lead_h) != m
                and lcm(self.leads[j], lead_h) != m
            ):
                del self.pairs[(i, j)]

        for i in range(k):
            if self.active[i] and divides(lead_h, self.leads[i]):
                self.active[i] = False

        self.polys.append(h)
        self.leads.append(lead_h)
        self.active.append(True)
        for i, m in sorted(new_pairs):
            self._push((i, k), m)

    def next_pair(self) -> Optional[Tuple[int, int]]:
        while self.heap:
            _, _, pair = heapq.heappop(self.heap)
            if pair in self.pairs:
                del self.pairs[pair]
                return pair
        return None


def _s_polynomial(
    f: Terms, lead_f: ExponentVector, g: Terms, lead_g: ExponentVector, field: Field
) -> Terms:
    m = lcm(lead_f, lead_g)
    s: Terms = {}
    for t, c in f.items():
        s[multiply(t, quotient(m, lead_f))] = c
    _subtract_multiple(s, g, quotient(m, lead_g), 1, field)
    return s


def _check_ring(polynomials: Sequence[Polynomial], ring: PolynomialRing) -> None:
    for f in polynomials:
        if f.ring != ring:
            raise RingMismatchError(f"Generator {f} belongs to {f.ring}, expected {ring}.")


def groebner(
    generators: Sequence[Polynomial],
    order: MonomialOrder,
    ring: PolynomialRing = None,
    budget: ReductionBudget = None,
) -> Tuple[Polynomial, ...]:
    """
    The reduced Gröbner basis of the ideal generated by `generators`.

    The output is monic, sorted by leading monomial in decreasing `order`, and independent of the
    generator order, so it is a canonical form of the ideal for `order`.

    Parameters
    ----------
    generators : Sequence[Polynomial]
        Generators of the ideal; zero entries are ignored.
    order : MonomialOrder
        The term order.
    ring : PolynomialRing, optional
        Needed only when `generators` is empty.
    budget : ReductionBudget, optional
        Step counter; a fresh one with the active engine budget by default.

    Returns
    -------
    Tuple[Polynomial, ...]
        The reduced basis, empty for the zero ideal and `(1,)` for the unit ideal.

    Raises
    ------
    BudgetExhaustedError
        If the computation takes more reduction steps than the budget allows.
    """
    if ring is None:
        if not generators:
            raise ValueError("Cannot infer the ring of an empty generator list.")
        ring = generators[0].ring
    _check_ring(generators, ring)
    field = ring.field
    budget = budget or ReductionBudget()
    reducer = _Reducer(order, field, budget)
    basis = _Basis(reducer)

    seeds = sorted(
        (dict(f.terms) for f in generators if f), key=lambda t: reducer.key(reducer.lead(t))
    )
    for f in seeds:
        h = reducer.top_reduce(f, basis.divisors())
        if h:
            basis.insert(_make_monic(h, reducer.lead(h), field))

    processed = 0
    while True:
        pair = basis.next_pair()
        if pair is None:
            break
        processed += 1
        i, j = pair
        s = _s_polynomial(basis.polys[i], basis.leads[i], basis.polys[j], basis.leads[j], field)
        h = reducer.top_reduce(s, basis.divisors())
        if h:
            basis.insert(_make_monic(h, reducer.lead(h), field))

    minimal = basis.divisors()
    reduced = []
    for index, (lead, g) in enumerate(minimal):
        others = minimal[:index] + minimal[index + 1 :]
        tail = reducer.full_reduce({m: c for m, c in g.items() if m != lead}, others)
        tail[lead] = 1
        reduced.append((lead, tail))
    reduced.sort(key=lambda item: reducer.key(item[0]), reverse=True)

    logger.debug(
        f"Reduced basis of {len(generators)} generators under {order.name}: {len(reduced)} "
        f"elements, {processed} pairs reduced, {budget.used} reduction steps."
    )
    return tuple(Polynomial.from_normalized(ring, terms) for _, terms in reduced)


def reduce_polynomial(
    f: Polynomial,
    divisors: Sequence[Polynomial],
    order: MonomialOrder,
    budget: ReductionBudget = None,
) -> Polynomial:
    """
    Fully reduce `f` by `divisors`; the remainder has no term divisible by a divisor lead.

    When `divisors` is a Gröbner basis the result is the normal form of `f`.
    """
    _check_ring(divisors, f.ring)
    field = f.ring.field
    reducer = _Reducer(order, field, budget or ReductionBudget())
    prepared = []
    for g in divisors:
        if g:
            lead, _ = g.leading_term(order)
            prepared.append((lead, _make_monic(dict(g.terms), lead, field)))
    return Polynomial.from_normalized(f.ring, reducer.full_reduce(f.terms, prepared))


def normal_form(
    f: Polynomial, generators: Sequence[Polynomial], order: MonomialOrder
) -> Polynomial:
    """The remainder of `f` modulo the reduced basis of `generators`; zero iff f is in the ideal."""
    basis = groebner(generators, order, ring=f.ring)
    return reduce_polynomial(f, basis, order)

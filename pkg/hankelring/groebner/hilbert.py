"""
Counting on initial ideals: Krull dimension, Hilbert series, lengths, minimal generators, socles.

Everything here reduces to the monomial ideal in_degrevlex(I), whose standard monomials form a
basis of A/I in every degree. Hilbert-series numerators are computed by pivoting on a variable,
    N(M) = N(M + (x)) + T * N(M : x),
down to ideals with pairwise coprime generators, where N is the product of the (1 - T^deg).
"""
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from hankelring.algebra.linear import polynomial_rank, rank
from hankelring.algebra.monomials import (
    ExponentVector,
    coprime,
    divides,
    minimalize,
    monomials_of_degree,
    support,
)
from hankelring.algebra.polynomials import Polynomial
from hankelring.algebra.rings import DEGREVLEX
from hankelring.exceptions import BudgetExhaustedError, NonHomogeneousError
from hankelring.groebner.ideals import Ideal

logger = logging.getLogger(__name__)

INDEPENDENT_SET_BUDGET = 10**6

SeriesCoefficients = List[int]


# ---------------------------------------------------------------------- series arithmetic


def _add(a: SeriesCoefficients, b: SeriesCoefficients) -> SeriesCoefficients:
    result = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        result[i] += c
    for i, c in enumerate(b):
        result[i] += c
    return _trim(result)


def _times(a: SeriesCoefficients, b: SeriesCoefficients) -> SeriesCoefficients:
    result = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                result[i + j] += x * y
    return _trim(result)


def _shift(a: SeriesCoefficients, k: int) -> SeriesCoefficients:
    return [0] * k + a


def _trim(a: SeriesCoefficients) -> SeriesCoefficients:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def _divide_by_one_minus_t(a: SeriesCoefficients) -> Optional[SeriesCoefficients]:
    """a / (1 - T) when it is a polynomial, else None."""
    if sum(a) != 0:
        return None
    quotient = []
    running = 0
    for c in a[:-1]:
        running += c
        quotient.append(running)
    return _trim(quotient) if quotient else [0]


# ---------------------------------------------------------------------- monomial ideals


def hilbert_numerator(monomials: Sequence[ExponentVector], nvars: int) -> SeriesCoefficients:
    """
    Coefficients (by power of T) of the numerator of the Hilbert series of A / (monomials),
    written over (1 - T)^nvars.
    """
    generators = list(minimalize(monomials))
    if not generators:
        return [1]
    if not any(generators[0]):
        return [0]
    if all(coprime(a, b) for i, a in enumerate(generators) for b in generators[i + 1 :]):
        result = [1]
        for g in generators:
            d = sum(g)
            result = _times(result, [1] + [0] * (d - 1) + [-1])
        return result
    counts = [0] * nvars
    for g in generators:
        for i in support(g):
            counts[i] += 1
    pivot = max(range(nvars), key=lambda i: (counts[i], -i))
    x = tuple(1 if i == pivot else 0 for i in range(nvars))
    with_pivot = [g for g in generators if not g[pivot]] + [x]
    colon = [tuple(e - 1 if i == pivot and e else e for i, e in enumerate(g)) for g in generators]
    return _add(hilbert_numerator(with_pivot, nvars), _shift(hilbert_numerator(colon, nvars), 1))


def reduced_series(numerator: SeriesCoefficients, nvars: int) -> Tuple[SeriesCoefficients, int]:
    """Cancel (1 - T) factors: return (h-polynomial, dimension)."""
    h = numerator
    dimension = nvars
    while dimension > 0:
        quotient = _divide_by_one_minus_t(h)
        if quotient is None:
            break
        h = quotient
        dimension -= 1
    return h, dimension


def hilbert_function_values(
    numerator: SeriesCoefficients, nvars: int, max_degree: int
) -> List[int]:
    values = []
    for d in range(max_degree + 1):
        if nvars == 0:
            values.append(numerator[d] if d < len(numerator) else 0)
            continue
        values.append(
            sum(c * comb(d - i + nvars - 1, nvars - 1) for i, c in enumerate(numerator) if i <= d)
        )
    return values


def independent_set_dimension(monomials: Sequence[ExponentVector], nvars: int) -> int:
    """
    The largest number of variables whose monomials avoid the ideal: no generator has support
    inside the chosen set.
    """
    supports = [frozenset(support(m)) for m in minimalize(monomials)]
    if any(not s for s in supports):
        return -1
    best = 0
    visited = 0

    def grow(chosen: frozenset, start: int) -> None:
        nonlocal best, visited
        visited += 1
        if visited > INDEPENDENT_SET_BUDGET:
            raise BudgetExhaustedError(
                "Independent set search exceeded its budget.", budget=INDEPENDENT_SET_BUDGET
            )
        best = max(best, len(chosen))
        if len(chosen) + (nvars - start) <= best:
            return
        for i in range(start, nvars):
            candidate = chosen | {i}
            if not any(s <= candidate for s in supports):
                grow(candidate, i + 1)

    grow(frozenset(), 0)
    return best


def standard_monomials(
    monomials: Sequence[ExponentVector], nvars: int, degree: int
) -> List[ExponentVector]:
    """Monomials of the given degree outside the monomial ideal, in ascending exponent order."""
    generators = minimalize(monomials)
    return sorted(
        m for m in monomials_of_degree(nvars, degree) if not any(divides(g, m) for g in generators)
    )


# ---------------------------------------------------------------------- ideals


@dataclass
class DimensionReport:
    """
    Dimension data of A / I for a homogeneous ideal I.

    `length` is None when the quotient is not Artinian; `hilbert_function` runs from degree 0 to
    the top nonzero degree when Artinian, and to `max_degree` otherwise.
    """

    dimension: int
    length: Optional[int]
    multiplicity: int
    hilbert_function: pd.Series
    nvars: int
    numerator: SeriesCoefficients = field(default_factory=list)

    @property
    def height(self) -> int:
        return self.nvars - self.dimension


def _require_homogeneous(I: Ideal) -> None:
    if not I.is_homogeneous():
        raise NonHomogeneousError(f"{I} is not homogeneous.")


def dimension_and_length(I: Ideal, max_degree: int = None) -> DimensionReport:
    """
    Krull dimension, length and Hilbert function of A / I.

    The dimension is the largest independent set of variables for in_degrevlex(I) and is
    cross-checked against the pole order of the Hilbert series at T = 1.

    Raises
    ------
    NonHomogeneousError
        If I is not homogeneous.
    """
    _require_homogeneous(I)
    nvars = I.ring.nvars
    leads = I.initial_monomials(DEGREVLEX)
    if any(not any(m) for m in leads):
        series = pd.Series([], dtype=int, name="hilbert_function")
        series.index.name = "degree"
        return DimensionReport(-1, 0, 0, series, nvars, [0])
    numerator = hilbert_numerator(leads, nvars)
    h, series_dimension = reduced_series(numerator, nvars)
    dimension = independent_set_dimension(leads, nvars)
    if dimension != series_dimension:
        raise ArithmeticError(
            f"Dimension mismatch for {I}: independent sets give {dimension}, "
            f"Hilbert series gives {series_dimension}."
        )
    if dimension == 0:
        top = len(h) - 1
        values = h
        length = sum(h)
    else:
        top = max_degree if max_degree is not None else max([sum(m) for m in leads] + [0]) + 2
        values = hilbert_function_values(numerator, nvars, top)
        length = None
    series = pd.Series(values[: top + 1], index=range(top + 1), name="hilbert_function")
    series.index.name = "degree"
    logger.debug(f"dim A/I = {dimension}, h-polynomial {h} for {len(leads)} initial generators.")
    return DimensionReport(
        dimension=dimension,
        length=length,
        multiplicity=sum(h),
        hilbert_function=series,
        nvars=nvars,
        numerator=numerator,
    )


def height(I: Ideal) -> int:
    return I.ring.nvars - dimension_and_length(I).dimension


def _graded_pieces(generators: Sequence[Polynomial]) -> Dict[int, List[Polynomial]]:
    pieces: Dict[int, List[Polynomial]] = {}
    for f in generators:
        pieces.setdefault(f.degree, []).append(f)
    return pieces


def min_generators(J: Ideal, modulo: Ideal = None) -> List[Tuple[int, int]]:
    """
    Graded minimal generator counts of J / 𝔪J, as sorted (degree, count) pairs.

    With `modulo` = I, J is read as the preimage of an ideal of A / I and the counts are those of
    the image ideal in A / I: everything is compared through normal forms modulo I.

    Raises
    ------
    NonHomogeneousError
        If J or `modulo` is not homogeneous.
    """
    _require_homogeneous(J)
    if modulo is not None:
        _require_homogeneous(modulo)

    def reduce(f: Polynomial) -> Polynomial:
        return modulo.normal_form(f) if modulo is not None else f

    ring = J.ring
    generators = [reduce(f) for f in J.generators]
    generators = [f for f in generators if f]
    pieces = _graded_pieces(generators)
    counts = []
    for d in sorted(pieces):
        lower = []
        for e, group in pieces.items():
            if e >= d:
                continue
            multipliers = [ring.monomial(m) for m in monomials_of_degree(ring.nvars, d - e)]
            lower.extend(reduce(g * x) for g in group for x in multipliers)
        lower = [f for f in lower if f]
        base = polynomial_rank(lower)
        total = polynomial_rank(lower + pieces[d])
        if total > base:
            counts.append((d, total - base))
    return counts


def generator_count(J: Ideal, modulo: Ideal = None) -> int:
    return sum(count for _, count in min_generators(J, modulo))


def socle_dimensions(I: Ideal) -> Dict[int, int]:
    """
    Socle dimension of the Artinian quotient A / I in each degree.

    In degree d the socle is the kernel of f -> (x_1 f, ..., x_k f) from (A/I)_d to
    ((A/I)_{d+1})^k, computed on standard monomials with normal forms.

    Raises
    ------
    NonHomogeneousError
        If I is not homogeneous.
    ValueError
        If A / I is not Artinian.
    """
    report = dimension_and_length(I)
    if report.dimension != 0:
        raise ValueError(f"The quotient by {I} is not Artinian (dimension {report.dimension}).")
    ring = I.ring
    leads = I.initial_monomials(DEGREVLEX)
    top = len(report.hilbert_function) - 1
    dimensions = {}
    for d in range(top + 1):
        basis = standard_monomials(leads, ring.nvars, d)
        if not basis:
            continue
        following = standard_monomials(leads, ring.nvars, d + 1)
        if not following:
            dimensions[d] = len(basis)
            continue
        position = {m: k for k, m in enumerate(following)}
        rows = []
        for b in basis:
            row = [0] * (ring.nvars * len(following))
            for i in range(ring.nvars):
                image = I.normal_form(ring.monomial(b) * ring.gen(i))
                for m, c in image.terms.items():
                    row[i * len(following) + position[m]] = c
            rows.append(row)
        kernel = len(basis) - rank(rows, ring.field)
        if kernel:
            dimensions[d] = kernel
    return dimensions

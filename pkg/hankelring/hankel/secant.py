"""
Secant varieties of the rational normal curve as images of the map x_{i+1} -> h_i.

S = F[u_1..u_{t-1}, v_1..v_{t-1}] and h_i = sum_j u_j^{n+t-2-i} v_j^i for 0 <= i <= n+t-2. The
Hankel matrix M in the h_i has rank at most t-1, and the kernel of A -> S is exactly I_t(H).
"""
import logging
import random
from itertools import combinations_with_replacement
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from hankelring.algebra.coefficients import Field, PrimeField, RationalField
from hankelring.algebra.linear import nullity
from hankelring.algebra.matrices import PolynomialMatrix, minors
from hankelring.algebra.monomials import ExponentVector
from hankelring.algebra.polynomials import Polynomial, product
from hankelring.algebra.rings import PolynomialRing
from hankelring.exceptions import PreconditionError
from hankelring.groebner.hilbert import dimension_and_length
from hankelring.groebner.ideals import Ideal
from hankelring.groebner.operations import eliminate
from hankelring.hankel.model import HankelContext
from hankelring.verifier.reports import VerificationReport

logger = logging.getLogger(__name__)

PARAMETRIZATION_ANCHOR = (
    "Eq. (secant): parametrization: the kernel of x_{i+1} -> h_i is I_t(H), and the Hankel "
    "matrix in the h_i has rank at most t-1"
)
NOT_PURE_ANCHOR = (
    "Prop. not-pure: failure of F-purity in the limit: every h_i lies in "
    "(u_j - v_j, sum_j v_j^{n+t-2}), an ideal of height t"
)
SOCLE_INDEPENDENCE_ANCHOR = (
    "Thm ratsing: F-rationality: products h_{i_1}...h_{i_{t-1}} with t-1 <= i_1 <= ... <= n-1 "
    "stay linearly independent modulo (u_j^n, v_j^n) when p >= t"
)


class SecantContext:
    """
    The ring S, the secant generators h_0..h_{n+t-2} and the t x n Hankel matrix M[i][j] = h_{i+j}.

    Parameters
    ----------
    t : int
        At least 2.
    n : int
        At least t - 1.
    field : Field, optional
        Coefficient field, QQ by default.
    """

    def __init__(self, t: int, n: int, field: Field = None) -> None:
        if t < 2 or n < t - 1:
            raise PreconditionError(
                f"Secant generators need t >= 2 and n >= t - 1, got t={t}, n={n}."
            )
        self.t = t
        self.n = n
        self.field = field if field is not None else RationalField()
        names = tuple(f"u{j}" for j in range(1, t)) + tuple(f"v{j}" for j in range(1, t))
        self.ring = PolynomialRing(variables=names, field=self.field)
        self.top = n + t - 2
        self.h: List[Polynomial] = [self._generator(i) for i in range(self.top + 1)]
        self.matrix: PolynomialMatrix = [[self.h[i + j] for j in range(n)] for i in range(t)]

    def u(self, j: int) -> Polynomial:
        return self.ring.gen(j - 1)

    def v(self, j: int) -> Polynomial:
        return self.ring.gen(self.t - 1 + j - 1)

    def _generator(self, i: int) -> Polynomial:
        total = self.ring.zero()
        for j in range(1, self.t):
            total = total + self.u(j) ** (self.top - i) * self.v(j) ** i
        return total

    def parameters(self) -> dict:
        return {"t": self.t, "n": self.n, "field": str(self.field)}


def secant_generators(t: int, n: int, field: Field = None) -> SecantContext:
    return SecantContext(t, n, field)


def parametrization_kernel(t: int, n: int, field: Field = None) -> Ideal:
    """
    The kernel of F[x1..x_{n+t-1}] -> S, x_{i+1} -> h_i, as an ideal of the x ring.

    Computed by eliminating the u and v variables from (x_{i+1} - h_i).
    """
    secant = SecantContext(t, n, field)
    x_names = tuple(f"x{i}" for i in range(1, n + t))
    graph_ring = PolynomialRing(variables=secant.ring.variables + x_names, field=secant.field)
    generators = [
        graph_ring.gen(f"x{i + 1}") - h.to_ring(graph_ring) for i, h in enumerate(secant.h)
    ]
    return eliminate(Ideal(graph_ring, generators), secant.ring.variables)


def _random_vanishing(
    ctx: HankelContext, secant: SecantContext, rng: random.Random, samples: int
) -> int:
    """Number of random points (u, v) at which every generator of I vanishes on (h_i(u, v))."""
    field = secant.field
    hits = 0
    for _ in range(samples):
        point = [field.random_element(rng) for _ in range(secant.ring.nvars)]
        image = [h.evaluate(point) for h in secant.h]
        if all(f.evaluate(image) == field.zero for f in ctx.ideal.generators):
            hits += 1
    return hits


def parametrization_check(
    t: int, n: int, field: Field = None, seed: int = 0, samples: int = 10
) -> VerificationReport:
    parameters = {"t": t, "n": n, "field": str(field or RationalField())}
    if t < 2:
        return VerificationReport.not_applicable(
            "parametrization",
            parameters,
            PARAMETRIZATION_ANCHOR,
            "t = 1: R = F has no secant model",
        )
    ctx = HankelContext(t, n, field)
    secant = SecantContext(t, n, ctx.field)
    kernel = parametrization_kernel(t, n, ctx.field)
    vanishing_minors = all(not m for m in minors(secant.matrix, t))
    hits = _random_vanishing(ctx, secant, random.Random(seed), samples)
    logger.debug(f"Kernel of the secant map for t={t}, n={n}: {kernel}.")
    return VerificationReport.compare(
        "parametrization",
        parameters,
        PARAMETRIZATION_ANCHOR,
        computed={
            "kernel_equals_ideal": kernel == ctx.ideal,
            "kernel_basis_size": len(kernel.groebner_basis()),
            "t_minors_of_M_vanish": vanishing_minors,
            "random_points_vanishing": hits,
        },
        expected={
            "kernel_equals_ideal": True,
            "t_minors_of_M_vanish": True,
            "random_points_vanishing": samples,
        },
        seed=seed,
    )


def not_pure_ideal(secant: SecantContext) -> Ideal:
    """(u_1 - v_1, ..., u_{t-1} - v_{t-1}, v_1^{n+t-2} + ... + v_{t-1}^{n+t-2}) in S."""
    t = secant.t
    generators = [secant.u(j) - secant.v(j) for j in range(1, t)]
    power_sum = sum((secant.v(j) ** secant.top for j in range(2, t)), secant.v(1) ** secant.top)
    generators.append(power_sum)
    return Ideal(secant.ring, generators)


def not_pure_ingredient_check(t: int, n: int, field: Field = None) -> VerificationReport:
    parameters = {"t": t, "n": n, "field": str(field or RationalField())}
    if t < 3:
        return VerificationReport.not_applicable(
            "not-pure-ingredient", parameters, NOT_PURE_ANCHOR, "needs t >= 3"
        )
    secant = SecantContext(t, n, field)
    J = not_pure_ideal(secant)
    diagonal = [secant.v(j) for j in range(1, t)] * 2
    power_sum = J.generators[-1]
    return VerificationReport.compare(
        "not-pure-ingredient",
        parameters,
        NOT_PURE_ANCHOR,
        computed={
            "diagonal_images": all(
                h.substitute(diagonal, secant.ring) == power_sum for h in secant.h
            ),
            "h_in_ideal": all(J.contains(h) for h in secant.h),
            "quotient_dimension": dimension_and_length(J).dimension,
        },
        expected={"diagonal_images": True, "h_in_ideal": True, "quotient_dimension": t - 2},
    )


def _truncate(f: Polynomial, bound: int) -> Dict[ExponentVector, int]:
    """Residue modulo (u_j^bound, v_j^bound): drop every term with an exponent >= bound."""
    return {m: c for m, c in f.terms.items() if max(m) < bound}


def _target_monomial(secant: SecantContext, indices: Sequence[int]) -> ExponentVector:
    return tuple(secant.top - k for k in indices) + tuple(indices)


def _multiplicity_factor(indices: Sequence[int]) -> int:
    result = 1
    for k in set(indices):
        result *= factorial(indices.count(k))
    return result


def socle_independence_check(t: int, n: int, p: Optional[int]) -> VerificationReport:
    """
    Injectivity of lambda -> residue of sum lambda_i h_{i_1}...h_{i_{t-1}} modulo (u_j^n, v_j^n).

    Rows are the nondecreasing index tuples in [t-1, n-1], columns the surviving monomials. The
    coefficient of u_1^{N-k_1} v_1^{k_1} ... (N = n+t-2) in the product for the tuple k' is the
    product of the factorials of the repeat multiplicities of k when k' = k, and 0 otherwise.
    """
    parameters = {"t": t, "n": n, "p": p}
    field = PrimeField(p) if p else RationalField()
    if t < 2:
        return VerificationReport.not_applicable(
            "socle-independence", parameters, SOCLE_INDEPENDENCE_ANCHOR, "needs t >= 2"
        )
    if p and p < t:
        return VerificationReport.not_applicable(
            "socle-independence", parameters, SOCLE_INDEPENDENCE_ANCHOR, f"needs p >= t, got p={p}"
        )
    secant = SecantContext(t, n, field)
    tuples: List[Tuple[int, ...]] = list(combinations_with_replacement(range(t - 1, n), t - 1))
    residues = [
        _truncate(product((secant.h[i] for i in choice), secant.ring), n) for choice in tuples
    ]
    columns = sorted({m for residue in residues for m in residue})
    rows = [[residue.get(m, 0) for m in columns] for residue in residues]
    injective = nullity(rows, field) == 0 if tuples else True
    pattern = True
    factors_below_t = True
    for k in tuples:
        target = _target_monomial(secant, k)
        weight = _multiplicity_factor(k)
        factors_below_t = factors_below_t and all(k.count(i) < t for i in set(k))
        for other, residue in zip(tuples, residues):
            expected = field.normalize(weight) if other == k else 0
            if residue.get(target, 0) != expected:
                pattern = False
        if not field.normalize(weight):
            pattern = False
    return VerificationReport.compare(
        "socle-independence",
        parameters,
        SOCLE_INDEPENDENCE_ANCHOR,
        computed={
            "tuples": len(tuples),
            "injective": injective,
            "coefficient_pattern": pattern,
            "repeat_factors_below_t": factors_below_t,
        },
        expected={"injective": True, "coefficient_pattern": True, "repeat_factors_below_t": True},
    )

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Tuple

from hankelring.algebra.coefficients import Field, RationalField
from hankelring.algebra.matrices import PolynomialMatrix, hankel_matrix, minor, minors
from hankelring.algebra.monomials import monomials_of_degree
from hankelring.algebra.polynomials import Polynomial, product
from hankelring.algebra.rings import PolynomialRing
from hankelring.exceptions import PreconditionError
from hankelring.groebner.ideals import Ideal, QuotientRing


class HankelContext:
    """
    The Hankel determinantal ring R = A / I_t(H) for a t x n Hankel matrix H.

    A = F[x1, ..., x_{n+t-1}] and H[i][j] = x_{i+j-1} with 1-based indices. The ring, matrix, ideal
    and quotient are built once; the ideals p<k> are memoized on the context.

    Parameters
    ----------
    t : int
        Number of rows, at least 1.
    n : int
        Number of columns, at least t.
    field : Field, optional
        Coefficient field, QQ by default.

    Raises
    ------
    PreconditionError
        If not 1 <= t <= n.
    """

    def __init__(self, t: int, n: int, field: Field = None) -> None:
        if not 1 <= t <= n:
            raise PreconditionError(f"Hankel contexts need 1 <= t <= n, got t={t}, n={n}.")
        self.t = t
        self.n = n
        self.field = field if field is not None else RationalField()
        self.ring = PolynomialRing.from_prefix("x", n + t - 1, self.field)
        self.matrix: PolynomialMatrix = hankel_matrix(self.ring, t, n)
        self.ideal = Ideal(self.ring, list(minors(self.matrix, t)))
        self.quotient = QuotientRing(self.ring, self.ideal)
        self._brackets: Dict[int, Ideal] = {}

    @property
    def nvars(self) -> int:
        return self.n + self.t - 1

    def x(self, i: int) -> Polynomial:
        """The variable x_i, 1-based."""
        if not 1 <= i <= self.nvars:
            raise PreconditionError(f"x{i} is not a variable of {self.ring}.")
        return self.ring.gen(i - 1)

    def minor(self, rows, columns) -> Polynomial:
        return minor(self.matrix, rows, columns)

    def determinantal_ideal(self, size: int) -> Ideal:
        """I_size(H) in A."""
        return Ideal(self.ring, list(minors(self.matrix, size)))

    def parameters(self) -> dict:
        return {"t": self.t, "n": self.n, "field": str(self.field)}

    def __repr__(self) -> str:
        return f"HankelContext(t={self.t}, n={self.n}, field={self.field})"


class GeneralHankelContext:
    """
    An r x s Hankel matrix in x1..x_{r+s-1} together with the ideal I_u of its u-minors.
    """

    def __init__(self, r: int, s: int, u: int, field: Field = None) -> None:
        if r < 1 or s < 1 or not 1 <= u <= min(r, s):
            raise PreconditionError(f"Need 1 <= u <= min(r, s), got r={r}, s={s}, u={u}.")
        self.r = r
        self.s = s
        self.u = u
        self.field = field if field is not None else RationalField()
        self.ring = PolynomialRing.from_prefix("x", r + s - 1, self.field)
        self.matrix: PolynomialMatrix = hankel_matrix(self.ring, r, s)
        self.ideal = Ideal(self.ring, list(minors(self.matrix, u)))

    def minor(self, rows, columns) -> Polynomial:
        return minor(self.matrix, rows, columns)

    def parameters(self) -> dict:
        return {"r": self.r, "s": self.s, "u": self.u, "field": str(self.field)}

    def __repr__(self) -> str:
        return f"GeneralHankelContext(r={self.r}, s={self.s}, u={self.u}, field={self.field})"


def build(t: int, n: int, field: Field = None) -> HankelContext:
    return HankelContext(t, n, field)


@dataclass(frozen=True)
class Canonicalization:
    """Outcome of rewriting I_u of an r x s Hankel matrix as maximal minors of a t x n one."""

    r: int
    s: int
    u: int
    t: int
    n: int
    equal: bool
    basis_size: int


def canonicalize(r: int, s: int, u: int, field: Field = None) -> Canonicalization:
    """
    (t, n) = (u, r + s - u), with the ideal equality I_u(r x s Hankel) = I_t(t x n Hankel)
    decided by comparing reduced degrevlex bases in F[x1..x_{r+s-1}].
    """
    general = GeneralHankelContext(r, s, u, field)
    t, n = u, r + s - u
    maximal = Ideal(general.ring, list(minors(hankel_matrix(general.ring, t, n), t)))
    basis = general.ideal.groebner_basis()
    return Canonicalization(
        r=r, s=s, u=u, t=t, n=n, equal=basis == maximal.groebner_basis(), basis_size=len(basis)
    )


def p_bracket_generators(ctx: HankelContext, k: int) -> List[Polynomial]:
    if ctx.t < 2:
        raise PreconditionError("The ideals p<k> need t >= 2.")
    if not 1 <= k <= ctx.n - ctx.t + 2:
        raise PreconditionError(f"k must lie in 1..{ctx.n - ctx.t + 2}, got {k}.")
    rows = tuple(range(1, ctx.t))
    return [
        ctx.minor(rows, columns)
        for columns in combinations(range(1, ctx.n - k + 2), ctx.t - 1)
    ]


def p_bracket(ctx: HankelContext, k: int) -> Ideal:
    """
    Preimage in A of the ideal of R generated by the maximal minors of the first t - 1 rows and
    first n - k + 1 columns of H.

    Raises
    ------
    PreconditionError
        If t < 2 or k lies outside 1..n-t+2.
    """
    if k not in ctx._brackets:
        ctx._brackets[k] = ctx.quotient.ideal(p_bracket_generators(ctx, k))
    return ctx._brackets[k]


def delta(ctx: HankelContext) -> Polynomial:
    """The leading principal (t-1)-minor [1..t-1 | 1..t-1]."""
    if ctx.t < 2:
        raise PreconditionError("Delta needs t >= 2.")
    indices = tuple(range(1, ctx.t))
    return ctx.minor(indices, indices)


def hsop_indices(ctx: HankelContext) -> Tuple[int, ...]:
    t, n = ctx.t, ctx.n
    return tuple(range(1, t)) + tuple(range(n + 1, n + t))


def hsop(ctx: HankelContext) -> List[Polynomial]:
    """x1..x_{t-1}, x_{n+1}..x_{n+t-1}: a homogeneous system of parameters of R."""
    return [ctx.x(i) for i in hsop_indices(ctx)]


def cm_hsop(ctx: HankelContext) -> List[Polynomial]:
    """x1..x_{t-2}, x_{n+1}..x_{n+t-1}: parameters of R / p<k> for every k."""
    t, n = ctx.t, ctx.n
    return [ctx.x(i) for i in list(range(1, t - 1)) + list(range(n + 1, n + t))]


def socle_monomials(ctx: HankelContext) -> List[Polynomial]:
    """The degree t-1 monomials in x_t..x_n, which span the socle of R modulo the hsop."""
    indices = range(ctx.t - 1, ctx.n)
    return [
        ctx.ring.monomial(m)
        for m in sorted(monomials_of_degree(ctx.nvars, ctx.t - 1, indices), reverse=True)
    ]


def p_power_generators(ctx: HankelContext, k: int) -> List[Polynomial]:
    """
    Products of k generators of p<1>: together with I they generate the preimage of the ordinary
    power p^k.
    """
    generators = p_bracket_generators(ctx, 1)
    return [
        product(choice, ctx.ring) for choice in combinations_with_replacement(generators, k)
    ]

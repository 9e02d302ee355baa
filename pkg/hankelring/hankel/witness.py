import logging

from hankelring.algebra.matrices import hankel_matrix, minor
from hankelring.algebra.polynomials import Polynomial
from hankelring.algebra.rings import LEX
from hankelring.hankel.model import HankelContext

logger = logging.getLogger(__name__)


class WitnessError(Exception):
    def __init__(self, message):
        super().__init__(message)


def _range(first: int, last: int) -> tuple:
    return tuple(range(first, last + 1))


def fedder_witness(ctx: HankelContext) -> Polynomial:
    """
    A product of two minors of an almost square Hankel matrix in all of x1..x_{n+t-1} whose lex
    initial term is the squarefree monomial x1 x2 ... x_{n+t-1}.

    With N = n + t - 1 variables:
    - N odd, k = (N + 1) / 2: f = [1..k | 1..k] * [1..k-1 | 2..k] on the k x k Hankel matrix;
    - N even, k = N / 2: f = [1..k | 1..k] * [1..k | 2..k+1] on the k x (k+1) Hankel matrix.

    Raises
    ------
    WitnessError
        If the lex initial term of f is not x1 x2 ... x_N.
    """
    ring = ctx.ring
    count = ctx.nvars
    if count % 2:
        k = (count + 1) // 2
        square = hankel_matrix(ring, k, k)
        second = minor(square, _range(1, k - 1), _range(2, k)) if k > 1 else ring.one()
        f = minor(square, _range(1, k), _range(1, k)) * second
    else:
        k = count // 2
        wide = hankel_matrix(ring, k, k + 1)
        f = minor(wide, _range(1, k), _range(1, k)) * minor(wide, _range(1, k), _range(2, k + 1))
    lead = f.leading_monomial(LEX) if f else None
    if lead != (1,) * count:
        raise WitnessError(
            f"The witness for {ctx} has lex initial monomial "
            f"{ring.monomial_text(lead) if lead else '0'}, not x1*...*x{count}."
        )
    logger.debug(f"Witness for {ctx}: {len(f.terms)} terms.")
    return f

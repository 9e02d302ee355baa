"""
Exact linear algebra over the coefficient fields.

Dense ranks go through sympy's `DomainMatrix`, which works natively over QQ and GF(p). Spans that
grow one vector at a time (power spans modulo a monomial ideal, products of secant generators)
use `SparseEchelon`, an incremental row-echelon basis keyed by monomials.
"""
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Sequence

from sympy.polys.matrices import DomainMatrix

from hankelring.algebra.coefficients import Coefficient, Field
from hankelring.algebra.polynomials import Polynomial

Vector = Dict[Hashable, Coefficient]


def to_domain_matrix(rows: Sequence[Sequence[Coefficient]], field: Field) -> DomainMatrix:
    domain = field.sympy_domain()
    width = len(rows[0]) if rows else 0
    entries = [[field.to_sympy(value) for value in row] for row in rows]
    return DomainMatrix(entries, (len(rows), width), domain)


def rank(rows: Sequence[Sequence[Coefficient]], field: Field) -> int:
    if not rows or not rows[0]:
        return 0
    return to_domain_matrix(rows, field).rank()


def nullity(rows: Sequence[Sequence[Coefficient]], field: Field) -> int:
    """Dimension of the kernel of the map v -> v * M (left kernel), one row per source vector."""
    return len(rows) - rank(rows, field)


def coefficient_rows(polynomials: Sequence[Polynomial]) -> List[List[Coefficient]]:
    """Coefficient matrix of the polynomials over the union of their monomials, in sorted order."""
    if not polynomials:
        return []
    columns = sorted({m for f in polynomials for m in f.terms})
    return [[f.terms.get(m, 0) for m in columns] for f in polynomials]


def polynomial_rank(polynomials: Sequence[Polynomial]) -> int:
    polynomials = [f for f in polynomials if f]
    if not polynomials:
        return 0
    return rank(coefficient_rows(polynomials), polynomials[0].ring.field)


def field_determinant(rows: Sequence[Sequence[Coefficient]], field: Field) -> Coefficient:
    value = to_domain_matrix(rows, field).det()
    return field.convert(_from_sympy(value, field))


def _from_sympy(value, field: Field):
    if field.characteristic:
        return int(value)
    return Fraction(int(value.numerator), int(value.denominator))


class SparseEchelon:
    """
    An incremental echelon basis of sparse vectors over a field.

    Vectors are dicts from hashable coordinates (monomials) to coefficients. Stored vectors have
    distinct pivots, so membership and insertion are one reduction each.

    Parameters
    ----------
    field : Field
        Coefficient field.
    key : callable, optional
        Sort key on coordinates; the pivot of a vector is its key-largest coordinate.
    """

    def __init__(self, field: Field, key=None) -> None:
        self.field = field
        self.key = key
        self.rows: Dict[Hashable, Vector] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def _pivot(self, vector: Vector) -> Hashable:
        return max(vector, key=self.key) if self.key else max(vector)

    def reduce(self, vector: Vector) -> Vector:
        """The remainder of `vector` after eliminating every pivot of the basis."""
        field = self.field
        remainder = {c: field.convert(v) for c, v in vector.items() if field.convert(v)}
        done: Vector = {}
        while remainder:
            pivot = self._pivot(remainder)
            row = self.rows.get(pivot)
            if row is None:
                done[pivot] = remainder.pop(pivot)
                continue
            factor = remainder[pivot]
            for coordinate, value in row.items():
                updated = field.normalize(remainder.get(coordinate, 0) - factor * value)
                if updated:
                    remainder[coordinate] = updated
                else:
                    remainder.pop(coordinate, None)
        return done

    def add(self, vector: Vector) -> bool:
        """Insert `vector` if it is independent of the basis; report whether it was."""
        remainder = self.reduce(vector)
        if not remainder:
            return False
        pivot = self._pivot(remainder)
        inverse = self.field.inverse(remainder[pivot])
        self.rows[pivot] = {
            c: self.field.normalize(v * inverse) for c, v in remainder.items()
        }
        return True

    def extend(self, vectors: Iterable[Vector]) -> int:
        return sum(1 for vector in vectors if self.add(vector))

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def vectors(self) -> List[Vector]:
        return [self.rows[p] for p in sorted(self.rows, key=self.key)]


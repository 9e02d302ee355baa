from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from hankelring.algebra.coefficients import Field
from hankelring.algebra.polynomials import Polynomial
from hankelring.algebra.rings import PolynomialRing
from hankelring.exceptions import PreconditionError, RingMismatchError

PolynomialMatrix = List[List[Polynomial]]

DEFAULT_DET_CAP = 8


class MatrixShapeError(Exception):
    def __init__(self, message):
        super().__init__(message)


def det(matrix: Sequence[Sequence[Polynomial]], cap: int = DEFAULT_DET_CAP) -> Polynomial:
    """
    Exact determinant of a square matrix of polynomials.

    Expands along the rows from the top, memoizing the determinant of every trailing row block
    by its set of remaining columns, so each of the 2^size column subsets is expanded once.

    Parameters
    ----------
    matrix : Sequence[Sequence[Polynomial]]
        Square matrix, all entries in one ring.
    cap : int, optional
        Largest accepted size, 8 by default.

    Raises
    ------
    MatrixShapeError
        If the matrix is empty, not square, or larger than `cap`.
    RingMismatchError
        If the entries do not share a ring.
    """
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise MatrixShapeError(f"Determinants need a nonempty square matrix, got {_shape(matrix)}.")
    if size > cap:
        raise MatrixShapeError(f"Matrix of size {size} exceeds the determinant cap of {cap}.")
    ring = matrix[0][0].ring
    if any(entry.ring != ring for row in matrix for entry in row):
        raise RingMismatchError("Matrix entries must belong to a single ring.")

    memo: Dict[Tuple[int, ...], Polynomial] = {}

    def expand(row: int, columns: Tuple[int, ...]) -> Polynomial:
        if row == size:
            return ring.one()
        if columns in memo:
            return memo[columns]
        total = ring.zero()
        for position, column in enumerate(columns):
            entry = matrix[row][column]
            if not entry:
                continue
            rest = columns[:position] + columns[position + 1 :]
            term = entry * expand(row + 1, rest)
            total = total - term if position % 2 else total + term
        memo[columns] = total
        return total

    return expand(0, tuple(range(size)))


def _shape(matrix) -> str:
    return f"{len(matrix)}x{len(matrix[0]) if matrix else 0}"


def submatrix(
    matrix: Sequence[Sequence[Polynomial]], rows: Sequence[int], columns: Sequence[int]
) -> PolynomialMatrix:
    """Rows and columns are 1-based."""
    height, width = len(matrix), len(matrix[0]) if matrix else 0
    for index, bound, label in [(rows, height, "row"), (columns, width, "column")]:
        if any(i < 1 or i > bound for i in index):
            raise PreconditionError(f"{label} indices {tuple(index)} out of range 1..{bound}.")
    return [[matrix[i - 1][j - 1] for j in columns] for i in rows]


def minor(
    matrix: Sequence[Sequence[Polynomial]], rows: Sequence[int], columns: Sequence[int]
) -> Polynomial:
    """The minor [rows | columns] with 1-based indices."""
    if len(rows) != len(columns):
        raise MatrixShapeError(f"Minor needs as many rows as columns, got {rows} and {columns}.")
    return det(submatrix(matrix, rows, columns))


def minors(matrix: Sequence[Sequence[Polynomial]], size: int) -> Iterator[Polynomial]:
    """All size x size minors, rows then columns in lexicographic index order."""
    height, width = len(matrix), len(matrix[0]) if matrix else 0
    if size < 1 or size > min(height, width):
        raise PreconditionError(f"No {size}-minors in a {height}x{width} matrix.")
    for rows in combinations(range(1, height + 1), size):
        for columns in combinations(range(1, width + 1), size):
            yield minor(matrix, rows, columns)


def hankel_matrix(
    ring: PolynomialRing, rows: int, columns: int, offset: int = 0
) -> PolynomialMatrix:
    """
    The Hankel matrix with (i, j) entry the variable of position i + j - 1 + offset (1-based).
    """
    if rows + columns - 1 + offset > ring.nvars:
        raise PreconditionError(
            f"A {rows}x{columns} Hankel matrix needs {rows + columns - 1 + offset} variables, "
            f"{ring} has {ring.nvars}."
        )
    variables = ring.gens()
    return [[variables[i + j + offset] for j in range(columns)] for i in range(rows)]


def generic_matrix(
    rows: int, columns: int, field: Field, prefix: str = "y"
) -> Tuple[PolynomialRing, PolynomialMatrix]:
    """
    A matrix of distinct indeterminates `y{i}_{j}` and the ring they generate, ordered by rows.
    """
    names = tuple(f"{prefix}{i}_{j}" for i in range(1, rows + 1) for j in range(1, columns + 1))
    ring = PolynomialRing(variables=names, field=field)
    variables = ring.gens()
    return ring, [[variables[i * columns + j] for j in range(columns)] for i in range(rows)]


def evaluate_matrix(matrix: Sequence[Sequence[Polynomial]], point) -> List[List]:
    return [[entry.evaluate(point) for entry in row] for row in matrix]

import random
from fractions import Fraction

import pytest
import sympy

from hankelring.algebra.coefficients import PrimeField, RationalField
from hankelring.algebra.linear import (
    SparseEchelon,
    field_determinant,
    nullity,
    polynomial_rank,
    rank,
)
from hankelring.algebra.matrices import (
    MatrixShapeError,
    det,
    evaluate_matrix,
    generic_matrix,
    hankel_matrix,
    minor,
    minors,
)
from hankelring.algebra.polynomials import Polynomial
from hankelring.algebra.rings import PolynomialRing
from hankelring.exceptions import PreconditionError


@pytest.fixture(scope="module")
def ring():
    return PolynomialRing.from_prefix("x", 5, RationalField())


@pytest.fixture(scope="module")
def hankel_2x3(ring):
    return hankel_matrix(ring, 2, 3)


class TestMatrices:
    def test_hankel_matrix(self, ring, hankel_2x3):
        assert [[entry.to_text() for entry in row] for row in hankel_2x3] == [
            ["x1", "x2", "x3"],
            ["x2", "x3", "x4"],
        ]
        shifted = hankel_matrix(ring, 2, 2, offset=1)
        assert shifted[0][0].to_text() == "x2"

        # Not enough variables. Failure expected.
        with pytest.raises(PreconditionError):
            hankel_matrix(ring, 3, 4)

    def test_minors(self, ring, hankel_2x3):
        texts = [f.to_text() for f in minors(hankel_2x3, 2)]
        assert texts == ["x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"]
        assert minor(hankel_2x3, (1, 2), (1, 3)).to_text() == "x1*x4 - x2*x3"

        # No 3-minors in a 2x3 matrix. Failure expected.
        with pytest.raises(PreconditionError):
            list(minors(hankel_2x3, 3))

        # Row index out of range. Failure expected.
        with pytest.raises(PreconditionError):
            minor(hankel_2x3, (1, 3), (1, 2))

    def test_det(self, ring):
        square = hankel_matrix(ring, 3, 3)
        value = det(square)
        assert value.degree == 3
        # the 3x3 Hankel determinant at (1, t, t^2, t^3, t^4) vanishes
        assert value.evaluate([1, 2, 4, 8, 16]) == 0
        assert value.evaluate([0, 0, 1, 0, 0]) == -1

        y_ring, generic = generic_matrix(2, 2, RationalField())
        assert det(generic) == Polynomial.parse("y1_1*y2_2 - y1_2*y2_1", y_ring)

        # A non-square matrix. Failure expected.
        with pytest.raises(MatrixShapeError):
            det(hankel_matrix(ring, 2, 3))

        # A matrix over the determinant cap. Failure expected.
        with pytest.raises(MatrixShapeError):
            det(hankel_matrix(ring, 2, 2), cap=1)

    @pytest.mark.parametrize("seed", range(4))
    def test_det_alternating_and_multilinear(self, ring, seed):
        rng = random.Random(seed)
        gens = ring.gens()

        def entry():
            return sum((rng.randint(-3, 3) * x for x in gens), rng.randint(-3, 3) * ring.one())

        matrix = [[entry() for _ in range(3)] for _ in range(3)]
        value = det(matrix)

        swapped = [matrix[1], matrix[0], matrix[2]]
        assert det(swapped) == -value
        repeated = [matrix[0], matrix[0], matrix[2]]
        assert det(repeated).is_zero()

        other = [entry() for _ in range(3)]
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        # the second row replaced by a * row + b * other
        combined = [matrix[0], [a * x + b * y for x, y in zip(matrix[1], other)], matrix[2]]
        replaced = [matrix[0], other, matrix[2]]
        assert det(combined) == a * value + b * det(replaced)

    def test_det_against_sympy(self):
        # sympy as an independent oracle on the 4x4 Hankel determinant
        big = PolynomialRing.from_prefix("x", 7, RationalField())
        symbols = sympy.symbols("x1:8")
        oracle = sympy.Matrix(4, 4, lambda i, j: symbols[i + j]).det()
        ours = sympy.sympify(det(hankel_matrix(big, 4, 4)).to_text().replace("^", "**"))
        assert sympy.expand(ours - oracle) == 0

    def test_evaluate_matrix(self, hankel_2x3):
        assert evaluate_matrix(hankel_2x3, [1, 2, 3, 4, 5]) == [[1, 2, 3], [2, 3, 4]]


class TestLinear:
    def test_rank(self):
        rows = [[1, 1], [1, 1]]
        assert rank(rows, RationalField()) == 1
        assert rank([[1, 2], [3, 4]], RationalField()) == 2
        # 1*4 - 2*3 = -2 vanishes mod 2
        assert rank([[1, 2], [3, 4]], PrimeField(2)) == 1
        assert rank([], RationalField()) == 0

    def test_nullity(self):
        assert nullity([[1, 1], [1, 1]], RationalField()) == 1
        assert nullity([[1, 2], [3, 4]], RationalField()) == 0
        assert nullity([[1, 2], [3, 4]], PrimeField(2)) == 1
        # three vectors in a plane
        assert nullity([[1, 0], [0, 1], [1, 1]], PrimeField(3)) == 1

    def test_field_determinant(self):
        assert field_determinant([[1, 2], [3, 4]], RationalField()) == -2
        assert field_determinant([[Fraction(1, 2), 0], [0, 4]], RationalField()) == 2
        assert field_determinant([[1, 2], [3, 4]], PrimeField(5)) == 3

    def test_polynomial_rank(self, ring):
        x1, x2 = ring.gen(0), ring.gen(1)
        assert polynomial_rank([x1 + x2, x1 - x2]) == 2
        assert polynomial_rank([x1 + x2, x1 + x2, ring.zero()]) == 1

        binary = ring.with_field(PrimeField(2))
        y1, y2 = binary.gen(0), binary.gen(1)
        assert polynomial_rank([y1 + y2, y1 - y2]) == 1

    def test_sparse_echelon(self):
        echelon = SparseEchelon(RationalField())
        assert echelon.add({"a": 1, "b": 1})
        assert echelon.add({"b": 2})
        # a = (a + b) - b
        assert not echelon.add({"a": 3})
        assert echelon.contains({"a": 1, "b": -1})
        assert not echelon.contains({"c": 1})
        assert len(echelon) == 2
        assert echelon.reduce({"a": 1, "c": 5}) == {"c": 5}

        assert SparseEchelon(PrimeField(3)).extend([{0: 1}, {1: 1}, {0: 1, 1: 1}]) == 2
        assert SparseEchelon(PrimeField(3)).extend([{0: 3}]) == 0

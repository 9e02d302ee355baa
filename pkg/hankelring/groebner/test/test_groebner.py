import os
import random

import pytest
import sympy

from hankelring.algebra.coefficients import PrimeField, RationalField
from hankelring.algebra.matrices import hankel_matrix, minors
from hankelring.algebra.polynomials import Polynomial
from hankelring.algebra.rings import DEGREVLEX, LEX, PolynomialRing
from hankelring.exceptions import (
    BudgetExhaustedError,
    NonHomogeneousError,
    PreconditionError,
    RingMismatchError,
)
from hankelring.groebner.buchberger import groebner, normal_form
from hankelring.groebner.cache import GroebnerCache
from hankelring.groebner.hilbert import (
    dimension_and_length,
    generator_count,
    height,
    min_generators,
    socle_dimensions,
)
from hankelring.groebner.ideals import Ideal, QuotientRing, ZeroIdealError
from hankelring.groebner.operations import (
    CharacteristicError,
    element_quotient,
    eliminate,
    frobenius_power,
    ideal_quotient,
    intersect,
    radical_membership,
    saturation,
)
from hankelring.groebner.settings import EngineSettings, engine_settings, use_engine_settings


@pytest.fixture(scope="module")
def ring():
    return PolynomialRing.from_prefix("x", 5, RationalField())


@pytest.fixture(scope="module")
def plane():
    return PolynomialRing(variables=("x", "y"), field=RationalField())


@pytest.fixture(scope="function")
def twisted_cubic(ring):
    # 2-minors of the 2x3 Hankel matrix in x1..x4, extended by x5
    return Ideal(ring, list(minors(hankel_matrix(ring, 2, 3), 2)))


@pytest.fixture(scope="module")
def ideal_of(plane):
    def _ideal_of(*texts, ring=plane):
        return Ideal.from_texts(ring, list(texts))

    return _ideal_of


class TestGroebner:
    def test_reduced_basis(self, ring, twisted_cubic):
        basis = twisted_cubic.groebner_basis()
        assert len(basis) == 3
        x2, x3 = ring.gen(1), ring.gen(2)
        assert [g.leading_monomial(DEGREVLEX) for g in basis] == [
            (x2 * x2).leading_monomial(DEGREVLEX),
            (x2 * x3).leading_monomial(DEGREVLEX),
            (x3 * x3).leading_monomial(DEGREVLEX),
        ]
        # the basis does not depend on the generator order
        assert groebner(list(reversed(twisted_cubic.generators)), DEGREVLEX) == basis

    def test_against_sympy(self, ring, twisted_cubic):
        # sympy as an independent oracle on the reduced degrevlex basis
        symbols = sympy.symbols("x1:6")

        def monic(text):
            return sympy.Poly(sympy.sympify(text.replace("^", "**")), *symbols).monic().as_expr()

        ours = {monic(g.to_text()) for g in twisted_cubic.groebner_basis()}
        oracle = sympy.groebner(
            [monic(f.to_text()) for f in twisted_cubic.generators], *symbols, order="grevlex"
        )
        assert ours == {monic(str(g)) for g in oracle.exprs}

    def test_unit_and_zero(self, plane, ideal_of):
        assert ideal_of("x", "x + 1").groebner_basis() == (plane.one(),)
        assert groebner([], DEGREVLEX, ring=plane) == ()

        # An empty generator list without a ring. Failure expected.
        with pytest.raises(ValueError):
            groebner([], DEGREVLEX)

    def test_membership(self, ring, twisted_cubic):
        f = Polynomial.parse("x1*x3*x5 - x2^2*x5 + x2*x4 - x3^2", ring)
        assert twisted_cubic.contains(f)
        assert f in twisted_cubic
        assert not twisted_cubic.contains(ring.gen(0))
        assert normal_form(f, twisted_cubic.generators, LEX).is_zero()

        # Ideals of different rings. Failure expected.
        with pytest.raises(RingMismatchError):
            twisted_cubic.contains_ideal(Ideal(ring.with_field(PrimeField(2))))

    def test_budget(self, ring):
        ideal = Ideal(ring, list(minors(hankel_matrix(ring, 2, 4), 2)))

        # A one-step budget cannot finish the basis. Failure expected.
        with use_engine_settings(step_budget=1):
            with pytest.raises(BudgetExhaustedError) as error:
                ideal.groebner_basis()
        assert error.value.budget == 1

        # The default budget is restored after the block. Success expected.
        assert engine_settings() == EngineSettings()
        assert ideal.contains(ideal.generators[-1])

    def test_settings(self, tmpdir):
        with use_engine_settings(EngineSettings(step_budget=5), cache_dir=str(tmpdir)) as active:
            assert engine_settings() is active
            assert active.step_budget == 5
            assert active.cache_dir == str(tmpdir)

        # A nonpositive budget. Failure expected.
        with pytest.raises(ValueError):
            EngineSettings(step_budget=0)


class TestOperations:
    def test_ideal_arithmetic(self, ideal_of):
        assert ideal_of("x") + ideal_of("y") == ideal_of("x", "y")
        assert ideal_of("x", "y") * ideal_of("x") == ideal_of("x^2", "x*y")
        assert ideal_of("x", "y") ** 2 == ideal_of("x^2", "x*y", "y^2")

    def test_intersect(self, ideal_of):
        assert intersect(ideal_of("x"), ideal_of("y")) == ideal_of("x*y")
        meet = intersect(ideal_of("x^2", "y"), ideal_of("x", "y^2"))
        assert meet == ideal_of("x^2", "x*y", "y^2")

    def test_quotients(self, plane, ideal_of):
        x, y = plane.gens()
        I = ideal_of("x^2", "x*y")
        assert element_quotient(I, x) == ideal_of("x", "y")
        assert ideal_quotient(I, ideal_of("x", "y")) == ideal_of("x")
        assert saturation(I, y) == ideal_of("x")
        assert element_quotient(I, x * x).is_unit()

        # The quotient by the zero ideal. Failure expected.
        with pytest.raises(ZeroIdealError):
            ideal_quotient(I, Ideal(plane))

    @pytest.mark.parametrize("seed", range(6))
    def test_quotient_containments(self, seed):
        ring = PolynomialRing(variables=("x", "y", "z"), field=PrimeField(3))
        rng = random.Random(seed)

        def draw():
            terms = {
                tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(1, 2) for _ in range(2)
            }
            return Polynomial(ring, terms)

        I = Ideal(ring, [draw() for _ in range(2)])
        J = Ideal(ring, [draw() for _ in range(2)])
        quotient = ideal_quotient(I, J)
        assert quotient.contains_ideal(I)
        assert I.contains_ideal(quotient * J)

    @pytest.mark.parametrize(
        "generators, f, expected",
        [
            (["x^2", "x*y"], "y", ["x"]),
            (["x*y^3"], "y", ["x"]),
            (["x^2*y", "x*y^2"], "x*y", ["1"]),
            (["x^3", "y"], "x", ["1"]),
            (["x^2 - x*y", "x*y - y^2"], "x", ["x - y"]),
            (["x^2", "x*y"], "3", ["x^2", "x*y"]),
            (["x*y - y^2"], "x", ["x*y - y^2"]),
        ],
    )
    def test_saturation(self, ideal_of, plane, generators, f, expected):
        I = ideal_of(*generators)
        saturated = saturation(I, Polynomial.parse(f, plane))
        assert saturated == ideal_of(*expected)
        assert saturated.contains_ideal(I)
        # saturating twice changes nothing
        assert saturation(saturated, Polynomial.parse(f, plane)) == saturated

    def test_saturation_of_prime(self, ring, twisted_cubic):
        # a prime ideal not containing x5 is saturated with respect to it
        assert saturation(twisted_cubic, ring.gen(4)) == twisted_cubic

        # Saturation by zero. Failure expected.
        with pytest.raises(PreconditionError):
            saturation(twisted_cubic, ring.zero())

    def test_eliminate(self):
        ring = PolynomialRing(variables=("t", "x", "y"), field=RationalField())
        I = Ideal.from_texts(ring, ["x - t^2", "y - t^3"])
        curve = eliminate(I, ["t"])
        plane = PolynomialRing(variables=("x", "y"), field=RationalField())
        assert curve == Ideal.from_texts(plane, ["x^3 - y^2"])

    def test_frobenius_power(self):
        binary = PolynomialRing(variables=("x", "y"), field=PrimeField(2))
        I = Ideal.from_texts(binary, ["x + y", "x*y"])
        bracket = frobenius_power(I, 4)
        assert bracket == Ideal.from_texts(binary, ["x^4 + y^4", "x^4*y^4"])

        # A q that is not a power of 2. Failure expected.
        with pytest.raises(CharacteristicError):
            frobenius_power(I, 3)

    def test_frobenius_power_carries_bases(self):
        binary = PolynomialRing(variables=("x", "y", "z"), field=PrimeField(2))
        I = Ideal.from_texts(binary, ["x + y", "x*y + z"])
        lex_basis = I.groebner_basis(LEX)
        bracket = frobenius_power(I, 4)
        cached = bracket.cached_bases()
        assert set(cached) == {LEX, DEGREVLEX}
        assert cached[LEX] == tuple(g.frobenius(4) for g in lex_basis)
        # the carried bases are the ones a fresh computation finds
        for order in (LEX, DEGREVLEX):
            assert set(cached[order]) == set(groebner(bracket.generators, order, ring=binary))

    def test_cached_bases_snapshot(self, ideal_of):
        I = ideal_of("x^2", "y")
        assert I.cached_bases() == {}
        basis = I.groebner_basis()
        snapshot = I.cached_bases()
        assert snapshot == {DEGREVLEX: basis}
        snapshot.clear()
        assert I.cached_bases() == {DEGREVLEX: basis}

    def test_formal_bracket(self, ideal_of):
        # Characteristic zero without the formal flag. Failure expected.
        with pytest.raises(CharacteristicError):
            frobenius_power(ideal_of("x + y"), 2)

        assert frobenius_power(ideal_of("x + y"), 2, formal=True) == ideal_of("x^2 + 2*x*y + y^2")

    def test_radical_membership(self, plane, ideal_of):
        x, y = plane.gens()
        assert radical_membership(x, ideal_of("x^3"))
        assert radical_membership(x * y, ideal_of("x^2", "y^5"))
        assert not radical_membership(y, ideal_of("x^3"))


class TestHilbert:
    def test_twisted_cubic(self, ring, twisted_cubic):
        report = dimension_and_length(twisted_cubic)
        # the extra variable x5 adds one to the dimension of the cone over the cubic
        assert report.dimension == 3
        assert report.length is None
        assert report.multiplicity == 3
        assert report.height == 2
        assert height(twisted_cubic) == 2
        assert min_generators(twisted_cubic) == [(2, 3)]

    def test_artinian(self, ideal_of):
        I = ideal_of("x^2", "y^2")
        report = dimension_and_length(I)
        assert report.dimension == 0
        assert report.length == 4
        assert list(report.hilbert_function) == [1, 2, 1]
        assert socle_dimensions(I) == {2: 1}
        assert socle_dimensions(ideal_of("x^2", "x*y", "y^3")) == {1: 1, 2: 1}

    def test_min_generators(self, ring, twisted_cubic, ideal_of):
        assert min_generators(ideal_of("x", "x^2", "y", "x*y")) == [(1, 2)]
        R = QuotientRing(ring, twisted_cubic)
        J = R.ideal([ring.gen(0), ring.gen(1)])
        assert generator_count(J, modulo=twisted_cubic) == 2

    def test_preconditions(self, ideal_of):
        # A nonhomogeneous ideal. Failure expected.
        with pytest.raises(NonHomogeneousError):
            dimension_and_length(ideal_of("x - y^2"))

        # The socle of a quotient that is not Artinian. Failure expected.
        with pytest.raises(ValueError):
            socle_dimensions(ideal_of("x^2"))


class TestQuotientRing:
    def test_quotient(self, ring, twisted_cubic):
        R = QuotientRing(ring, twisted_cubic)
        assert R.is_zero(Polynomial.parse("x1*x3 - x2^2", ring))
        assert not R.is_zero(ring.gen(0))
        lifted = R.ideal([ring.gen(0)])
        assert lifted.contains_ideal(twisted_cubic)
        assert R.residue_generators(lifted) == (ring.gen(0),)


class TestGroebnerCache:
    def test_cache(self, tmpdir, ring):
        directory = str(tmpdir.join("bases"))
        generators = list(minors(hankel_matrix(ring, 2, 3), 2))

        # A basis computed with a cache directory is written to disk. Success expected.
        with use_engine_settings(cache_dir=directory):
            basis = Ideal(ring, generators).groebner_basis()
            assert len(os.listdir(directory)) == 1
            # a fresh ideal reads the stored basis back
            assert Ideal(ring, generators).groebner_basis() == basis

        cache = GroebnerCache(directory)
        assert cache.load(ring, DEGREVLEX, generators) == basis
        assert cache.load(ring, LEX, generators) is None

        # An unreadable entry is ignored. Success expected.
        entry = os.path.join(directory, os.listdir(directory)[0])
        with open(entry, "w") as f:
            f.write("not a polynomial\n")
        assert cache.load(ring, DEGREVLEX, generators) is None

        assert cache.clear() == 1
        assert cache.clear() == 0
        assert GroebnerCache(str(tmpdir.join("missing"))).clear() == 0

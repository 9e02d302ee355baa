import pytest

from hankelring.algebra.polynomials import Polynomial
from hankelring.divisors.divisorial import (
    DivisorialIdeal,
    class_order,
    class_power,
    class_product,
    is_principal,
    reflexive_hull,
)
from hankelring.divisors.symbolic import (
    bracket_ideal,
    canonical_module,
    class_group_check,
    expected_canonical_order,
    prime_ideal,
    q_power_class_check,
    symbolic_power_verify,
    valuation_check,
    valuation_proxy,
)
from hankelring.exceptions import PreconditionError
from hankelring.groebner.ideals import ZeroIdealError
from hankelring.hankel.model import HankelContext, p_bracket
from hankelring.verifier.reports import Status


@pytest.fixture(scope="module")
def cubic():
    return HankelContext(2, 3)


@pytest.fixture(scope="module")
def quadric():
    return HankelContext(2, 2)


@pytest.fixture(scope="module")
def divisors(cubic):
    x = cubic.x
    return {
        "p": prime_ideal(cubic),
        "p<2>": bracket_ideal(cubic, 2),
        "q": DivisorialIdeal.from_generators(cubic, [x(2), x(3), x(4)], label="q"),
        "x1": DivisorialIdeal.from_generators(cubic, [x(1)], label="x1"),
    }


def assert_passed(report):
    assert report.status == Status.PASS, report.notes


class TestDivisorialIdeal:
    def test_init(self, cubic):
        p = prime_ideal(cubic)
        assert [f.to_text() for f in p.generators] == ["x1", "x2", "x3"]
        assert p.generator_count() == 3
        assert p.minimal_generators() == [(1, 3)]
        assert repr(p) == "DivisorialIdeal(p)"

        # An ideal that is zero in R. Failure expected.
        with pytest.raises(ZeroIdealError):
            DivisorialIdeal.from_generators(
                cubic, [Polynomial.parse("x1*x3 - x2^2", cubic.ring)]
            )

    def test_reflexive_hull(self, cubic):
        p = prime_ideal(cubic)
        # p is prime of height one, hence already reflexive
        assert reflexive_hull(p) == p
        assert reflexive_hull(p) is reflexive_hull(p)
        # the hull does not depend on the chosen element
        assert reflexive_hull(p, element=cubic.x(2)) == p

        # An element outside J. Failure expected.
        with pytest.raises(ZeroIdealError):
            reflexive_hull(p, element=cubic.x(4))

    @pytest.mark.parametrize("name", ["p", "p<2>", "q"])
    def test_hull_independent_of_element(self, divisors, cubic, name):
        J = divisors[name]
        hull = reflexive_hull(J)
        elements = list(J.generators) + [g * cubic.x(4) for g in J.generators]
        for a in elements:
            assert reflexive_hull(J, element=a) == hull

    @pytest.mark.parametrize(
        "first, second", [("p", "q"), ("p", "p<2>"), ("q", "p<2>"), ("p", "x1")]
    )
    def test_class_product_commutes(self, divisors, first, second):
        product = class_product(divisors[first], divisors[second])
        assert product == class_product(divisors[second], divisors[first])

    @pytest.mark.parametrize(
        "first, second, third", [("p", "q", "p<2>"), ("p", "p", "q"), ("q", "x1", "p")]
    )
    def test_class_product_associates(self, divisors, first, second, third):
        J1, J2, J3 = divisors[first], divisors[second], divisors[third]
        left = class_product(class_product(J1, J2), J3)
        assert left == class_product(J1, class_product(J2, J3))

    def test_inverse_classes(self, divisors):
        # p<2> is the inverse class of p; (x2, x3, x4) has the class of p
        assert is_principal(class_product(divisors["p"], divisors["p<2>"]))
        assert not is_principal(class_product(divisors["p"], divisors["q"]))
        q = divisors["q"]
        assert is_principal(class_product(q, class_product(q, q)))

    def test_class_arithmetic(self, cubic):
        p = prime_ideal(cubic)
        assert class_product(p, p).preimage == p_bracket(cubic, 2)
        assert class_power(p, 3).generator_count() == 1
        assert not is_principal(p)
        assert is_principal(bracket_ideal(cubic, 3))
        assert class_order(p) == 3
        assert class_order(p, bound=2) is None

        # A nonpositive power. Failure expected.
        with pytest.raises(ValueError):
            class_power(p, 0)


class TestSymbolicPowers:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_cubic(self, cubic, k):
        report = symbolic_power_verify(cubic, k)
        assert_passed(report)
        assert report.computed["length"] == k

    def test_not_applicable(self, cubic):
        assert symbolic_power_verify(cubic, 4).status == Status.NOT_APPLICABLE
        assert symbolic_power_verify(HankelContext(1, 3), 1).status == Status.NOT_APPLICABLE

    @pytest.mark.slow
    def test_three_rows(self):
        ctx = HankelContext(3, 4)
        for k in (1, 2, 3):
            assert_passed(symbolic_power_verify(ctx, k))


class TestClassGroup:
    def test_canonical_module(self, cubic, quadric):
        omega, count, order = canonical_module(cubic)
        assert omega.label == "omega"
        assert (count, order) == (2, 3)

        # R is Gorenstein for t = n: omega is principal
        _, count, order = canonical_module(quadric)
        assert (count, order) == (1, 1)

        # t = 1. Failure expected.
        with pytest.raises(PreconditionError):
            canonical_module(HankelContext(1, 2))

    @pytest.mark.parametrize("t, n, order", [(2, 3, 3), (2, 4, 2), (3, 3, 1), (2, 5, 5)])
    def test_expected_canonical_order(self, t, n, order):
        assert expected_canonical_order(t, n) == order

    def test_class_group(self, cubic, quadric):
        report = class_group_check(cubic)
        assert_passed(report)
        assert report.computed["class_order"] == 3
        assert report.computed["omega_generators"] == 2
        assert_passed(class_group_check(quadric))

    def test_q_power_class(self, cubic):
        report = q_power_class_check(cubic)
        assert_passed(report)
        assert report.computed["matching_powers"] == [1, 2]

    @pytest.mark.slow
    def test_four_columns(self):
        ctx = HankelContext(2, 4)
        assert_passed(class_group_check(ctx))
        assert_passed(q_power_class_check(ctx))


class TestValuation:
    def test_valuation_proxy(self, cubic):
        assert [valuation_proxy(cubic, cubic.x(i)) for i in (1, 2, 3, 4)] == [3, 2, 1, 0]
        assert valuation_proxy(cubic, cubic.x(2) * cubic.x(3)) == 3

        # An element that is zero in R. Failure expected.
        with pytest.raises(PreconditionError):
            valuation_proxy(cubic, cubic.ring.zero())

    def test_valuation_check(self, cubic):
        report = valuation_check(cubic)
        assert_passed(report)
        assert report.computed["minors"] == 3
        assert valuation_check(HankelContext(1, 2)).status == Status.NOT_APPLICABLE

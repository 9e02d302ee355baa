from fractions import Fraction

import pytest

from hankelring.algebra.coefficients import PrimeField
from hankelring.charp.fedder import (
    below_bracket,
    fedder_check,
    frobenius_colon,
    outside_bracket,
    require_prime_field,
)
from hankelring.charp.thresholds import (
    SYMBOLIC_GAP_NOTE,
    FptResult,
    FrobeniusQuery,
    fpt_determinantal,
    fpt_determinantal_check,
    fpt_determinantal_closed_form,
    fpt_maximal_check,
    fpt_maximal_closed_form,
    fpt_maximal_ideal,
    height_chain_check,
    nu_e_ambient,
    nu_e_maximal_ideal,
    nu_maximal_closed_form,
)
from hankelring.exceptions import PreconditionError
from hankelring.groebner.settings import use_engine_settings
from hankelring.hankel.model import GeneralHankelContext, HankelContext
from hankelring.verifier.reports import Status


@pytest.fixture(scope="module")
def context():
    # contexts are cached per (t, n, p) so the colon ideals are computed once per module
    contexts = {}

    def _context(t, n, p):
        if (t, n, p) not in contexts:
            contexts[(t, n, p)] = HankelContext(t, n, PrimeField(p))
        return contexts[(t, n, p)]

    return _context


def assert_passed(report):
    assert report.status == Status.PASS, report.notes


class TestBracket:
    def test_below_bracket(self, context):
        assert below_bracket((1, 1, 0), 2)
        assert not below_bracket((2, 0, 0), 2)

        ring = context(2, 2, 2).ring
        x1, x2, x3 = ring.gens()
        assert outside_bracket(x1 * x3 + x2 * x2, 2)
        assert not outside_bracket(x2 * x2 + x1 * x1 * x3, 2)

    def test_require_prime_field(self, context):
        assert require_prime_field(context(2, 2, 3)) == 3

        # A rational context. Failure expected.
        with pytest.raises(PreconditionError):
            require_prime_field(HankelContext(2, 2))


class TestFedder:
    @pytest.mark.parametrize("t, n, p", [(2, 2, 2), (2, 3, 2), (2, 2, 3), (2, 3, 3)])
    def test_f_pure(self, context, t, n, p):
        report = fedder_check(context(t, n, p))
        assert_passed(report)
        assert report.computed["f_pure"]

    def test_colon_contains_bracket(self, context):
        ctx = context(2, 3, 2)
        colon = frobenius_colon(ctx.ideal, 2)
        assert all(colon.contains(g * g) for g in ctx.ideal.generators)

    def test_rational_field(self):
        # Characteristic zero. Not applicable expected.
        assert fedder_check(HankelContext(2, 3)).status == Status.NOT_APPLICABLE

    @pytest.mark.slow
    def test_three_rows(self, context):
        assert_passed(fedder_check(context(3, 3, 2)))


class TestClosedForms:
    @pytest.mark.parametrize(
        "t, n, value", [(2, 3, Fraction(2, 3)), (3, 3, 2), (2, 2, 1), (3, 5, 1)]
    )
    def test_fpt_maximal(self, t, n, value):
        assert fpt_maximal_closed_form(t, n) == value

    @pytest.mark.parametrize(
        "t, n, value", [(2, 2, 1), (2, 3, 2), (3, 3, 1), (2, 5, 3), (3, 5, Fraction(7, 3))]
    )
    def test_fpt_determinantal(self, t, n, value):
        assert fpt_determinantal_closed_form(t, n) == value

    @pytest.mark.parametrize(
        "t, n, q, nu", [(2, 2, 3, 2), (2, 3, 2, 0), (2, 3, 4, 2), (3, 3, 2, 2)]
    )
    def test_nu_maximal(self, t, n, q, nu):
        assert nu_maximal_closed_form(t, n, q) == nu


class TestFrobeniusQuery:
    def test_validation(self, context):
        query = FrobeniusQuery(context(2, 2, 3), 2)
        assert (query.p, query.q) == (3, 9)

        # A rational context. Failure expected.
        with pytest.raises(PreconditionError):
            FrobeniusQuery(HankelContext(2, 2), 1)

        # e below 1. Failure expected.
        with pytest.raises(PreconditionError):
            FrobeniusQuery(context(2, 2, 3), 0)

        # A minor size larger than t. Failure expected.
        with pytest.raises(PreconditionError):
            FrobeniusQuery(context(2, 2, 3), 1, target=3)

    def test_observation(self, context):
        observation = FrobeniusQuery(context(2, 2, 3), 1).evaluate()
        assert observation.nu == 2
        assert observation.ratio == Fraction(2, 3)
        # the trace ends at the first containment
        assert observation.trace[-1] == (3, True)
        assert all(not contained for _, contained in observation.trace[:-1])
        assert observation.to_dict()["trace"][0] == [0, False]


class TestNu:
    @pytest.mark.parametrize(
        "t, n, p, nu", [(2, 2, 3, 2), (2, 3, 2, 0), (2, 2, 2, 1), (2, 3, 3, 1)]
    )
    def test_maximal_ideal(self, context, t, n, p, nu):
        assert nu_e_maximal_ideal(context(t, n, p), 1) == nu

    def test_ambient(self, context):
        ctx = context(2, 2, 2)
        # nu_e of the maximal ideal of a polynomial ring in N variables is N(q - 1)
        assert nu_e_ambient(ctx, 1, 1) == 3
        assert nu_e_ambient(ctx, 1, 2) == 9
        assert nu_e_ambient(ctx, 2, 1) == 1

        general = GeneralHankelContext(2, 3, 2, PrimeField(2))
        assert nu_e_ambient(general, 2, 1) == nu_e_ambient(context(2, 3, 2), 2, 1)

        # Minors larger than the matrix. Failure expected.
        with pytest.raises(PreconditionError):
            nu_e_ambient(ctx, 3, 1)

        # Characteristic zero. Failure expected.
        with pytest.raises(PreconditionError):
            nu_e_ambient(HankelContext(2, 2), 1, 1)

    def test_budget(self, context):
        # A one-step budget stops the power spans. Failure expected.
        with use_engine_settings(step_budget=1):
            result = fpt_determinantal(context(2, 3, 2), e_max=1)
        assert result.partial
        assert result.observations == []
        report = result.report("fpt-determinantal", {}, "anchor")
        assert report.status == Status.BUDGET_EXHAUSTED


class TestThresholds:
    @pytest.mark.parametrize("t, n, p", [(2, 2, 2), (2, 3, 2), (2, 2, 3), (2, 3, 3)])
    def test_fpt_maximal(self, context, t, n, p):
        result = fpt_maximal_ideal(context(t, n, p), e_max=1)
        assert result.verdict, result.failures
        assert result.closed_form == fpt_maximal_closed_form(t, n)
        assert len(result.observations) == 1

    @pytest.mark.slow
    def test_fpt_maximal_second_exponent(self, context):
        result = fpt_maximal_ideal(context(2, 3, 2), e_max=2)
        assert result.verdict, result.failures
        assert [o.nu for o in result.observations] == [0, 2]

    @pytest.mark.parametrize("t, n, p", [(2, 2, 2), (2, 3, 2), (2, 2, 3)])
    def test_fpt_determinantal(self, context, t, n, p):
        result = fpt_determinantal(context(t, n, p), e_max=2)
        assert result.verdict, result.failures
        ratios = [o.ratio for o in result.observations]
        assert ratios == sorted(ratios)

    def test_checks(self, context):
        report = fpt_maximal_check(context(2, 3, 2), e_max=1)
        assert_passed(report)
        assert report.computed["within_bounds"]
        assert report.parameters["e_max"] == 1
        assert report.expected["closed_form"] == Fraction(2, 3)

        report = fpt_determinantal_check(context(2, 2, 3), e_max=1)
        assert_passed(report)

        # Characteristic zero. Not applicable expected.
        assert fpt_maximal_check(HankelContext(2, 3)).status == Status.NOT_APPLICABLE
        assert fpt_determinantal_check(HankelContext(2, 3)).status == Status.NOT_APPLICABLE

    def test_result_report(self):
        failed = FptResult(Fraction(1), verdict=False, failures=["nu_1 = 0, closed form 1"])
        report = failed.report("fpt-maximal", {"t": 2}, "anchor")
        assert report.status == Status.FAIL
        assert report.notes == ["nu_1 = 0, closed form 1"]


class TestHeightChain:
    def test_cubic(self):
        report = height_chain_check(HankelContext(2, 3))
        assert_passed(report)
        assert report.computed["heights"] == [4, 2]
        assert report.computed["witness_ordinary_powers"] == [4, 2]
        assert report.notes == [SYMBOLIC_GAP_NOTE]

    def test_square(self):
        report = height_chain_check(HankelContext(3, 3))
        assert_passed(report)
        assert report.computed["heights"] == [5, 3, 1]

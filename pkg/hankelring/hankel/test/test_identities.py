import pytest

from hankelring.algebra.coefficients import PrimeField
from hankelring.hankel import identities
from hankelring.hankel.identities import (
    admissible_val2_indices,
    canonicalization_check,
    cm_initial_ideal_check,
    generic_specialization_check,
    invariants_check,
    length_lemma_brute_force,
    length_lemma_check,
    lemma_symbolic_check,
    minor_identity_check,
    minor_product_identity_check,
    minor_product_membership,
    val2_identity_check,
    watanabe_check,
)
from hankelring.hankel.model import GeneralHankelContext, HankelContext
from hankelring.hankel.secant import (
    not_pure_ingredient_check,
    parametrization_check,
    socle_independence_check,
)
from hankelring.exceptions import PreconditionError
from hankelring.verifier.reports import Status


@pytest.fixture(scope="module")
def cubic():
    return HankelContext(2, 3)


def assert_passed(report):
    assert report.status == Status.PASS, report.notes


class TestInvariants:
    def test_cubic(self, cubic):
        # the cone over the twisted cubic: two-dimensional, degree 3, socle in degree 1
        report = invariants_check(cubic)
        assert_passed(report)
        assert report.computed["dimension"] == 2
        assert report.computed["height"] == 2
        assert report.computed["multiplicity"] == 3
        assert report.computed["a_invariant"] == -1
        assert report.computed["socle_dimension"] == 2
        assert not report.computed["gorenstein"]

    def test_gorenstein(self):
        report = invariants_check(HankelContext(2, 2))
        assert_passed(report)
        assert report.computed["gorenstein"]
        assert report.computed["socle_dimension"] == 1

    def test_one_row(self):
        report = invariants_check(HankelContext(1, 3))
        assert_passed(report)
        assert report.computed["height"] == 3

    @pytest.mark.slow
    def test_larger(self):
        assert_passed(invariants_check(HankelContext(3, 4)))


class TestIdentities:
    @pytest.mark.parametrize("r, s, u", [(2, 3, 2), (3, 3, 2), (2, 2, 1)])
    def test_canonicalization(self, r, s, u):
        report = canonicalization_check(r, s, u)
        assert_passed(report)
        assert report.computed["n"] == r + s - u

    def test_minor_identity(self):
        report = minor_identity_check(3, 3, 2, seed=7, samples=10)
        assert_passed(report)
        assert report.seed == 7
        assert report.computed["numeric_agreements"] == 10

        # t above the matrix size. Not applicable expected.
        assert minor_identity_check(2, 2, 3).status == Status.NOT_APPLICABLE

    def test_numeric_exchange(self):
        # rank one: 1*6 - 2*3
        assert identities._numeric_exchange([[1, 2], [3, 6]], (1,), (1,), (2,), (2,)) == 0
        # the identity matrix has full rank: 1*1 - 0*0
        assert identities._numeric_exchange([[1, 0], [0, 1]], (1,), (1,), (2,), (2,)) == 1
        # reduced mod 101
        assert identities._numeric_exchange([[1, 0], [0, 102]], (1,), (1,), (2,), (2,)) == 1

    def test_minor_product_identity(self):
        assert_passed(minor_product_identity_check(2, 3, 2))
        assert minor_product_identity_check(2, 2, 1).status == Status.NOT_APPLICABLE

    def test_val2_identity(self, cubic):
        assert admissible_val2_indices(cubic) == [(1,), (2,), (3,)]
        for indices in admissible_val2_indices(cubic):
            assert_passed(val2_identity_check(cubic, indices))

        # Decreasing column indices. Not applicable expected.
        report = val2_identity_check(HankelContext(3, 3), (2, 1))
        assert report.status == Status.NOT_APPLICABLE

    def test_generic_specialization(self):
        report = generic_specialization_check(2, 3)
        assert_passed(report)
        assert report.computed["generic_dimension"] == 4

    def test_watanabe(self, cubic):
        report = watanabe_check(cubic)
        assert_passed(report)
        assert report.computed["delta_reductions"] == 2
        assert watanabe_check(HankelContext(1, 2)).status == Status.NOT_APPLICABLE

    def test_cm_initial_ideal(self, cubic):
        for k in (1, 2, 3):
            report = cm_initial_ideal_check(cubic, k)
            assert_passed(report)
            assert report.computed["length"] == k
        assert cm_initial_ideal_check(cubic, 4).status == Status.NOT_APPLICABLE


class TestLengthLemma:
    @pytest.mark.parametrize("t, r, s, length", [(2, 1, 2, 2), (3, 2, 3, 8), (3, 1, 1, 2)])
    def test_brute_force(self, t, r, s, length):
        assert length_lemma_brute_force(t, r, s) == length

    @pytest.mark.parametrize("t, r, s", [(2, 1, 2), (3, 2, 3), (3, 3, 4)])
    def test_check(self, t, r, s):
        assert_passed(length_lemma_check(t, r, s))

    def test_not_applicable(self):
        assert length_lemma_check(1, 1, 2).status == Status.NOT_APPLICABLE
        assert length_lemma_check(3, 4, 3).status == Status.NOT_APPLICABLE


class TestMinorProducts:
    def test_membership(self):
        gctx = GeneralHankelContext(2, 3, 2)
        # [12|12]^2 lies in I_2^2
        assert minor_product_membership(gctx, [((1, 2), (1, 2)), ((1, 2), (1, 2))], 2)
        # More minors than d. Failure expected.
        with pytest.raises(PreconditionError):
            minor_product_membership(gctx, [((1,), (1,))] * 4, 2)

        # Degrees adding up to less than u * d. Failure expected.
        with pytest.raises(PreconditionError):
            minor_product_membership(gctx, [((1, 2), (1, 2))], 2)

    def test_lemma_symbolic(self):
        report = lemma_symbolic_check(GeneralHankelContext(3, 3, 2), samples=5, seed=3)
        assert_passed(report)
        assert report.computed["samples"] == 5


class TestSecantChecks:
    def test_parametrization(self):
        report = parametrization_check(2, 3, seed=1, samples=3)
        assert_passed(report)
        assert report.computed["kernel_basis_size"] == 3
        assert parametrization_check(1, 3).status == Status.NOT_APPLICABLE

    @pytest.mark.slow
    def test_parametrization_three_rows(self):
        assert_passed(parametrization_check(3, 3, samples=2))

    def test_not_pure_ingredient(self):
        assert_passed(not_pure_ingredient_check(3, 3))
        assert not_pure_ingredient_check(2, 3).status == Status.NOT_APPLICABLE

    @pytest.mark.parametrize("t, n, p", [(2, 3, None), (3, 4, 3), (3, 4, 5), (3, 3, None)])
    def test_socle_independence(self, t, n, p):
        assert_passed(socle_independence_check(t, n, p))

    def test_socle_independence_small_prime(self):
        # p < t. Not applicable expected.
        report = socle_independence_check(3, 4, 2)
        assert report.status == Status.NOT_APPLICABLE
        assert "p >= t" in report.notes[0]


class TestFieldChoice:
    def test_invariants_in_positive_characteristic(self):
        report = invariants_check(HankelContext(2, 3, PrimeField(2)))
        assert_passed(report)
        assert report.parameters["field"] == "GF(2)"

import random
from fractions import Fraction
from math import comb

import pytest

from specden.errors import (
    InvalidSpecError,
    RangeTooSmallError,
    DivergentMomentError,
    UnsupportedFamilyError,
)
from specden.exactq import RatFun
from specden.diffop import Scaled, EnsembleSpec
from specden.moments import (
    RECURRENCES,
    CoeffTable,
    MomentTable,
    coeff_table,
    random_spec,
    moments_exact,
    zero_sum_report,
    moments_negative,
    laguerre_reciprocity,
    verify_printed_recursion,
    verify_recurrence_fixture,
    check_recurrence_fixture,
    jacobi_difference_reciprocity,
)


def catalan(k):
    return comb(2 * k, k) // (k + 1)


def test_gue_moments():
    table = moments_exact(EnsembleSpec("gaussian", 2, n=3), 6)
    assert table.as_list()[:5] == [3, 0, Fraction(9, 2), 0, Fraction(57, 4)]
    assert table[5] == 0


@pytest.mark.parametrize(
    ("beta", "expected"),
    [(1, Fraction(3, 2)), (2, Fraction(2)), (4, Fraction(3))],
)
def test_gaussian_second_moment(beta, expected):
    assert moments_exact(EnsembleSpec("gaussian", beta, n=2), 2)[2] == expected


@pytest.mark.parametrize("beta", [Fraction(1), Fraction(2), Fraction(4)])
def test_laguerre_first_moment(beta):
    spec = EnsembleSpec("laguerre", beta, n=2, a=Fraction(3, 2))
    kappa = beta / 2
    assert moments_exact(spec, 1)[1] == 2 * Fraction(5, 2) + kappa * 2


@pytest.mark.parametrize("beta", [Fraction(1), Fraction(2), Fraction(4)])
def test_single_jacobi_variable(beta):
    spec = EnsembleSpec("jacobi", beta, n=1, a=Fraction(1, 2), b=Fraction(3, 2))
    table = moments_exact(spec, 2)
    assert table[0] == 1
    assert table[1] == Fraction(3, 8)


def test_integer_jacobi_parameters():
    table = moments_exact(EnsembleSpec("jacobi", 2, n=3, a=1, b=2), 8)
    assert table[0] == 3
    assert len(table) == 9


def test_symbolic_moments_evaluate():
    n = RatFun.n()
    symbolic = moments_exact(EnsembleSpec("gaussian", 2), 4)
    assert symbolic[2] == n * n / 2
    assert symbolic.at_n(3) == moments_exact(EnsembleSpec("gaussian", 2, n=3), 4)


def test_negative_kmax():
    with pytest.raises(InvalidSpecError):
        moments_exact(EnsembleSpec("gaussian", 2, n=2), -1)


def test_negative_moments_single_laguerre():
    spec = EnsembleSpec("laguerre", 2, n=1, a=Fraction(3, 2))
    assert moments_negative(spec, -1)[-1] == Fraction(2, 3)


def test_negative_moment_gates():
    with pytest.raises(UnsupportedFamilyError):
        moments_negative(EnsembleSpec("gaussian", 2, n=2), -1)
    with pytest.raises(DivergentMomentError):
        moments_negative(EnsembleSpec("laguerre", 2, n=2, a=Fraction(1, 2)), -2)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_laguerre_reciprocity(k):
    spec = EnsembleSpec("laguerre", 2, n=2, a=Fraction(9, 2))
    table = moments_negative(spec, -k - 1)
    assert laguerre_reciprocity(spec, k) == table[-k - 1]


@pytest.mark.parametrize("k", [0, 1])
def test_jacobi_difference_reciprocity(k):
    spec = EnsembleSpec("jacobi", 2, n=2, a=Fraction(7, 2), b=Fraction(1, 2))
    table = moments_negative(spec, -k - 1)
    assert jacobi_difference_reciprocity(spec, k) == table[-k - 1] - table[-k]


@pytest.mark.parametrize("k", [0, 1, 2])
def test_reciprocity_at_larger_parameters(k):
    laguerre = EnsembleSpec("laguerre", 2, n=2, a=5)
    assert laguerre_reciprocity(laguerre, k) == moments_negative(laguerre, -k - 1)[-k - 1]
    jacobi = EnsembleSpec("jacobi", 2, n=2, a=5, b=3)
    table = moments_negative(jacobi, -k - 1)
    assert jacobi_difference_reciprocity(jacobi, k) == table[-k - 1] - table[-k]


def test_reciprocity_family_check():
    with pytest.raises(UnsupportedFamilyError):
        laguerre_reciprocity(EnsembleSpec("laguerre", 1, n=2, a=3), 0)
    with pytest.raises(UnsupportedFamilyError):
        jacobi_difference_reciprocity(EnsembleSpec("laguerre", 2, n=2, a=3), 0)


def test_gue_coefficients_are_catalan():
    table = coeff_table(EnsembleSpec("gaussian", 2), 5, 2)
    for k in range(6):
        assert table.get(k, 0) == Fraction(catalan(k), 2**k)
    assert table.get(2, 2) == Fraction(1, 4)
    assert table.get(2, 1) == 0


def test_lue_coefficients_are_catalan():
    table = coeff_table(EnsembleSpec("laguerre", 2), 5, 2)
    for k in range(6):
        assert table.get(k, 0) == catalan(k)


def test_coefficients_need_symbolic_n():
    with pytest.raises(InvalidSpecError):
        coeff_table(EnsembleSpec("gaussian", 2, n=3), 3, 1)


@pytest.mark.parametrize("fixture_id", sorted(RECURRENCES))
def test_derived_recurrences_match_fixtures(fixture_id):
    report = verify_recurrence_fixture(fixture_id, trials=1, seed=11, k_min=0, k_max=12)
    assert report.ok, report.violations
    assert report.checked > 0


@pytest.mark.slow
@pytest.mark.parametrize("fixture_id", sorted(RECURRENCES))
def test_recurrences_over_full_range(fixture_id):
    report = verify_recurrence_fixture(fixture_id, trials=3, k_min=-3, k_max=25)
    assert report.ok, report.violations
    assert report.checked > 0


def test_fixture_rejects_other_family():
    with pytest.raises(InvalidSpecError):
        check_recurrence_fixture("laguerre-beta2", EnsembleSpec("jacobi", 2, n=2))
    with pytest.raises(InvalidSpecError):
        verify_recurrence_fixture("hermite-beta2")


def test_random_spec_ranges():
    rng = random.Random(5)
    for _ in range(20):
        spec = random_spec(rng, "jacobi", Fraction(4))
        assert 1 <= spec.n <= 6
        assert Fraction(1, 6) <= spec.a <= Fraction(37, 6)


def test_moment_table_passes_recurrence_fixture():
    spec = EnsembleSpec("laguerre", 2, n=3, a=Fraction(1, 3))
    report = verify_printed_recursion("laguerre-beta2", moments_exact(spec, 10))
    assert report.ok, report.violations


def test_short_table_is_rejected():
    spec = EnsembleSpec("laguerre", 2, n=3, a=Fraction(1, 3))
    with pytest.raises(RangeTooSmallError):
        verify_printed_recursion("laguerre-beta2", moments_exact(spec, 1))


@pytest.mark.parametrize(
    ("fixture_id", "spec", "k_max", "l_max"),
    [
        ("laguerre-beta2", EnsembleSpec("laguerre", 2, a=Scaled(Fraction(1, 2), 1)), 6, 4),
        ("jacobi-legendre", EnsembleSpec("jacobi", 2), 6, 4),
    ],
)
def test_coefficient_recursions(fixture_id, spec, k_max, l_max):
    report = verify_printed_recursion(fixture_id, coeff_table(spec, k_max, l_max))
    assert report.ok, report.violations


@pytest.mark.slow
@pytest.mark.parametrize(
    ("fixture_id", "spec"),
    [
        ("gaussian-beta6", EnsembleSpec("gaussian", 6)),
        ("laguerre-beta14", EnsembleSpec("laguerre", 4, a=Scaled(1, 0))),
        ("jacobi-beta2", EnsembleSpec("jacobi", 2, a=Scaled(1, 0), b=Scaled(Fraction(1, 2), 0))),
    ],
)
def test_slow_coefficient_recursions(fixture_id, spec):
    report = verify_printed_recursion(fixture_id, coeff_table(spec, 8, 4))
    assert report.ok, report.violations


def test_legendre_fixture_requires_zero_parameters():
    table = coeff_table(EnsembleSpec("jacobi", 2, a=1, b=0), 4, 2)
    with pytest.raises(InvalidSpecError):
        verify_printed_recursion("jacobi-legendre", table)


@pytest.mark.parametrize("beta", [2, 4])
def test_jacobi_zero_sum(beta):
    spec = EnsembleSpec("jacobi", beta, n=3, a=Fraction(1, 2), b=Fraction(5, 3))
    report = zero_sum_report(spec, k_min=0, k_max=10)
    assert report.ok, report.violations


def test_table_serialization():
    table = moments_exact(EnsembleSpec("gaussian", 2, n=3), 4)
    assert MomentTable.from_json(table.to_json()) == table
    assert table.to_csv().splitlines()[:3] == ["k,value", "0,3", "1,0"]
    coeffs = coeff_table(EnsembleSpec("gaussian", 2), 2, 2)
    assert CoeffTable.from_json(coeffs.to_json()) == coeffs
    assert coeffs.to_csv().splitlines()[1] == "0,0,1"
    with pytest.raises(InvalidSpecError):
        CoeffTable.from_json(table.to_json())

from fractions import Fraction

import pytest

from specden.errors import InvalidSpecError, UnsupportedBetaError, TruncationTooShortError
from specden.diffop import Scaled, EnsembleSpec
from specden.moments import coeff_table
from specden.resolvent import (
    ExpansionStack,
    scaled_spec,
    check_planar,
    resolvent_series,
    check_resolvent_ode,
    check_printed_levels,
    w0_universality_check,
    expansion_coefficients,
)


def test_gue_resolvent_series():
    series = resolvent_series(EnsembleSpec("gaussian", 2, n=3), 6)
    assert series.coefficient(-1) == 3
    assert series.coefficient(-2) == 0
    assert series.coefficient(-3) == Fraction(9, 2)
    assert series.coefficient(-5) == Fraction(57, 4)
    with pytest.raises(TruncationTooShortError):
        series.coefficient(-7)


@pytest.mark.parametrize(
    "spec",
    [
        EnsembleSpec("gaussian", 2, n=3),
        EnsembleSpec("gaussian", 1, n=2),
        EnsembleSpec("gaussian", 6, n=2),
        EnsembleSpec("laguerre", 2, n=3, a=Fraction(1, 2)),
        EnsembleSpec("laguerre", 1, n=2, a=Fraction(5, 2)),
        EnsembleSpec("jacobi", 2, n=2, a=Fraction(1, 2), b=Fraction(3, 2)),
        EnsembleSpec("jacobi", 4, n=2, a=Fraction(5, 2), b=Fraction(7, 2)),
    ],
)
def test_resolvent_equation_holds(spec):
    report = check_resolvent_ode(spec, 16)
    assert report.ok, report.to_dict()


def test_symbolic_resolvent_equation():
    assert check_resolvent_ode(EnsembleSpec("gaussian", 2), 10).ok


def test_scaled_spec():
    spec = scaled_spec("laguerre", 2, alpha1=Fraction(1, 2))
    assert spec.symbolic
    assert spec.a.alpha == Fraction(1, 2)
    assert scaled_spec("gaussian", 4).gaussian_g == Fraction(1, 2)
    with pytest.raises(InvalidSpecError):
        scaled_spec("laguerre", 2, alpha1=-1)
    with pytest.raises(UnsupportedBetaError):
        scaled_spec("jacobi", 6)


def test_gaussian_planar_level():
    stack = expansion_coefficients("gaussian", 2, l_max=2, order=8)
    level = stack.level(0)
    assert [level.coefficient(-e) for e in (1, 3, 5, 7)] == [
        Fraction(1, 2),
        Fraction(1, 4),
        Fraction(1, 4),
        Fraction(5, 16),
    ]
    assert level.coefficient(-2) == 0
    assert stack.odd_levels_vanish()
    assert not stack.consistency


def test_laguerre_planar_level_is_catalan():
    level = expansion_coefficients("laguerre", 2, l_max=0, order=6).level(0)
    assert [level.coefficient(-k - 1) for k in range(6)] == [1, 1, 2, 5, 14, 42]


def test_gaussian_levels_match_coefficient_table():
    stack = expansion_coefficients("gaussian", 2, l_max=2, order=8)
    table = coeff_table(EnsembleSpec("gaussian", 2), 4, 2)
    assert ExpansionStack.from_coeff_table(table, 2, 8) == stack


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1)])
def test_laguerre_levels_match_coefficient_table(alpha):
    stack = expansion_coefficients("laguerre", 2, alpha1=alpha, l_max=2, order=6)
    table = coeff_table(EnsembleSpec("laguerre", 2, a=Scaled(alpha)), 5, 2)
    assert ExpansionStack.from_coeff_table(table, 2, 6) == stack


def test_goe_has_odd_levels():
    stack = expansion_coefficients("gaussian", 1, l_max=1, order=6)
    assert not stack.odd_levels_vanish()


@pytest.mark.parametrize(
    ("family", "alpha1", "alpha2"),
    [("gaussian", 0, 0), ("laguerre", 0, 0), ("laguerre", 1, 0), ("jacobi", 0, 0)],
)
def test_planar_equation_agrees(family, alpha1, alpha2):
    assert check_planar(family, 2, alpha1, alpha2)


@pytest.mark.parametrize("family", ["gaussian", "laguerre"])
def test_planar_level_is_beta_independent(family):
    report = w0_universality_check(family, [1, 2, 4], order=8)
    assert report.ok, report.violations
    assert report.checked == 16


@pytest.mark.parametrize(
    ("family", "betas"),
    [
        ("gaussian", [2, 1, 4, Fraction(2, 3), 6]),
        ("laguerre", [2, 1, 4]),
    ],
)
def test_planar_level_is_beta_independent_to_order_20(family, betas):
    report = w0_universality_check(family, betas, order=20, alpha1=Fraction(1, 2))
    assert report.ok, report.violations
    assert report.checked == 20 * (len(betas) - 1)


@pytest.mark.parametrize(("alpha1", "alpha2"), [(0, 0), (1, Fraction(1, 2))])
def test_jacobi_levels_match_coefficient_table(alpha1, alpha2):
    stack = expansion_coefficients("jacobi", 2, alpha1=alpha1, alpha2=alpha2, l_max=2, order=6)
    table = coeff_table(EnsembleSpec("jacobi", 2, a=Scaled(alpha1), b=Scaled(alpha2)), 5, 2)
    assert ExpansionStack.from_coeff_table(table, 2, 6) == stack


def test_printed_goe_level_one_has_sign_error():
    report = check_printed_levels("gaussian-beta14", 1, l_max=2)
    assert report.status(0) == "agree"
    check = report.levels[1]
    assert check.status == "disagree"
    assert (check.exponent, check.value) == (0, -5)
    assert report.to_dict()["levels"][1]["value"] == "-5"


def test_printed_gse_level_one():
    check = check_printed_levels("gaussian-beta14", 4, l_max=1).levels[1]
    assert (check.status, check.exponent, check.value) == ("disagree", 0, Fraction(5, 2))


def test_printed_lue_levels_agree():
    report = check_printed_levels("laguerre-beta2", 2, l_max=4)
    assert [check.status for check in report.levels] == [
        "agree",
        "not printed",
        "agree",
        "agree",
        "agree",
    ]
    assert not report.disagreements


def test_printed_loe_planar_level():
    report = check_printed_levels("laguerre-beta14", 1, alpha1=Fraction(1, 2), l_max=2)
    assert report.status(0) == "agree"
    assert {check.status for check in report.levels} <= {"agree", "disagree"}


def test_printed_jue_planar_level():
    check = check_printed_levels("jacobi-beta2", 2, l_max=0).levels[0]
    assert (check.status, check.exponent, check.value) == ("disagree", 1, -4)


def test_printed_levels_coverage():
    with pytest.raises(InvalidSpecError):
        check_printed_levels("gaussian-beta2", 2)
    with pytest.raises(InvalidSpecError):
        check_printed_levels("gaussian-beta14", 2)


def test_stack_json_round_trip():
    stack = expansion_coefficients("laguerre", 2, alpha1=Fraction(1, 2), l_max=1, order=5)
    assert ExpansionStack.from_json(stack.to_json()) == stack
    with pytest.raises(InvalidSpecError):
        ExpansionStack.from_json('{"kind": "moments"}')


def test_order_must_be_positive():
    with pytest.raises(TruncationTooShortError):
        expansion_coefficients("gaussian", 2, order=0)

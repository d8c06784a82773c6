import random
from fractions import Fraction

import pytest

from specden.errors import ZeroDenominatorError, TruncationTooShortError, InsufficientMomentsError
from specden.exactq import (
    PolyQ,
    RatFun,
    InvXSeries,
    poly_gcd,
    as_scalar,
    series_from_moments,
    series_apply_diffop,
)
from specden.diffop import DiffOp

X = PolyQ.x()


def random_poly(rng, degree):
    return PolyQ(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree + 1))


def test_trailing_zeros_are_trimmed():
    assert PolyQ((1, 2, 0, 0)).degree == 1
    assert PolyQ((0, 0)).is_zero()
    assert PolyQ().degree == -1


def test_float_input_is_rejected():
    with pytest.raises(TypeError):
        as_scalar(0.5)
    assert as_scalar("-3/4") == Fraction(-3, 4)


def test_product_and_division():
    p = PolyQ((1, 2))
    assert p * p == PolyQ((1, 4, 4))
    quot, rem = divmod(X * X - 1, X - 1)
    assert quot == X + 1
    assert rem.is_zero()
    with pytest.raises(ZeroDenominatorError):
        divmod(X, PolyQ())


def test_gcd_is_monic():
    a = (X - 1) * (X + 2) * 3
    b = (X - 1) * (X - 5)
    assert poly_gcd(a, b) == X - 1


def test_ring_laws_hold_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(20):
        p, q, r = (random_poly(rng, rng.randint(0, 4)) for _ in range(3))
        assert p * (q + r) == p * q + p * r
        assert (p * q) * r == p * (q * r)
        if not q.is_zero():
            quot, rem = divmod(p, q)
            assert quot * q + rem == p
            assert rem.degree < q.degree or rem.is_zero()


def test_evaluation_and_composition():
    p = X * X - 2
    assert p(Fraction(3, 2)) == Fraction(1, 4)
    assert p(2.0) == pytest.approx(2.0)
    assert p(X + 1) == X * X + X * 2 - 1


def test_render():
    assert (X * X * Fraction(1, 2) - 3).render() == "1/2*x^2 - 3"
    assert PolyQ().render() == "0"
    assert (X * -1 + 2).render("k") == "-k + 2"


def test_ratfun_is_reduced():
    f = RatFun(X * X - 1, X - 1)
    assert f.is_polynomial()
    assert f == RatFun(X + 1)
    g = RatFun(X * 2, X * 4 + 2)
    assert g.den == X + Fraction(1, 2)
    assert g.num == X * Fraction(1, 2)


def test_ratfun_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        RatFun(X, PolyQ())
    with pytest.raises(ZeroDenominatorError):
        RatFun(X + 1, X - 1).evaluate(1)


def test_ratfun_arithmetic():
    n = RatFun.n()
    f = (n + 1) / (n - 1)
    assert f.evaluate(3) == 2
    assert f - 1 == 2 / (n - 1)
    assert (f * (n - 1)).is_polynomial()


def test_laurent_expansion():
    n = RatFun.n()
    top, coeffs = ((n + 1) / n).laurent(3)
    assert top == 0
    assert coeffs == [1, 1, 0]
    top, coeffs = (n * n / (n - 1)).laurent(4)
    assert top == 1
    assert coeffs == [1, 1, 1, 1]


def test_series_from_moments():
    series = series_from_moments([Fraction(1), Fraction(0), Fraction(1, 2)], 3)
    assert series.coefficient(-1) == 1
    assert series.coefficient(-2) == 0
    assert series.coefficient(-3) == Fraction(1, 2)
    assert series.moments() == [1, 0, Fraction(1, 2)]
    with pytest.raises(TruncationTooShortError):
        series.coefficient(-4)
    with pytest.raises(InsufficientMomentsError):
        series_from_moments([Fraction(1)], 2)


def test_series_strings_round_trip():
    series = InvXSeries({-1: Fraction(1, 2), -3: Fraction(-1, 4)}, 5)
    assert InvXSeries.from_strings(series.to_strings()) == series


def test_apply_operator_to_series():
    # x * d/dx maps x^e to e x^e
    op = DiffOp([PolyQ(), X])
    series = InvXSeries({-1: 1, -2: 3}, 4)
    image = series_apply_diffop(op, series)
    assert image.coefficient(-1) == -1
    assert image.coefficient(-2) == -6


def test_series_operator_is_linear():
    rng = random.Random(3)
    op = DiffOp([X, X * X - 2, PolyQ(), PolyQ((Fraction(1, 4),))])
    a = InvXSeries({-k: Fraction(rng.randint(-5, 5), 3) for k in range(1, 12)}, 11)
    b = InvXSeries({-k: Fraction(rng.randint(-5, 5), 7) for k in range(1, 12)}, 11)
    assert series_apply_diffop(op, a + b) == series_apply_diffop(op, a) + series_apply_diffop(op, b)

from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from specden.config import config
from specden.errors import (
    SizeLimitError,
    InvalidSpecError,
    UnsupportedNError,
    UnsupportedBetaError,
    UnsupportedFamilyError,
)
from specden.exactq import PolyQ
from specden.diffop import EnsembleSpec, catalog_density_op, op_apply_to_weighted_poly
from specden.moments import moments_exact
from specden.oracle import (
    cd_density,
    gue_density,
    mc_moments,
    ode_residual,
    weight_moments,
    sampled_evaluator,
    moments_bruteforce,
    moments_quadrature,
    tridiagonal_eigenvalues,
)


def test_gaussian_weight_moments():
    spec = EnsembleSpec("gaussian", 2, n=1)
    assert weight_moments(spec.weight(), 5) == [1, 0, Fraction(1, 2), 0, Fraction(3, 4)]


@pytest.mark.parametrize(
    "spec",
    [
        EnsembleSpec("gaussian", 2, n=3),
        EnsembleSpec("gaussian", 4, n=2),
        EnsembleSpec("gaussian", 6, n=2),
        EnsembleSpec("laguerre", 2, n=2, a=Fraction(1, 2)),
        EnsembleSpec("jacobi", 2, n=3, a=Fraction(1, 2), b=1),
        EnsembleSpec("jacobi", 4, n=2, a=Fraction(3, 2), b=Fraction(1, 2)),
    ],
)
def test_bruteforce_matches_exact(spec):
    assert moments_bruteforce(spec, 6).as_list() == moments_exact(spec, 6).as_list()


def test_bruteforce_limits(monkeypatch):
    with pytest.raises(UnsupportedBetaError):
        moments_bruteforce(EnsembleSpec("gaussian", 1, n=2), 2)
    with pytest.raises(UnsupportedNError):
        moments_bruteforce(EnsembleSpec("gaussian", 2, n=4), 2)
    monkeypatch.setitem(config["bruteforce"], "max_monomials", 1)
    with pytest.raises(SizeLimitError):
        moments_bruteforce(EnsembleSpec("gaussian", 2, n=3), 2)


def test_quadrature_matches_exact():
    spec = EnsembleSpec("gaussian", 1, n=2)
    values = moments_quadrature(spec, 4)
    exact = moments_exact(spec, 4)
    assert values[2] == pytest.approx(1.5, rel=1e-8)
    for k in range(5):
        assert values[k] == pytest.approx(float(exact[k]), rel=1e-8, abs=1e-10)


def test_quadrature_limits():
    with pytest.raises(UnsupportedBetaError):
        moments_quadrature(EnsembleSpec("gaussian", 2, n=2), 2)
    with pytest.raises(UnsupportedNError):
        moments_quadrature(EnsembleSpec("gaussian", 1, n=3), 2)


def test_cd_polynomial():
    density = cd_density(EnsembleSpec("gaussian", 2, n=2))
    assert density.poly == PolyQ((1, 0, 2))


def test_cd_matches_hermite_functions():
    x = np.linspace(-4, 4, 41)
    density = cd_density(EnsembleSpec("gaussian", 2, n=5))
    np.testing.assert_allclose(density(x), gue_density(5, x), rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize(
    ("spec", "lo", "hi"),
    [
        (EnsembleSpec("gaussian", 2, n=4), -10.0, 10.0),
        (EnsembleSpec("laguerre", 2, n=3, a=2), 0.0, 80.0),
        (EnsembleSpec("jacobi", 2, n=3, a=1, b=2), 0.0, 1.0),
    ],
)
def test_cd_density_integrates_to_n(spec, lo, hi):
    density = cd_density(spec)
    total, _ = integrate.quad(lambda t: float(density(np.array([t]))[0]), lo, hi, limit=200)
    assert total == pytest.approx(spec.n, rel=1e-8)


@pytest.mark.parametrize(
    "spec",
    [
        EnsembleSpec("gaussian", 2, n=6),
        EnsembleSpec("laguerre", 2, n=4, a=Fraction(1, 2)),
        EnsembleSpec("jacobi", 2, n=4, a=Fraction(1, 2), b=Fraction(3, 2)),
    ],
)
def test_catalog_annihilates_cd_density(spec):
    density = cd_density(spec)
    image = op_apply_to_weighted_poly(catalog_density_op(spec), density.poly, density.weight)
    assert image.poly.is_zero()


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 7))
def test_catalog_annihilates_cd_density_grid(n):
    grid = [0, Fraction(1, 2), 1, 3]
    specs = [EnsembleSpec("laguerre", 2, n=n, a=a) for a in grid]
    specs += [EnsembleSpec("jacobi", 2, n=n, a=a, b=b) for a in grid for b in grid]
    for spec in specs:
        density = cd_density(spec)
        image = op_apply_to_weighted_poly(catalog_density_op(spec), density.poly, density.weight)
        assert image.poly.is_zero(), spec


def test_cd_limits():
    with pytest.raises(UnsupportedBetaError):
        cd_density(EnsembleSpec("gaussian", 1, n=2))
    with pytest.raises(UnsupportedNError):
        cd_density(EnsembleSpec("gaussian", 2, n=13))


def test_numeric_residual_of_exact_density():
    spec = EnsembleSpec("gaussian", 2, n=4)
    stats = ode_residual(catalog_density_op(spec), cd_density(spec).derivatives, np.linspace(-3, 3, 61))
    assert stats.max < 1e-10
    assert stats.scale > 0


def test_numeric_residual_detects_wrong_density():
    spec = EnsembleSpec("gaussian", 2, n=4)
    wrong = cd_density(EnsembleSpec("gaussian", 2, n=3))
    stats = ode_residual(catalog_density_op(spec), wrong.derivatives, np.linspace(-3, 3, 61))
    assert stats.max > 1e-3


def test_sampled_evaluator():
    grid = np.linspace(0, 2, 201)
    evaluate = sampled_evaluator(grid, grid**3, 1)
    values = evaluate(np.array([0.5, 1.5]), 1)
    np.testing.assert_allclose(values[0], [0.125, 3.375], rtol=1e-8)
    np.testing.assert_allclose(values[1], [0.75, 6.75], rtol=1e-6)


def test_tridiagonal_eigenvalues():
    np.testing.assert_allclose(tridiagonal_eigenvalues([0, 0], [1]), [-1, 1], atol=1e-12)


@pytest.mark.parametrize(
    "spec",
    [
        EnsembleSpec("gaussian", 1, n=3),
        EnsembleSpec("gaussian", 2, n=2),
        EnsembleSpec("laguerre", 2, n=2, a=Fraction(1, 2)),
        EnsembleSpec("laguerre", 4, n=2, a=1),
    ],
)
def test_monte_carlo_agrees_with_exact(spec):
    estimate = mc_moments(spec, samples=20000, seed=3, k_max=4)
    exact = moments_exact(spec, 4)
    assert estimate.mean[0] == pytest.approx(spec.n)
    for k in range(1, 5):
        assert estimate.within(exact[k], k, sigmas=5.0), (k, estimate.mean[k], float(exact[k]))


@pytest.mark.slow
@pytest.mark.parametrize(
    "spec", [EnsembleSpec("gaussian", 2, n=8), EnsembleSpec("laguerre", 2, n=8, a=1)]
)
def test_monte_carlo_at_larger_n(spec):
    estimate = mc_moments(spec, samples=100000, seed=17, k_max=4)
    exact = moments_exact(spec, 4)
    for k in range(1, 5):
        assert estimate.within(exact[k], k), (k, estimate.mean[k], float(exact[k]))


def test_monte_carlo_diagonalizes_each_tridiagonal_matrix(monkeypatch):
    calls = []

    def counting(diag, off):
        calls.append(len(diag))
        return tridiagonal_eigenvalues(diag, off)

    monkeypatch.setattr("specden.oracle.montecarlo.tridiagonal_eigenvalues", counting)
    estimate = mc_moments(EnsembleSpec("laguerre", 1, n=3, a=1), samples=50, seed=2, k_max=2)
    assert calls == [3] * 50
    assert estimate.mean[0] == pytest.approx(3)


def test_monte_carlo_is_reproducible():
    spec = EnsembleSpec("gaussian", 2, n=3)
    first = mc_moments(spec, samples=2000, seed=9, k_max=2, workers=2)
    second = mc_moments(spec, samples=2000, seed=9, k_max=2, workers=2)
    assert first.to_dict() == second.to_dict()
    assert first.to_dict()["samples"] == 2000


def test_monte_carlo_limits():
    with pytest.raises(UnsupportedFamilyError):
        mc_moments(EnsembleSpec("jacobi", 2, n=2), samples=10)
    with pytest.raises(InvalidSpecError):
        mc_moments(EnsembleSpec("gaussian", 2, n=2), samples=1)
    with pytest.raises(SizeLimitError):
        mc_moments(EnsembleSpec("gaussian", 2, n=2), samples=config["mc"]["max_samples"] + 1)
    with pytest.raises(UnsupportedNError):
        mc_moments(EnsembleSpec("gaussian", 2), samples=10)

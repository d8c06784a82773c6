import json
import math
from fractions import Fraction

import numpy as np
import pytest

from specden.errors import (
    NoHardEdgeError,
    InvalidSpecError,
    DomainExceededError,
    ToleranceNotMetError,
    UnsupportedBetaError,
    UnsupportedFamilyError,
)
from specden.config import config
from specden.diffop import Scaled, EnsembleSpec
from specden.edge import (
    airy,
    besselj,
    soft_tail,
    decay_rates,
    airy_density,
    soft_edge_op,
    hard_edge_op,
    solve_soft_edge,
    solve_hard_edge,
    edge_scaling_map,
    derive_hard_edge_op,
    hard_edge_amplitude,
    soft_tail_amplitude,
    airy_density_derivatives,
    goe_soft_density_derivatives,
)
from specden.oracle import gue_density, ode_residual


def test_soft_edge_operator_beta2():
    assert soft_edge_op(2).render() == "[2] + [-4*x]*d + [1]*d^3"


@pytest.mark.parametrize(
    "beta,order", [(Fraction(2, 3), 7), (1, 5), (2, 3), (4, 5), (6, 7)]
)
def test_soft_edge_operator_orders(beta, order):
    assert soft_edge_op(beta).order == order


def test_unsupported_edge_beta():
    with pytest.raises(UnsupportedBetaError):
        soft_edge_op(3)
    with pytest.raises(UnsupportedBetaError):
        hard_edge_op(6, 0)


@pytest.mark.parametrize("a", [0, Fraction(1, 2), 3])
def test_hard_edge_operator_is_limit_of_laguerre(a):
    assert derive_hard_edge_op(2, a) == hard_edge_op(2, a)


def test_soft_tail_constants():
    assert decay_rates(soft_edge_op(2)) == [2]
    assert soft_tail_amplitude(1) == pytest.approx(1 / (8 * math.pi))
    assert hard_edge_amplitude(0) == pytest.approx(0.25)


def test_airy_domain():
    assert airy(0.0) == pytest.approx(0.355028053887817)
    with pytest.raises(DomainExceededError):
        airy(13.0)
    with pytest.raises(DomainExceededError):
        besselj(-1.5, np.array([1.0]))


def test_airy_density_at_origin():
    assert airy_density(0.0) == pytest.approx(0.0669875, abs=1e-6)


def test_closed_forms_solve_soft_operators():
    grid = np.linspace(-6, 3, 61)
    assert ode_residual(soft_edge_op(2), airy_density_derivatives, grid).max < 1e-9
    assert ode_residual(soft_edge_op(1), goe_soft_density_derivatives, grid).max < 1e-8


def test_solve_soft_edge_beta2():
    solution = solve_soft_edge(2)
    assert solution.normalization == "tail-amplitude"
    assert solution.tail_exponent == 1
    assert solution.oracle_deviation < 1e-6
    assert solution.ode_residual < 1e-6
    assert solution.values[400] == pytest.approx(0.0669875, abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("beta", [2, 4, 6])
def test_soft_edge_bulk_ratio(beta):
    assert solve_soft_edge(beta).bulk_ratio == pytest.approx(1, rel=0.02)


@pytest.mark.slow
@pytest.mark.parametrize("beta", [2, 4, 6])
def test_soft_edge_tail_at_four(beta):
    solution = solve_soft_edge(beta, x_max=4.0)
    assert solution.grid[-1] == pytest.approx(4)
    tail = soft_tail(soft_edge_op(beta), beta, config["edge"]["tail_terms"])
    expected = solution.tail_amplitude * math.exp(tail.phase(4.0)) * tail.seed(4.0, 1)[0]
    assert math.log(solution.values[-1]) == pytest.approx(math.log(expected), rel=0.01)


def test_soft_edge_grid_must_cover_window():
    with pytest.raises(InvalidSpecError):
        solve_soft_edge(2, x_min=-3.0)
    with pytest.raises(InvalidSpecError):
        solve_soft_edge(2, x_max=1.0)


@pytest.mark.parametrize("a", [0, Fraction(1, 2), 1])
def test_solve_hard_edge_beta2(a):
    solution = solve_hard_edge(2, a)
    assert solution.normalization == "origin-amplitude"
    assert solution.oracle_deviation < 1e-6
    assert np.all(solution.values > 0)


@pytest.mark.slow
def test_solve_hard_edge_beta1():
    solution = solve_hard_edge(1, 0, x_max=100.0)
    assert solution.normalization == "tail-fit"
    assert solution.ode_residual < 1e-8
    assert solution.bulk_ratio == pytest.approx(1, rel=0.05)


@pytest.mark.slow
@pytest.mark.parametrize("beta", [1, 4])
def test_hard_edge_residual(beta):
    solution = solve_hard_edge(beta, 0)
    assert solution.normalization == "tail-fit"
    assert solution.ode_residual < 1e-8
    assert np.all(solution.values > 0)


def test_hard_edge_oracle_tolerance(monkeypatch):
    monkeypatch.setitem(config["edge"], "oracle_tolerance", 0.0)
    with pytest.raises(ToleranceNotMetError):
        solve_hard_edge(2, 0)


def test_hard_edge_limits():
    with pytest.raises(InvalidSpecError):
        solve_hard_edge(2, -1)
    with pytest.raises(InvalidSpecError):
        solve_hard_edge(2, 0, x_max=0.5)


def test_edge_solution_output():
    solution = solve_hard_edge(2, 0, points=51)
    lines = solution.to_csv().splitlines()
    assert lines[0] == "x,rho,residual"
    assert len(lines) == 51
    data = json.loads(solution.to_json())
    assert data["edge"] == "hard"
    assert data["normalization"] == "origin-amplitude"
    assert len(data["values"]) == 50


def test_gaussian_edge_map():
    edge = edge_scaling_map(EnsembleSpec("gaussian", 2, n=8))
    assert edge.delta == 0
    assert edge.center == pytest.approx(4)
    assert edge.scale == pytest.approx(0.5)
    assert edge.raw(0.0) == edge.center


def test_laguerre_edge_maps():
    edge = edge_scaling_map(EnsembleSpec("laguerre", 2, n=5))
    assert edge.center == pytest.approx(20)
    edge = edge_scaling_map(EnsembleSpec("laguerre", 2, n=4, a=Scaled(3)))
    assert edge.q_plus == pytest.approx(3)
    assert edge.center == pytest.approx(36)
    hard = edge_scaling_map(EnsembleSpec("laguerre", 2, n=4, a=1), kind="hard")
    assert hard.center == 0
    assert hard.exponent == 1


def test_jacobi_hard_edge_maps():
    spec = EnsembleSpec("jacobi", 2, n=3, a=1, b=2)
    lower = edge_scaling_map(spec, kind="hard")
    assert lower.scale == pytest.approx(1 / 36)
    assert lower.exponent == 1
    upper = edge_scaling_map(spec, kind="hard", side="largest")
    assert upper.center == 1
    assert upper.orientation == -1
    assert upper.exponent == 2


def test_edge_map_errors():
    with pytest.raises(NoHardEdgeError):
        edge_scaling_map(EnsembleSpec("gaussian", 2, n=4), kind="hard")
    with pytest.raises(UnsupportedFamilyError):
        edge_scaling_map(EnsembleSpec("jacobi", 2, n=4))
    with pytest.raises(InvalidSpecError):
        edge_scaling_map(EnsembleSpec("gaussian", 2))
    with pytest.raises(InvalidSpecError):
        edge_scaling_map(EnsembleSpec("gaussian", 2, n=4), side="middle")


@pytest.mark.slow
def test_gue_edge_converges_to_airy():
    x = np.linspace(-2, 1, 31)

    def deviation(n):
        edge = edge_scaling_map(EnsembleSpec("gaussian", 2, n=n))
        scaled = edge.density(lambda t: gue_density(n, t))
        return np.max(np.abs(scaled(x) - airy_density(x)))

    assert deviation(400) < deviation(50)

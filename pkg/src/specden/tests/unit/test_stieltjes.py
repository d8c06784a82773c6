from fractions import Fraction

import pytest

from specden.errors import (
    SingularSystemError,
    StructureMismatchError,
    InsufficientMomentsError,
)
from specden.exactq import PolyQ
from specden.diffop import DiffOp, EnsembleSpec, catalog_pair
from specden.moments import moments_exact
from specden.stieltjes import (
    StieltjesTerm,
    falling,
    StieltjesForm,
    reduce_operator,
    stieltjes_terms,
    resolvent_rhs_from_ode,
    initial_moments_from_rhs,
    moment_recurrence_from_ode,
)

GUE3_MOMENTS = {0: Fraction(3), 2: Fraction(9, 2), 4: Fraction(57, 4)}


@pytest.fixture
def gue3():
    return catalog_pair(EnsembleSpec("gaussian", 2, n=3))


def test_falling():
    assert falling(5, 0) == 1
    assert falling(5, 3) == 60
    assert falling(-2, 2) == 6


def test_gue_recurrence_shape(gue3):
    rec = moment_recurrence_from_ode(gue3[0])
    assert rec.step == 2
    assert rec.span == 2
    assert rec.top == 1
    assert rec.coefficients(4) == [6, -18, Fraction(-3, 2)]


def test_gue_recurrence_render(gue3):
    rec = moment_recurrence_from_ode(gue3[0])
    assert rec.polynomial(0) == PolyQ((2, 1))
    assert rec.render() == (
        "[k + 2]*m[k] + [-6*k + 6]*m[k-2] + [-1/4*k^3 + 3/2*k^2 - 11/4*k + 3/2]*m[k-4]"
    )


def test_polynomial_matches_coefficients(gue3):
    rec = moment_recurrence_from_ode(gue3[0])
    for k in range(-3, 10):
        assert [rec.polynomial(lag)(Fraction(k)) for lag in range(rec.span + 1)] == rec.coefficients(k)


def test_recurrence_solves_both_ways(gue3):
    rec = moment_recurrence_from_ode(gue3[0])
    assert rec.residual(GUE3_MOMENTS, 4) == 0
    known = {0: GUE3_MOMENTS[0], 2: GUE3_MOMENTS[2]}
    assert rec.solve_forward(known, 4) == GUE3_MOMENTS[4]
    known = {2: GUE3_MOMENTS[2], 4: GUE3_MOMENTS[4]}
    assert rec.solve_backward(known, 4) == GUE3_MOMENTS[0]


def test_missing_moment(gue3):
    rec = moment_recurrence_from_ode(gue3[0])
    with pytest.raises(InsufficientMomentsError):
        rec.solve_forward({0: Fraction(3)}, 4)


def test_vanishing_pivot(gue3):
    # c_0(k) = k + 2 vanishes at k = -2
    rec = moment_recurrence_from_ode(gue3[0])
    with pytest.raises(SingularSystemError):
        rec.solve_forward({-4: 1, -6: 1}, -2)


def test_step_hint():
    op = DiffOp([PolyQ.x(), PolyQ((0, 0, 1))])
    assert moment_recurrence_from_ode(op).step == 1
    with pytest.raises(StructureMismatchError):
        moment_recurrence_from_ode(DiffOp([PolyQ((0, 1)), PolyQ((1,))]), step_hint=3)
    with pytest.raises(StructureMismatchError):
        moment_recurrence_from_ode(DiffOp([]))


def test_term_indices_are_non_negative():
    with pytest.raises(StructureMismatchError):
        StieltjesTerm(-1)


def test_resolvent_part_is_the_operator(gue3):
    op = gue3[0]
    assert reduce_operator(op).operator() == op


def test_rhs_from_moments(gue3):
    op, rhs = gue3
    moments = [GUE3_MOMENTS.get(k, Fraction(0)) for k in range(5)]
    assert resolvent_rhs_from_ode(op, moments) == rhs


def test_initial_moments(gue3):
    op, rhs = gue3
    assert initial_moments_from_rhs(op, rhs, Fraction(3), count=3) == [3, 0, Fraction(9, 2)]


def test_boundary_factor_reduces_like_its_expansion():
    expanded = StieltjesForm()
    for p, c in ((2, 1), (3, -2), (4, 1)):
        expanded = expanded + StieltjesTerm(p, 0, 2, 1).reduce() * c
    assert StieltjesTerm(2, 2, 2, 1).reduce() == expanded


def test_boundary_safety():
    assert StieltjesTerm(3, 2, 2, 1).boundary_safe
    assert not StieltjesTerm(3, 1, 2, 1).boundary_safe
    assert not StieltjesTerm(1, 3, 2, 1).boundary_safe


def test_jacobi_terms_keep_the_boundary_factor():
    spec = EnsembleSpec("jacobi", 2, n=2, a=1, b=2)
    op, rhs = catalog_pair(spec)
    terms = stieltjes_terms(op)
    assert any(term.q > 0 for _, term in terms)
    assert all(term.q > 0 for _, term in terms if term.n == op.order)
    assert reduce_operator(op).operator() == op
    assert resolvent_rhs_from_ode(op, moments_exact(spec, 12).as_list()) == rhs

from fractions import Fraction

import pytest

from specden.errors import (
    InvalidSpecError,
    UnsupportedNError,
    UnsupportedBetaError,
    StructureMismatchError,
)
from specden.exactq import PolyQ, RatFun
from specden.diffop import (
    Affine,
    DiffOp,
    Scaled,
    WeightTag,
    EnsembleSpec,
    catalog_pair,
    op_pullback,
    eliminate_scalar,
    catalog_density_op,
    build_gaussian_system,
    op_apply_to_weighted_poly,
)

X = PolyQ.x()


def test_spec_validation():
    with pytest.raises(InvalidSpecError):
        EnsembleSpec("wigner", 2)
    with pytest.raises(InvalidSpecError):
        EnsembleSpec("gaussian", 0)
    with pytest.raises(InvalidSpecError):
        EnsembleSpec("gaussian", 2, n=0)
    with pytest.raises(InvalidSpecError):
        EnsembleSpec("laguerre", 2, n=2, a=-1)
    with pytest.raises(InvalidSpecError):
        EnsembleSpec("jacobi", 2, n=2, a=0, b=Fraction(-3, 2))


def test_spec_normalizes_fields():
    spec = EnsembleSpec("Laguerre", "1/2", n=3, a="3/2")
    assert spec.family == "laguerre"
    assert spec.beta == Fraction(1, 2)
    assert spec.kappa == Fraction(1, 4)
    assert spec.a == Fraction(3, 2)


def test_scaled_parameter():
    spec = EnsembleSpec("laguerre", 2, n=4, a=Scaled(Fraction(1, 2), 1))
    assert spec.param("a") == 3
    symbolic = spec.with_n(None)
    assert symbolic.param("a") == RatFun.n() / 2 + 1


def test_spec_dict_round_trip():
    spec = EnsembleSpec("jacobi", 4, a=Scaled(1, Fraction(1, 3)), b=2)
    assert EnsembleSpec.from_dict(spec.to_dict()) == spec
    assert spec.to_dict()["n"] == "N"


def test_unit_gaussian_coupling():
    spec = EnsembleSpec("gaussian", 2, n=3)
    assert spec.g() == Fraction(3, 2)
    assert spec.weight() == WeightTag.gaussian(1)


def test_compose_with_derivative():
    # d o (x * f) = f + x f'
    op = DiffOp.d().compose(DiffOp([X]))
    assert op == DiffOp([PolyQ((1,)), X])


def test_apply_to_polynomial():
    op = DiffOp([X, -(X * X - 6), PolyQ(), PolyQ((Fraction(1, 4),))])
    assert op.apply(X * X) == X**3 - (X * X - 6) * X * 2


def test_from_terms_and_terms():
    op = DiffOp.from_terms({(0, 1): 2, (3, 0): Fraction(1, 4)})
    assert sorted(op.terms()) == [(0, 1, 2), (3, 0, Fraction(1, 4))]
    assert op.order == 3
    assert op.max_shift() == 1


def test_scale_x():
    # f(x) = g(2x'): x f' becomes x' g'
    op = DiffOp([PolyQ(), X])
    assert op.scale_x(2) == op
    assert DiffOp.d().scale_x(2) == DiffOp([PolyQ(), PolyQ((Fraction(1, 2),))])


def test_affine_pullback():
    op = DiffOp([X, PolyQ((1,))])
    pulled = op_pullback(op, Affine(Fraction(2), Fraction(1)))
    assert pulled == DiffOp([PolyQ((1, 2)), PolyQ((Fraction(1, 2),))])


def test_proportionality():
    op = DiffOp([X, X * X, PolyQ((1,))])
    assert op.is_proportional(op * (X + 1))
    assert not op.is_proportional(DiffOp([X, X, PolyQ((1,))]))


def test_render():
    op = catalog_density_op(EnsembleSpec("gaussian", 2, n=3))
    assert op.render() == "[x] + [-x^2 + 6]*d + [1/4]*d^3"


@pytest.mark.parametrize(
    ("family", "beta", "order"),
    [
        ("gaussian", 2, 3),
        ("gaussian", 1, 5),
        ("gaussian", 4, 5),
        ("gaussian", Fraction(2, 3), 7),
        ("gaussian", 6, 7),
        ("laguerre", 2, 3),
        ("laguerre", 1, 5),
        ("jacobi", 2, 3),
        ("jacobi", 4, 5),
    ],
)
def test_catalog_orders(family, beta, order):
    spec = EnsembleSpec(family, beta, n=3, a=Fraction(1, 2), b=Fraction(3, 2))
    assert catalog_density_op(spec).order == order


def test_catalog_rejects_unknown_beta():
    with pytest.raises(UnsupportedBetaError):
        catalog_pair(EnsembleSpec("gaussian", 3, n=2))
    with pytest.raises(UnsupportedBetaError):
        catalog_pair(EnsembleSpec("laguerre", 6, n=2))


def test_symbolic_catalog_instantiates():
    symbolic = catalog_density_op(EnsembleSpec("gaussian", 2))
    assert symbolic.at_n(3) == catalog_density_op(EnsembleSpec("gaussian", 2, n=3))


@pytest.mark.parametrize(
    ("n", "poly"),
    [(1, PolyQ((1,))), (2, PolyQ((1, 0, 2)))],
)
def test_gue_density_is_annihilated(n, poly):
    op = catalog_density_op(EnsembleSpec("gaussian", 2, n=n))
    image = op_apply_to_weighted_poly(op, poly, WeightTag.gaussian(1))
    assert image.poly.is_zero()


@pytest.mark.parametrize("a", [Fraction(0), Fraction(1), Fraction(5, 2)])
def test_single_laguerre_density_is_annihilated(a):
    op = catalog_density_op(EnsembleSpec("laguerre", 2, n=1, a=a))
    image = op_apply_to_weighted_poly(op, PolyQ((1,)), WeightTag.laguerre(a))
    assert image.poly.is_zero()


def test_uniform_jacobi_density_is_annihilated():
    op = catalog_density_op(EnsembleSpec("jacobi", 2, n=1))
    image = op_apply_to_weighted_poly(op, PolyQ((1,)), WeightTag.jacobi(0, 0))
    assert image.poly.is_zero()


def test_weighted_image_keeps_nonzero_part():
    image = op_apply_to_weighted_poly(DiffOp.d(), PolyQ((1,)), WeightTag.gaussian(1))
    assert image.poly == X * -2
    assert image.power == 0


@pytest.mark.parametrize(("n", "poly"), [(1, PolyQ((1,))), (2, PolyQ((1, 0, 2)))])
def test_eliminated_gaussian_system_annihilates_density(n, poly):
    op = eliminate_scalar(build_gaussian_system(2, EnsembleSpec("gaussian", 2, n=n)))
    assert op.order == 3
    image = op_apply_to_weighted_poly(op, poly, WeightTag.gaussian(1))
    assert image.poly.is_zero()


def test_system_size_is_checked():
    with pytest.raises(UnsupportedNError):
        build_gaussian_system(3, EnsembleSpec("gaussian", 3, n=2))


def test_interior_component_is_rejected():
    system = build_gaussian_system(2, EnsembleSpec("gaussian", 2, n=2))
    with pytest.raises(StructureMismatchError):
        eliminate_scalar(system, target=1)

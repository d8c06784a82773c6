from specden.diffop.diffop import (
    Affine,
    DiffOp,
    Inverse,
    WeightedImage,
    op_pullback,
    pullback_with_power,
    weight_denominator,
    weighted_derivatives,
    op_apply_to_weighted_poly,
)
from specden.diffop.catalog import (
    SUPPORTED,
    catalog_pair,
    check_supported,
    catalog_density_op,
    catalog_resolvent_rhs,
)
from specden.diffop.systems import (
    SqrtExt,
    MatrixODE,
    sqrt_of,
    eliminate_scalar,
    build_jacobi_system,
    build_gaussian_system,
)
from specden.diffop.ensemble import Scaled, WeightTag, EnsembleSpec

__all__ = [
    "SUPPORTED",
    "Affine",
    "DiffOp",
    "EnsembleSpec",
    "Inverse",
    "MatrixODE",
    "Scaled",
    "SqrtExt",
    "WeightTag",
    "WeightedImage",
    "build_gaussian_system",
    "build_jacobi_system",
    "catalog_density_op",
    "catalog_pair",
    "catalog_resolvent_rhs",
    "check_supported",
    "eliminate_scalar",
    "op_apply_to_weighted_poly",
    "op_pullback",
    "pullback_with_power",
    "sqrt_of",
    "weight_denominator",
    "weighted_derivatives",
]

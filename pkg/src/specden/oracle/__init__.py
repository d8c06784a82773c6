from specden.oracle.cd import (
    CDKernelDensity,
    cd_density,
    gue_density,
    weight_mass,
    weight_moments,
    monic_orthogonal,
)
from specden.oracle.residual import ResidualStats, ode_residual, sampled_evaluator
from specden.oracle.bruteforce import moments_bruteforce, moments_quadrature
from specden.oracle.montecarlo import MCEstimate, mc_moments, tridiagonal_eigenvalues

__all__ = [
    "CDKernelDensity",
    "MCEstimate",
    "ResidualStats",
    "cd_density",
    "gue_density",
    "mc_moments",
    "moments_bruteforce",
    "moments_quadrature",
    "monic_orthogonal",
    "ode_residual",
    "sampled_evaluator",
    "tridiagonal_eigenvalues",
    "weight_mass",
    "weight_moments",
]

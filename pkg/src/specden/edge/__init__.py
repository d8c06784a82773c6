from specden.edge.ops import (
    HARD_BETAS,
    SOFT_BETAS,
    hard_edge_op,
    soft_edge_op,
    derive_hard_edge_op,
)
from specden.edge.solve import (
    EdgeSolution,
    solve_hard_edge,
    solve_soft_edge,
    hard_edge_amplitude,
)
from specden.edge.tails import (
    SoftTail,
    Frobenius,
    soft_tail,
    decay_rates,
    indicial_parts,
    admissible_roots,
    frobenius_series,
    soft_tail_amplitude,
)
from specden.edge.scaling import EdgeScalingMap, edge_scaling_map
from specden.edge.special import (
    airy,
    besselj,
    airy_density,
    bessel_density,
    goe_soft_density,
    airy_density_derivatives,
    goe_soft_density_derivatives,
)

__all__ = [
    "HARD_BETAS",
    "SOFT_BETAS",
    "EdgeScalingMap",
    "EdgeSolution",
    "Frobenius",
    "SoftTail",
    "admissible_roots",
    "airy",
    "airy_density",
    "airy_density_derivatives",
    "bessel_density",
    "besselj",
    "decay_rates",
    "derive_hard_edge_op",
    "edge_scaling_map",
    "frobenius_series",
    "goe_soft_density",
    "goe_soft_density_derivatives",
    "hard_edge_amplitude",
    "hard_edge_op",
    "indicial_parts",
    "soft_edge_op",
    "soft_tail",
    "soft_tail_amplitude",
    "solve_hard_edge",
    "solve_soft_edge",
]

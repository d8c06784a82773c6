from specden.resolvent.series import ResidualReport, resolvent_series, check_resolvent_ode
from specden.resolvent.expansion import (
    NORMALIZATION,
    LevelSolver,
    ExpansionStack,
    scaled_spec,
    check_planar,
    planar_equation,
    level_equations,
    w0_universality_check,
    expansion_coefficients,
)
from specden.resolvent.printed import (
    PRINTED_LEVELS,
    LevelCheck,
    PrintedLevels,
    PrintedLevelReport,
    check_printed_levels,
)

__all__ = [
    "NORMALIZATION",
    "PRINTED_LEVELS",
    "ExpansionStack",
    "LevelCheck",
    "LevelSolver",
    "PrintedLevelReport",
    "PrintedLevels",
    "ResidualReport",
    "check_planar",
    "check_printed_levels",
    "check_resolvent_ode",
    "expansion_coefficients",
    "level_equations",
    "planar_equation",
    "resolvent_series",
    "scaled_spec",
    "w0_universality_check",
]

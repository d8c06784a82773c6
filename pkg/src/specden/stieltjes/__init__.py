from specden.stieltjes.transform import (
    StieltjesForm,
    StieltjesTerm,
    reduce_operator,
    stieltjes_terms,
    resolvent_rhs_from_ode,
    initial_moments_from_rhs,
)
from specden.stieltjes.recurrence import Recurrence, falling, moment_recurrence_from_ode

__all__ = [
    "Recurrence",
    "StieltjesForm",
    "StieltjesTerm",
    "falling",
    "initial_moments_from_rhs",
    "moment_recurrence_from_ode",
    "reduce_operator",
    "stieltjes_terms",
    "resolvent_rhs_from_ode",
]

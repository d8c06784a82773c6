from specden.moments.exact import (
    coeff_table,
    moments_exact,
    moments_negative,
    laguerre_reciprocity,
    jacobi_difference_reciprocity,
)
from specden.moments.tables import SHAPES, CoeffTable, MomentTable
from specden.moments.fixtures import (
    RECURRENCES,
    COEFF_RECURSIONS,
    Report,
    random_spec,
    zero_sum_report,
    check_recurrence_fixture,
    verify_printed_recursion,
    verify_recurrence_fixture,
)

__all__ = [
    "COEFF_RECURSIONS",
    "RECURRENCES",
    "SHAPES",
    "CoeffTable",
    "MomentTable",
    "Report",
    "check_recurrence_fixture",
    "coeff_table",
    "jacobi_difference_reciprocity",
    "laguerre_reciprocity",
    "moments_exact",
    "moments_negative",
    "random_spec",
    "verify_printed_recursion",
    "verify_recurrence_fixture",
    "zero_sum_report",
]

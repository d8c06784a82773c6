"""
The resolvent ``W(x) = sum_k m_k x**(-k-1)`` as a truncated series, and the
check that it satisfies the catalog equation ``D (W/N) = R``.
"""

import logging
import dataclasses

from specden.exactq import PolyQ, series_from_moments, series_apply_diffop
from specden.diffop import catalog_pair
from specden.moments import moments_exact

log = logging.getLogger(__name__)


def resolvent_series(spec, order):
    """
    The resolvent of ``spec`` to ``x**(-order)``.

    Args:
        spec (EnsembleSpec): A catalog ensemble.
        order (int): The truncation order ``J``; moments ``m_0 .. m_{J-1}`` are used.

    Returns:
        InvXSeries: ``sum_{k < J} m_k x**(-k-1)``.
    """
    if order <= 0:
        return series_from_moments([], 0)
    table = moments_exact(spec, order - 1)
    return series_from_moments(table.as_list(), order)


@dataclasses.dataclass
class ResidualReport:
    """
    The result of substituting the resolvent series into its equation.

    Attributes:
        spec (EnsembleSpec): The ensemble.
        order (int): Order of the residual series (exponents down to ``-order``
            are exact).
        polynomial_part (PolyQ): The computed polynomial part of ``D (W/N)``.
        expected (PolyQ): The catalog right-hand side.
        nonzero (list): Negative exponents whose coefficient does not vanish.
    """

    spec: object
    order: int
    polynomial_part: PolyQ
    expected: PolyQ
    nonzero: list = dataclasses.field(default_factory=list)

    @property
    def ok(self):
        return self.polynomial_part == self.expected and not self.nonzero

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "order": self.order,
            "polynomial_part": self.polynomial_part.to_strings(),
            "expected": self.expected.to_strings(),
            "nonzero": list(self.nonzero),
            "ok": self.ok,
        }


def check_resolvent_ode(spec, order):
    """
    Substitute the resolvent series into ``D (W/N)``.

    Args:
        spec (EnsembleSpec): A catalog ensemble.
        order (int): Truncation order of the resolvent series.

    Returns:
        ResidualReport: The polynomial part of the result against the catalog
        right-hand side, and every determined negative power that fails to vanish.
    """
    op, rhs = catalog_pair(spec)
    series = resolvent_series(spec, order) * (1 / spec.n_value())
    image = series_apply_diffop(op, series)
    nonzero = sorted((e for e in image.terms if e < 0), reverse=True)
    report = ResidualReport(spec, image.order, image.polynomial_part(), rhs, nonzero)
    if report.ok:
        log.info("Resolvent equation holds to x^%d", -image.order)
    else:
        log.warning(
            "Resolvent equation fails: polynomial part %s, %d nonzero negative powers",
            report.polynomial_part.render(),
            len(nonzero),
        )
    return report

"""
Numerical residuals of density operators.
"""

import logging
import dataclasses

import numpy as np
from scipy import interpolate

log = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ResidualStats:
    """
    ``max`` and ``mean`` of ``|D rho|`` over a grid, divided by ``scale``,
    the largest single term ``|p_i rho^(i)|`` seen on the grid.
    """

    max: float
    mean: float
    scale: float
    pointwise: object = dataclasses.field(default=None, repr=False, compare=False)

    def to_dict(self):
        return {"max": self.max, "mean": self.mean, "scale": self.scale}


def poly_values(poly, x):
    """
    Evaluate an exact polynomial on a float array.

    Args:
        poly (PolyQ): The polynomial.
        x (numpy.ndarray): Points.

    Returns:
        numpy.ndarray: The values.
    """
    acc = np.zeros_like(x)
    for c in reversed(poly.coeffs):
        acc = acc * x + float(c)
    return acc


def ode_residual(op, evaluator, grid):
    """
    Measure how well sampled or analytic density values satisfy ``D rho = 0``.

    Args:
        op (DiffOp): An operator with rational coefficients.
        evaluator (callable): ``evaluator(x, order)`` returning an array of shape
            ``(order + 1, len(x))`` with ``rho`` and its derivatives, e.g.
            :py:meth:`~specden.oracle.cd.CDKernelDensity.derivatives`.
        grid (array_like): Evaluation points.

    Returns:
        ResidualStats: The normalized residual.
    """
    x = np.asarray(grid, dtype=float)
    derivs = evaluator(x, op.order)
    terms = np.array([poly_values(p, x) * derivs[i] for i, p in enumerate(op.coeffs)])
    total = np.abs(np.sum(terms, axis=0))
    scale = float(np.max(np.abs(terms))) or 1.0
    stats = ResidualStats(
        float(np.max(total)) / scale, float(np.mean(total)) / scale, scale, total / scale
    )
    log.debug("Normalized residual max %.3g, mean %.3g", stats.max, stats.mean)
    return stats


def sampled_evaluator(grid, values, order):
    """
    An evaluator for tabulated densities through an interpolating spline.

    Args:
        grid (array_like): Ascending sample points.
        values (array_like): Density values.
        order (int): Highest derivative that will be requested.

    Returns:
        callable: ``evaluator(x, order)`` for :py:func:`ode_residual`.
    """
    spline = interpolate.make_interp_spline(np.asarray(grid, float), np.asarray(values, float), k=order + 2)

    def evaluate(x, wanted):
        return np.array([spline(x, nu=i) for i in range(wanted + 1)])

    return evaluate

"""
Soft and hard edge densities as solutions of the edge operators.

Soft edge: every decaying solution at least as fast as the physical one is
seeded from its asymptotic series at ``x0`` and integrated leftward. The
physical branch carries the tail amplitude
``Gamma(1 + kappa) / (pi * (8*kappa)**kappa)``; faster branches, present for
``beta`` in {2/3, 1}, are fitted to ``sqrt(|x|)/pi`` over whole oscillation
periods of the bulk.

Hard edge: the admissible Frobenius branches at ``x = 0`` are continued
rightward. For ``beta = 2`` the ``x**a`` branch carries the exact amplitude
``1 / (4**(a+1) Gamma(a+1) Gamma(a+2))``; otherwise the branches are fitted
to ``1/(2*pi*sqrt(x))`` over the last decade of the grid.

The top derivative needed for residuals comes from a five-point difference
of the integrated state.
"""

import json
import math
import logging
import dataclasses
from fractions import Fraction

import numpy as np
from scipy import special, integrate
from numpy.polynomial import polynomial as npoly

from specden.config import config
from specden.errors import (
    InvalidSpecError,
    SeedUnstableError,
    SingularSystemError,
    ToleranceNotMetError,
    StructureMismatchError,
)
from specden.exactq import as_scalar
from specden.edge.ops import hard_edge_op, soft_edge_op
from specden.edge.tails import (
    soft_tail,
    decay_rates,
    indicial_parts,
    admissible_roots,
    frobenius_series,
    soft_tail_amplitude,
)
from specden.edge.special import (
    AIRY_LIMIT,
    airy_density,
    bessel_density,
    goe_soft_density,
)
from specden.oracle.residual import ode_residual

log = logging.getLogger(__name__)

PHASE_NODES = 400


def _fmt(value):
    return None if value is None else format(float(value), ".17g")


@dataclasses.dataclass
class EdgeSolution:
    """
    A tabulated edge density.

    Attributes:
        beta (Fraction): The Dyson index.
        kind (str): ``"soft"`` or ``"hard"``.
        grid (numpy.ndarray): Ascending points.
        values (numpy.ndarray): The density on ``grid``.
        ode_residual (float): Largest normalized residual on ``grid``.
        residuals (numpy.ndarray): Normalized residual per point.
        normalization (str): How the overall scale was fixed.
        a (Fraction): The hard edge exponent.
        oracle_deviation (float): Largest deviation from a closed form, if any.
        tail_exponent (Fraction): Soft edge power ``p`` in ``x**(-p)``.
        tail_amplitude (float): Soft edge tail amplitude.
        bulk_ratio (float): Period-averaged ratio to ``sqrt(|x|)/pi`` (soft)
            or ``1/(2*pi*sqrt(x))`` (hard).
    """

    beta: Fraction
    kind: str
    grid: np.ndarray
    values: np.ndarray
    ode_residual: float
    residuals: np.ndarray
    normalization: str
    a: Fraction = None
    oracle_deviation: float = None
    tail_exponent: Fraction = None
    tail_amplitude: float = None
    bulk_ratio: float = None

    def __call__(self, x):
        return np.interp(x, self.grid, self.values)

    def to_csv(self):
        """
        CSV with the columns ``x``, ``rho`` and ``residual``.

        Returns:
            str: The table.
        """
        lines = ["x,rho,residual"]
        for x, rho, res in zip(self.grid, self.values, self.residuals):
            lines.append(f"{x:.17g},{rho:.17g},{res:.17g}")
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "kind": "edge",
            "edge": self.kind,
            "beta": str(self.beta),
            "a": None if self.a is None else str(self.a),
            "normalization": self.normalization,
            "ode_residual": _fmt(self.ode_residual),
            "oracle_deviation": _fmt(self.oracle_deviation),
            "tail_exponent": None if self.tail_exponent is None else str(self.tail_exponent),
            "tail_amplitude": _fmt(self.tail_amplitude),
            "bulk_ratio": _fmt(self.bulk_ratio),
            "grid": [_fmt(x) for x in self.grid],
            "values": [_fmt(v) for v in self.values],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


class _Branch:
    """
    One basis solution: the dense output of an integration, optionally
    replaced by a local series below ``switch``.
    """

    def __init__(self, dense, order, step, series=None, switch=None):
        self.dense = dense
        self.order = order
        self.step = step
        self.series = series
        self.switch = switch

    def _top(self, x):
        h = self.step

        def f(t):
            return self.dense(t)[self.order - 1]

        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)

    def rows(self, x, order):
        x = np.asarray(x, dtype=float)
        out = np.zeros((order + 1, len(x)))
        near = np.zeros(len(x), dtype=bool)
        if self.series is not None:
            near = x < self.switch
            if near.any():
                out[:, near] = self.series.rows(x[near], order)
        far = ~near
        if far.any():
            states = self.dense(x[far])
            top = min(order, self.order - 1)
            out[: top + 1, far] = states[: top + 1]
            if order >= self.order:
                out[self.order, far] = self._top(x[far])
        return out


def _integrate(op, y0, start, stop, rtol):
    cfg = config["edge"]
    coeffs = [np.array([float(c) for c in p.coeffs] or [0.0]) for p in op.coeffs]
    lead = coeffs[-1]
    order = op.order

    def rhs(t, y):
        acc = sum(npoly.polyval(t, coeffs[i]) * y[i] for i in range(order))
        return np.append(y[1:], -acc / npoly.polyval(t, lead))

    sol = integrate.solve_ivp(
        rhs,
        (start, stop),
        y0,
        method="DOP853",
        rtol=rtol,
        atol=cfg["atol"],
        dense_output=True,
    )
    if not sol.success:
        raise ToleranceNotMetError(f"Edge integration failed: {sol.message}")
    log.debug("Integrated from %.4g to %.4g in %d steps", start, stop, len(sol.t))
    return sol.sol


def _phase_nodes(lo, hi, inverse):
    # whole periods anchored at the phase ``hi``
    periods = math.floor((hi - lo) / (2 * math.pi))
    if periods >= 1:
        lo = hi - 2 * math.pi * periods
    edges = np.linspace(lo, hi, PHASE_NODES + 1)
    return inverse((edges[:-1] + edges[1:]) / 2)


def _fit(columns, target):
    design = np.column_stack(columns)
    norms = np.linalg.norm(design, axis=0)
    norms[norms == 0] = 1.0
    coef, *_ = np.linalg.lstsq(design / norms, target, rcond=None)
    return list(coef / norms)


def _combine(weights, branches):
    def evaluate(x, order):
        return sum(w * b.rows(x, order) for w, b in zip(weights, branches))

    return evaluate


def _soft_nodes(x_min):
    window = config["edge"]["bulk_window"]
    end = min(x_min + window, -1.0)
    return _phase_nodes(
        4 * abs(end) ** 1.5 / 3,
        4 * abs(x_min) ** 1.5 / 3,
        lambda t: -((3 * t / 4) ** (2 / 3)),
    )


def _soft_density(op, kappa, x_min, x0, rtol):
    cfg = config["edge"]
    step = cfg["residual_step"]
    physical = 2 * kappa
    rates = [r for r in decay_rates(op) if r >= physical]
    if not rates or rates[0] != physical:
        raise StructureMismatchError(f"No decaying branch at rate {physical}")
    tails = [soft_tail(op, r, cfg["tail_terms"]) for r in rates]
    lead = tails[0]
    if lead.phase(x0) < -700:
        raise InvalidSpecError(f"The seed point {x0} lies too far in the tail")
    branches = []
    for tail in tails:
        if tail.last_term(x0) > 1e-13:
            log.warning("Tail series at rate %s is truncated at %.3g", tail.rate, tail.last_term(x0))
        dense = _integrate(op, tail.seed(x0, op.order), x0, x_min - 3 * step, rtol)
        branches.append(_Branch(dense, op.order, step))
    amplitude = soft_tail_amplitude(kappa)
    weights = [amplitude * math.exp(lead.phase(x0))]
    if len(branches) > 1:
        nodes = _soft_nodes(x_min)
        target = np.sqrt(-nodes) / np.pi - weights[0] * branches[0].rows(nodes, 0)[0]
        weights += _fit([b.rows(nodes, 0)[0] for b in branches[1:]], target)
    return _combine(weights, branches), lead, amplitude, len(branches) == 1


def solve_soft_edge(beta, x_min=-6.0, x_max=3.0, rtol=None, points=None):
    """
    Solve the soft edge equation.

    Args:
        beta (object): One of 2/3, 1, 2, 4, 6.
        x_min (float): Left end, at most ``-4``.
        x_max (float): Right end, at least ``3``.
        rtol (float, optional): Integration tolerance. Defaults to the configured value.
        points (int, optional): Grid size. Defaults to the configured value.

    Returns:
        EdgeSolution: The tabulated density.

    Raises:
        InvalidSpecError: For a grid not covering ``[-4, 3]``.
        UnsupportedBetaError: Outside the soft edge catalog.
        ToleranceNotMetError: If the residual exceeds the configured tolerance.
        SeedUnstableError: If moving the seed point changes the solution.
    """
    cfg = config["edge"]
    beta = as_scalar(beta)
    if x_max < 3 or x_min > -4:
        raise InvalidSpecError("The soft edge grid must cover [-4, 3]")
    op = soft_edge_op(beta)
    kappa = beta / 2
    rtol = cfg["rtol"] if rtol is None else rtol
    grid = np.linspace(x_min, x_max, points or cfg["grid_points"])
    x0 = max(cfg["soft_seed_point"], x_max + 1)
    log.info("Soft edge beta=%s on [%g, %g], seed at %g", beta, x_min, x_max, x0)

    evaluate, lead, amplitude, unique = _soft_density(op, kappa, x_min, x0, rtol)
    values = evaluate(grid, 0)[0]
    stats = ode_residual(op, evaluate, grid)
    if stats.max > cfg["residual_tolerance"]:
        raise ToleranceNotMetError(f"Soft edge residual {stats.max:.3g} is too large")
    if np.any(values[grid <= 0] <= 0):
        raise ToleranceNotMetError("The soft edge solution is not positive in the bulk")

    shifted = _soft_density(op, kappa, x_min, x0 - 1, rtol)[0](grid, 0)[0]
    drift = float(np.max(np.abs(shifted - values)) / np.max(np.abs(values)))
    limit = cfg["seed_tolerance"] if unique else cfg["bulk_seed_tolerance"]
    if drift > limit:
        raise SeedUnstableError(f"Moving the seed point changes the solution by {drift:.3g}")

    nodes = _soft_nodes(x_min)
    bulk = float(np.mean(evaluate(nodes, 0)[0] / (np.sqrt(-nodes) / np.pi)))
    oracle = {Fraction(2): airy_density, Fraction(1): goe_soft_density}.get(beta)
    deviation = None
    if oracle is not None and max(-x_min, x_max) <= AIRY_LIMIT:
        deviation = float(np.max(np.abs(values - oracle(grid))))
    log.info("Soft edge residual %.3g, bulk ratio %.6f, seed drift %.3g", stats.max, bulk, drift)
    return EdgeSolution(
        beta=beta,
        kind="soft",
        grid=grid,
        values=values,
        ode_residual=stats.max,
        residuals=stats.pointwise,
        normalization="tail-amplitude" if unique else "tail-amplitude+bulk-fit",
        oracle_deviation=deviation,
        tail_exponent=lead.exponent,
        tail_amplitude=amplitude,
        bulk_ratio=bulk,
    )


def hard_edge_amplitude(a):
    """
    ``1 / (4**(a+1) Gamma(a+1) Gamma(a+2))``, the ``beta = 2`` limit of ``rho(x)/x**a``.

    Args:
        a (Fraction): The exponent.

    Returns:
        float: The amplitude.
    """
    a = float(a)
    return 1.0 / (4 ** (a + 1) * float(special.gamma(a + 1)) * float(special.gamma(a + 2)))


def solve_hard_edge(beta, a=0, x_max=20.0, points=None):
    """
    Solve the hard edge equation.

    Args:
        beta (object): One of 1, 2, 4.
        a (object): The exponent, ``a > -1``.
        x_max (float): Right end, between 1 and 100.
        points (int, optional): Grid size. Defaults to the configured value.

    Returns:
        EdgeSolution: The density on ``(0, x_max]``.

    Raises:
        InvalidSpecError: For ``a <= -1`` or ``x_max`` out of range.
        UnsupportedBetaError: Outside the hard edge catalog.
        SingularSystemError: If every admissible branch needs a logarithm.
        ToleranceNotMetError: If the series, the residual or, for ``beta = 2``, the
            Bessel match misses its target.
    """
    cfg = config["edge"]
    beta, a = as_scalar(beta), as_scalar(a)
    if a <= -1:
        raise InvalidSpecError("The hard edge exponent must exceed -1")
    if not 1 <= x_max <= 100:
        raise InvalidSpecError("The hard edge grid must end in [1, 100]")
    op = hard_edge_op(beta, a)
    parts = indicial_parts(op)
    step, switch = cfg["residual_step"], cfg["frobenius_point"]
    log.info("Hard edge beta=%s, a=%s on (0, %g]", beta, a, x_max)

    branches = []
    for root in admissible_roots(parts, a, beta):
        series = frobenius_series(parts, root, cfg["frobenius_terms"])
        if series is None:
            continue
        if series.last_term(switch) > 1e-15 * switch ** float(root):
            raise ToleranceNotMetError(f"Frobenius series at root {root} has not converged")
        y0 = series.rows(np.array([switch]), op.order - 1)[:, 0]
        dense = _integrate(op, y0, switch, x_max + 3 * step, cfg["hard_rtol"])
        branches.append(_Branch(dense, op.order, step, series, switch + 2 * step))
    if not branches:
        raise SingularSystemError("Every admissible Frobenius branch needs a logarithm")

    nodes = _phase_nodes(2 * math.sqrt(x_max / 10), 2 * math.sqrt(x_max), lambda t: (t / 2) ** 2)
    target = 1 / (2 * np.pi * np.sqrt(nodes))
    if beta == 2:
        weights, normalization = [hard_edge_amplitude(a)], "origin-amplitude"
    else:
        weights = _fit([b.rows(nodes, 0)[0] for b in branches], target)
        normalization = "tail-fit"
    evaluate = _combine(weights, branches)

    grid = np.linspace(0.0, x_max, points or cfg["grid_points"])[1:]
    values = evaluate(grid, 0)[0]
    stats = ode_residual(op, evaluate, grid)
    if stats.max > cfg["hard_residual_tolerance"]:
        raise ToleranceNotMetError(f"Hard edge residual {stats.max:.3g} is too large")
    tail = float(np.mean(evaluate(nodes, 0)[0] / target))
    deviation = None
    if beta == 2:
        deviation = float(np.max(np.abs(values - bessel_density(float(a), grid))))
        if deviation > cfg["oracle_tolerance"]:
            raise ToleranceNotMetError(f"Hard edge density misses the Bessel form by {deviation:.3g}")
    log.info("Hard edge residual %.3g, tail ratio %.6f", stats.max, tail)
    return EdgeSolution(
        beta=beta,
        kind="hard",
        grid=grid,
        values=values,
        ode_residual=stats.max,
        residuals=stats.pointwise,
        normalization=normalization,
        a=a,
        oracle_deviation=deviation,
        bulk_ratio=tail,
    )

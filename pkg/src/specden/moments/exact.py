"""
Exact moments from the catalog operators.

The first moments come from the resolvent equation
(:py:func:`~specden.stieltjes.initial_moments_from_rhs`); the rest from the
moment recurrence of the density operator. When a numeric pivot vanishes
(this happens for integer Jacobi parameters) the computation is repeated
with ``N`` symbolic, where pivots are nonzero polynomials in ``N``, and the
result evaluated at the requested size.
"""

import logging
from fractions import Fraction

from specden.config import config
from specden.errors import (
    InvalidSpecError,
    SingularSystemError,
    DivergentMomentError,
    StructureMismatchError,
    UnsupportedFamilyError,
    TruncationTooShortError,
)
from specden.diffop import catalog_pair
from specden.stieltjes import initial_moments_from_rhs, moment_recurrence_from_ode
from specden.moments.tables import CoeffTable, MomentTable

log = logging.getLogger(__name__)


def _provenance(spec):
    return f"{spec.family}-beta{spec.beta}"


def _evaluate(value, n):
    if getattr(value, "is_ratfun", False):
        return value.evaluate(n)
    return value


def _with_fallback(fn, spec, *args):
    try:
        return fn(spec, *args)
    except SingularSystemError:
        if spec.symbolic:
            raise
        log.info("Zero pivot at N = %d; recomputing with N symbolic", spec.n)
    values = fn(spec.with_n(None), *args)
    return {k: _evaluate(v, spec.n) for k, v in values.items()}


def _forward(spec, k_max):
    op, rhs = catalog_pair(spec)
    rec = moment_recurrence_from_ode(op, source=_provenance(spec))
    count = min(k_max + 1, max(op.order, rec.top))
    values = dict(enumerate(initial_moments_from_rhs(op, rhs, spec.n_value(), count)))
    for k in range(count, k_max + 1):
        values[k] = rec.solve_forward(values, k)
    return values


def moments_exact(spec, k_max):
    """
    Compute ``m_0 .. m_{k_max}`` exactly.

    Args:
        spec (EnsembleSpec): A catalog ensemble; ``N`` may be symbolic.
        k_max (int): The largest moment index.

    Returns:
        MomentTable: Rationals, or rational functions of ``N``.

    Raises:
        UnsupportedBetaError: Outside the catalog.
        InvalidSpecError: If ``k_max`` is negative.
    """
    if k_max < 0:
        raise InvalidSpecError("k_max must be non-negative")
    values = _with_fallback(_forward, spec, k_max)
    log.debug("Computed %d moments for %s", len(values), _provenance(spec))
    return MomentTable(spec, values, provenance=_provenance(spec))


def _check_gate(spec, depth):
    if spec.family not in {"laguerre", "jacobi"}:
        raise UnsupportedFamilyError("Negative moments diverge for the Gaussian ensembles")
    a = spec.param("a")
    if depth >= a + 1:
        raise DivergentMomentError(f"m_{-depth} diverges for a = {a} (need {depth} < a + 1)")


def _backward(spec, depth):
    op, _ = catalog_pair(spec)
    rec = moment_recurrence_from_ode(op, source=_provenance(spec))
    reach = rec.span * rec.step
    values = _forward(spec, reach)
    for target in range(-1, -depth - 1, -1):
        values[target] = rec.solve_backward(values, target + reach)
    return values


def moments_negative(spec, k_min):
    """
    Extend the moments to negative indices with the downward recurrence.

    Args:
        spec (EnsembleSpec): A numeric Laguerre or Jacobi ensemble.
        k_min (int): The most negative index wanted.

    Returns:
        MomentTable: Values for ``k_min <= k`` up to the seeds used.

    Raises:
        DivergentMomentError: If ``|k_min| >= a + 1``.
        UnsupportedFamilyError: For the Gaussian ensembles.
    """
    depth = abs(k_min)
    _check_gate(spec, depth)
    values = _with_fallback(_backward, spec, depth)
    return MomentTable(spec, values, provenance=f"{_provenance(spec)}-downward")


def laguerre_reciprocity(spec, k):
    """
    The predicted ``m_{-k-1}`` of the LUE from ``m_k``.

    Args:
        spec (EnsembleSpec): A numeric Laguerre ``beta = 2`` ensemble.
        k (int): Non-negative index.

    Returns:
        Fraction: ``prod_{j=-k}^{k} 1/(a-j) * m_k``.

    Raises:
        UnsupportedFamilyError: For other ensembles.
    """
    if spec.family != "laguerre" or spec.beta != 2:
        raise UnsupportedFamilyError("The reciprocity law is stated for the LUE")
    a = spec.param("a")
    factor = Fraction(1)
    for j in range(-k, k + 1):
        factor /= a - j
    return factor * moments_exact(spec, k)[k]


def jacobi_difference_reciprocity(spec, k):
    """
    The predicted ``m_{-k-1} - m_{-k}`` of the JUE from ``m_k - m_{k+1}``.

    Args:
        spec (EnsembleSpec): A numeric Jacobi ``beta = 2`` ensemble.
        k (int): Non-negative index.

    Returns:
        Fraction: ``prod_{j=-k}^{k} (a+b+2N-j)/(a-j) * (m_k - m_{k+1})``.

    Raises:
        UnsupportedFamilyError: For other ensembles.
    """
    if spec.family != "jacobi" or spec.beta != 2:
        raise UnsupportedFamilyError("The difference reciprocity law is stated for the JUE")
    a, b, n = spec.param("a"), spec.param("b"), spec.n_value()
    factor = Fraction(1)
    for j in range(-k, k + 1):
        factor *= (a + b + 2 * n - j) / (a - j)
    return factor * moments_exact(spec, k + 1).difference(k)


def _polynomial_coeffs(value, k):
    if not getattr(value, "is_ratfun", False):
        return [value]
    if not value.is_polynomial():
        raise StructureMismatchError(f"m_{k} is not a polynomial in N: {value}")
    return list(value.num.coeffs)


def coeff_table(spec, k_max, l_max):
    """
    Expansion coefficients ``M[k, l]`` of the moments in powers of ``N``.

    Args:
        spec (EnsembleSpec): A symbolic specification (``n`` is ``None``);
            ``a`` and ``b`` may be :py:class:`~specden.diffop.Scaled`.
        k_max (int): Largest ``k``. For the Gaussian family ``k`` indexes ``m_{2k}``.
        l_max (int): Largest ``l``.

    Returns:
        CoeffTable: The coefficients.

    Raises:
        InvalidSpecError: If ``spec`` is numeric.
        TruncationTooShortError: If ``l_max`` is negative.
    """
    if not spec.symbolic:
        raise InvalidSpecError("Coefficient tables need N symbolic")
    if l_max < 0:
        raise TruncationTooShortError("l_max must be non-negative")
    entries = {}
    if spec.family == "gaussian":
        table = moments_exact(spec, 2 * k_max)
        for k in range(k_max + 1):
            coeffs = _polynomial_coeffs(table[2 * k], 2 * k)
            for l in range(min(k, l_max) + 1):
                power = k - l + 1
                if power < len(coeffs):
                    entries[(k, l)] = coeffs[power]
    elif spec.family == "laguerre":
        table = moments_exact(spec, k_max)
        for k in range(k_max + 1):
            coeffs = _polynomial_coeffs(table[k], k)
            for l in range(min(k, l_max) + 1):
                power = k - l + 1
                if power < len(coeffs):
                    entries[(k, l)] = coeffs[power]
    else:
        table = moments_exact(spec, k_max)
        guard = config["moments"]["guard_terms"]
        for k in range(k_max + 1):
            value = table[k]
            top, series = value.laurent(l_max + 2 + guard)
            if top is None:
                continue
            if top > 1:
                raise StructureMismatchError(f"m_{k} grows like N^{top}")
            for l in range(l_max + 1):
                r = top - 1 + l
                if 0 <= r < len(series):
                    entries[(k, l)] = series[r]
    log.debug("Built %s coefficient table to k=%d, l=%d", spec.family, k_max, l_max)
    return CoeffTable(spec, entries, k_max, l_max)

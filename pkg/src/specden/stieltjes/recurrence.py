"""
Linear moment recurrences read off a density operator.

Multiplying ``D rho = 0`` by ``x**K`` and integrating by parts turns every
term ``c * x**j * d^i`` into ``c * (-1)**i * (K + j)_i * m_{K+j-i}``, where
``(y)_i`` is the falling factorial. Indexing the relation by its largest
moment index ``k = K + S`` (``S`` the largest degree shift ``j - i``) gives

    ``sum_l c_l(k) * m_{k - l*step} = 0``.
"""

import math
import logging
from fractions import Fraction

from specden.exactq import PolyQ
from specden.errors import (
    SingularSystemError,
    StructureMismatchError,
    InsufficientMomentsError,
)

log = logging.getLogger(__name__)


def falling(value, n):
    """
    The falling factorial ``value * (value - 1) * ... * (value - n + 1)``.

    Args:
        value (int or Fraction): The base.
        n (int): Number of factors; ``0`` gives ``1``.

    Returns:
        int or Fraction: The product.
    """
    out = 1
    for i in range(n):
        out *= value - i
    return out


class Recurrence:
    """
    The relation ``sum_{l=0}^{span} c_l(k) m_{k - l*step} = 0``.

    Coefficients are evaluated lazily at integer ``k``; they are exact
    rationals, or rational functions of ``N`` when the operator is symbolic.
    """

    def __init__(self, terms, top, step, source=""):
        """
        Group operator terms by lag.

        Args:
            terms (list): ``(i, j, c)`` triples of the operator.
            top (int): The largest shift ``S``.
            step (int): Moment index stride.
            source (str): Free-form provenance label.
        """
        self.top = top
        self.step = step
        self.source = source
        self._lags = {}
        for i, j, c in terms:
            lag = (top - (j - i)) // step
            self._lags.setdefault(lag, []).append((i, j, c))
        self.span = max(self._lags, default=0)

    def coeff(self, lag, k):
        """
        Evaluate ``c_lag(k)``.

        Args:
            lag (int): Lag ``l`` in ``0..span``.
            k (int): The top moment index.

        Returns:
            object: The exact coefficient.
        """
        total = Fraction(0)
        for i, j, c in self._lags.get(lag, ()):
            total = total + c * ((-1) ** i * falling(k - self.top + j, i))
        return total

    def coefficients(self, k):
        return [self.coeff(lag, k) for lag in range(self.span + 1)]

    def polynomial(self, lag):
        """
        ``c_lag`` as a polynomial in ``k``.

        Args:
            lag (int): Lag ``l`` in ``0..span``.

        Returns:
            PolyQ: The coefficient, with coefficients in ``Q`` or ``Q(N)``.
        """
        total = PolyQ()
        for i, j, c in self._lags.get(lag, ()):
            base = PolyQ((j - self.top, 1))
            term = PolyQ((1,))
            for r in range(i):
                term = term * (base - r)
            total = total + term * (c * (-1) ** i)
        return total

    def render(self, var="k"):
        """
        The recurrence as text, one coefficient per lag.

        Args:
            var (str): Name of the top index.

        Returns:
            str: For example ``"[k + 1]*m[k] + [-2*k + 1]*m[k-1]"``.
        """
        parts = []
        for lag in range(self.span + 1):
            poly = self.polynomial(lag)
            if poly.is_zero():
                continue
            shift = lag * self.step
            index = var if shift == 0 else f"{var}-{shift}"
            parts.append(f"[{poly.render(var)}]*m[{index}]")
        return " + ".join(parts) or "0"

    def indices(self, k):
        return [k - lag * self.step for lag in range(self.span + 1)]

    def zero_sum(self, k):
        """
        The sum of all coefficients at ``k``.

        It vanishes identically exactly when the relation can be rewritten
        in the differences ``m_k - m_{k+1}``.

        Args:
            k (int): The top moment index.

        Returns:
            object: ``sum_l c_l(k)``.
        """
        total = Fraction(0)
        for c in self.coefficients(k):
            total = total + c
        return total

    def residual(self, values, k):
        """
        Evaluate the relation against known moments.

        Args:
            values (dict): Moment index -> value.
            k (int): The top moment index.

        Returns:
            object: ``sum_l c_l(k) m_{k - l*step}``; zero when satisfied.

        Raises:
            InsufficientMomentsError: If a moment with nonzero coefficient is missing.
        """
        total = Fraction(0)
        for c, idx in zip(self.coefficients(k), self.indices(k)):
            if not c:
                continue
            if idx not in values:
                raise InsufficientMomentsError(f"m_{idx} is needed at k = {k}")
            total = total + c * values[idx]
        return total

    def _solve_for(self, values, k, lag):
        coeffs = self.coefficients(k)
        pivot = coeffs[lag]
        if not pivot:
            raise SingularSystemError(f"Recurrence pivot c_{lag}({k}) vanishes")
        rest = Fraction(0)
        for other, (c, idx) in enumerate(zip(coeffs, self.indices(k))):
            if other == lag or not c:
                continue
            if idx not in values:
                raise InsufficientMomentsError(f"m_{idx} is needed at k = {k}")
            rest = rest + c * values[idx]
        return -rest / pivot

    def solve_forward(self, values, k):
        """
        Solve the relation at top index ``k`` for ``m_k``.

        Args:
            values (dict): Known moments.
            k (int): The top moment index.

        Returns:
            object: ``m_k``.

        Raises:
            SingularSystemError: If ``c_0(k)`` vanishes.
            InsufficientMomentsError: If a lower moment is missing.
        """
        return self._solve_for(values, k, 0)

    def solve_backward(self, values, k):
        """
        Solve the relation at top index ``k`` for its lowest moment.

        Args:
            values (dict): Known moments.
            k (int): The top moment index; the result is ``m_{k - span*step}``.

        Returns:
            object: The lowest moment of the relation.

        Raises:
            SingularSystemError: If ``c_span(k)`` vanishes.
            InsufficientMomentsError: If a higher moment is missing.
        """
        return self._solve_for(values, k, self.span)

    def __repr__(self):
        return f"Recurrence(span={self.span}, step={self.step}, top={self.top}, source={self.source!r})"


def moment_recurrence_from_ode(op, step_hint=None, source=""):
    """
    Derive the moment recurrence of a density operator.

    Boundary terms are assumed to vanish, which holds for the catalog
    operators whenever the moments involved converge.

    Args:
        op (DiffOp): The density operator.
        step_hint (int, optional): Force the index stride. By default the
            stride is the gcd of all shift differences (``2`` for even
            Gaussian densities).
        source (str): Provenance label stored on the result.

    Returns:
        Recurrence: The recurrence.

    Raises:
        StructureMismatchError: If the operator is zero or ``step_hint`` does not
            divide the shift differences.
    """
    terms = list(op.terms())
    if not terms:
        raise StructureMismatchError("The zero operator has no moment recurrence")
    top = max(j - i for i, j, _ in terms)
    gaps = {top - (j - i) for i, j, _ in terms}
    step = 0
    for gap in gaps:
        step = math.gcd(step, gap)
    step = step or 1
    if step_hint is not None:
        if step % step_hint:
            raise StructureMismatchError(f"Stride {step_hint} does not divide the shift gaps {sorted(gaps)}")
        step = step_hint
    rec = Recurrence(terms, top, step, source=source)
    log.debug("Derived recurrence with span %d, step %d, top shift %d", rec.span, step, top)
    return rec

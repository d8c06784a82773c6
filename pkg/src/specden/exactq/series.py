"""
Truncated Laurent series in ``1/x``.

An :py:class:`InvXSeries` stores exact coefficients for every exponent
``e >= -order``; coefficients below ``x**(-order)`` are unknown. The order
travels with every result so truncation is never silent.
"""

import logging
from fractions import Fraction

from specden.errors import TruncationTooShortError, InsufficientMomentsError
from specden.exactq.polyq import PolyQ, as_scalar

log = logging.getLogger(__name__)


class InvXSeries:
    """
    A series ``sum(c_e * x**e)`` known exactly for all ``e >= -order``.
    """

    __slots__ = ("_order", "_terms")

    def __init__(self, terms, order):
        """
        Build the series.

        Args:
            terms (dict): Mapping exponent -> coefficient. Entries below
                ``-order`` are discarded.
            order (int): The truncation order ``J``.
        """
        self._order = order
        self._terms = {}
        for e, c in terms.items():
            c = as_scalar(c)
            if e >= -order and c != 0:
                self._terms[e] = c

    @classmethod
    def zero(cls, order):
        return cls({}, order)

    @classmethod
    def from_poly(cls, poly, order):
        """
        Embed a polynomial.

        Args:
            poly (PolyQ): The polynomial.
            order (int): Truncation order of the result.

        Returns:
            InvXSeries: The polynomial as an exact series.
        """
        return cls(dict(enumerate(poly.coeffs)), order)

    @property
    def order(self):
        return self._order

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def coeffs(self):
        """
        Coefficients of ``x**(-j)`` for ``0 <= j <= order``.

        Returns:
            dict: ``j -> coefficient`` (zero entries omitted).
        """
        return {-e: c for e, c in self._terms.items() if e <= 0}

    @property
    def head(self):
        """
        The strictly positive powers, as a polynomial with zero constant term.

        Returns:
            PolyQ: The polynomial head.
        """
        top = max((e for e in self._terms if e > 0), default=0)
        return PolyQ(self._terms.get(e, 0) if e > 0 else 0 for e in range(top + 1))

    def polynomial_part(self):
        top = max((e for e in self._terms if e >= 0), default=-1)
        return PolyQ(self._terms.get(e, 0) for e in range(top + 1))

    def top_exponent(self):
        return max(self._terms, default=None)

    def coefficient(self, exponent):
        """
        Coefficient of ``x**exponent``.

        Args:
            exponent (int): The exponent.

        Returns:
            object: The exact coefficient.

        Raises:
            TruncationTooShortError: If the exponent is below the truncation order.
        """
        if exponent < -self._order:
            raise TruncationTooShortError(
                f"x^{exponent} is beyond the truncation order {self._order}"
            )
        return self._terms.get(exponent, Fraction(0))

    def moments(self, count=None):
        """
        Read back ``m_k`` from ``sum(m_k * x**(-k-1))``.

        Args:
            count (int, optional): Number of moments. Defaults to ``order``.

        Returns:
            list: ``[m_0, ..., m_{count-1}]``.
        """
        count = self._order if count is None else count
        return [self.coefficient(-k - 1) for k in range(count)]

    def truncate(self, order):
        if order > self._order:
            raise TruncationTooShortError(
                f"Cannot extend a series of order {self._order} to {order}"
            )
        return InvXSeries(self._terms, order)

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        if isinstance(other, PolyQ):
            other = InvXSeries.from_poly(other, self._order)
        order = min(self._order, other._order)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return InvXSeries(out, order)

    __radd__ = __add__

    def __neg__(self):
        return InvXSeries({e: -c for e, c in self._terms.items()}, self._order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """
        Multiply by a scalar or a polynomial.

        A polynomial of degree ``d`` lowers the truncation order by ``d``.

        Args:
            other (object): Scalar or :py:class:`PolyQ`.

        Returns:
            InvXSeries: The product.
        """
        if isinstance(other, InvXSeries):
            return NotImplemented
        if not isinstance(other, PolyQ):
            other = as_scalar(other)
            return InvXSeries({e: c * other for e, c in self._terms.items()}, self._order)
        if other.is_zero():
            return InvXSeries({}, self._order)
        out = {}
        for i, p in enumerate(other.coeffs):
            if p == 0:
                continue
            for e, c in self._terms.items():
                out[e + i] = out.get(e + i, 0) + p * c
        return InvXSeries(out, self._order - other.degree)

    __rmul__ = __mul__

    def derivative(self):
        return InvXSeries(
            {e - 1: e * c for e, c in self._terms.items() if e != 0}, self._order + 1
        )

    def map_coeffs(self, fn):
        return InvXSeries({e: fn(c) for e, c in self._terms.items()}, self._order)

    def __eq__(self, other):
        if not isinstance(other, InvXSeries):
            return NotImplemented
        return self._order == other._order and self._terms == other._terms

    def __hash__(self):
        return hash((self._order, tuple(sorted(self._terms.items()))))

    def to_strings(self):
        """
        Serializable form.

        Returns:
            dict: ``{"order": J, "terms": {"exponent": "p/q"}}``.
        """
        return {
            "order": self._order,
            "terms": {str(e): str(c) for e, c in sorted(self._terms.items())},
        }

    @classmethod
    def from_strings(cls, data):
        return cls({int(e): Fraction(c) for e, c in data["terms"].items()}, data["order"])

    def __repr__(self):
        body = " + ".join(f"({c})x^{e}" for e, c in sorted(self._terms.items(), reverse=True))
        return f"InvXSeries({body or '0'}; O(x^{-self._order - 1}))"


def series_from_moments(moments, order):
    """
    Build ``W = sum_{k < order} m_k x**(-k-1)``.

    Args:
        moments (list): At least ``order`` exact moments ``m_0, m_1, ...``.
        order (int): The truncation order ``J``.

    Returns:
        InvXSeries: The resolvent series.

    Raises:
        InsufficientMomentsError: If fewer than ``order`` moments are given.
    """
    if len(moments) < order:
        raise InsufficientMomentsError(
            f"Need {order} moments for a series of order {order}, got {len(moments)}"
        )
    return InvXSeries({-k - 1: moments[k] for k in range(order)}, order)


def series_apply_diffop(op, series):
    """
    Apply ``sum_i p_i(x) d^i/dx^i`` term by term.

    The output order is ``min_i(J + i - deg p_i)``.

    Args:
        op (DiffOp): Any object exposing ``coeffs`` (a list of :py:class:`PolyQ`).
        series (InvXSeries): The operand.

    Returns:
        InvXSeries: ``op(series)`` with its truncation order recorded.

    Raises:
        TruncationTooShortError: If no output coefficient is determined.
    """
    result = None
    deriv = series
    tops = []
    for i, p in enumerate(op.coeffs):
        if i:
            deriv = deriv.derivative()
        if p.is_zero():
            continue
        term = deriv * p
        top = series.top_exponent()
        if top is not None:
            tops.append(top - i + p.degree)
        result = term if result is None else result + term
    if result is None:
        return InvXSeries({}, series.order)
    top_out = max(tops, default=None)
    if top_out is not None and -result.order > top_out:
        raise TruncationTooShortError(
            f"Series of order {series.order} yields no valid term under an operator "
            f"of order {len(op.coeffs) - 1}"
        )
    log.debug("Applied operator: order %d -> %d", series.order, result.order)
    return result

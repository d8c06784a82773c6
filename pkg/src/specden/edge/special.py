"""
Airy and Bessel closed forms of the edge densities.

These are the oracles for the edge solvers:

* ``beta = 2`` soft edge: ``Ai'(x)**2 - x*Ai(x)**2``,
* ``beta = 1`` soft edge: the same plus ``Ai(x)*(1 - int_x^inf Ai)/2``,
* ``beta = 2`` hard edge: ``(J_a**2 + J_{a+1}**2 - (2a/z)*J_a*J_{a+1})/4``
  with ``z = sqrt(x)``.

The soft edge forms are polynomials in ``Ai``, ``Ai'`` and
``I = 1 - int_x^inf Ai`` with polynomial coefficients in ``x``; their
derivatives follow exactly from ``Ai'' = x*Ai`` and ``I' = Ai``.
"""

import logging
from fractions import Fraction

import numpy as np
from scipy import special

from specden.errors import DomainExceededError
from specden.exactq import PolyQ
from specden.oracle.residual import poly_values

log = logging.getLogger(__name__)

AIRY_LIMIT = 12.0


def _airy_domain(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > AIRY_LIMIT):
        raise DomainExceededError(f"Airy functions are evaluated for |x| <= {AIRY_LIMIT}")
    return x


def airy(x):
    """
    The Airy function ``Ai``.

    Args:
        x (array_like): Points with ``|x| <= 12``.

    Returns:
        numpy.ndarray: ``Ai(x)``.

    Raises:
        DomainExceededError: Outside ``[-12, 12]``.
    """
    return special.airy(_airy_domain(x))[0]


def besselj(nu, x):
    """
    The Bessel function ``J_nu``.

    Args:
        nu (float): The order, ``nu > -1``.
        x (array_like): Non-negative points.

    Returns:
        numpy.ndarray: ``J_nu(x)``.

    Raises:
        DomainExceededError: For ``nu <= -1`` or negative ``x``.
    """
    x = np.asarray(x, dtype=float)
    if nu <= -1:
        raise DomainExceededError("Bessel functions are evaluated for nu > -1")
    if np.any(x < 0):
        raise DomainExceededError("Bessel functions are evaluated for x >= 0")
    return special.jv(float(nu), x)


class AiryForm:
    """
    A sum of terms ``c(x) * Ai**p * Ai'**q * I**r``.

    Stored as a mapping ``(p, q, r) -> PolyQ``.
    """

    def __init__(self, terms):
        self.terms = {key: c for key, c in terms.items() if not c.is_zero()}

    def derivative(self):
        x = PolyQ.x()
        out = {}

        def add(key, c):
            out[key] = out.get(key, PolyQ()) + c

        for (p, q, r), c in self.terms.items():
            add((p, q, r), c.derivative())
            if p:
                add((p - 1, q + 1, r), c * p)
            if q:
                add((p + 1, q - 1, r), c * x * q)
            if r:
                add((p + 1, q, r - 1), c * r)
        return AiryForm(out)

    def values(self, x, ai, aip, integral):
        total = np.zeros_like(x)
        for (p, q, r), c in self.terms.items():
            total = total + poly_values(c, x) * ai**p * aip**q * integral**r
        return total


def _integral(x):
    # 1 - int_x^inf Ai, using int_0^inf Ai = 1/3
    pos, _, neg, _ = special.itairy(np.abs(x))
    return np.where(x >= 0, 2.0 / 3.0 + pos, 2.0 / 3.0 - neg)


def _form_evaluator(form):
    def evaluate(x, order):
        x = _airy_domain(x)
        ai, aip, _, _ = special.airy(x)
        integral = _integral(x)
        rows = []
        current = form
        for _ in range(order + 1):
            rows.append(current.values(x, ai, aip, integral))
            current = current.derivative()
        return np.array(rows)

    return evaluate


AIRY_DENSITY = AiryForm({(0, 2, 0): PolyQ((1,)), (2, 0, 0): -PolyQ.x()})
GOE_SOFT_DENSITY = AiryForm(
    {
        (0, 2, 0): PolyQ((1,)),
        (2, 0, 0): -PolyQ.x(),
        (1, 0, 1): PolyQ((Fraction(1, 2),)),
    }
)

airy_density_derivatives = _form_evaluator(AIRY_DENSITY)
goe_soft_density_derivatives = _form_evaluator(GOE_SOFT_DENSITY)


def airy_density(x):
    """
    The ``beta = 2`` soft edge density ``Ai'(x)**2 - x*Ai(x)**2``.

    Args:
        x (array_like): Points with ``|x| <= 12``.

    Returns:
        numpy.ndarray: The density.
    """
    return airy_density_derivatives(x, 0)[0]


def goe_soft_density(x):
    """
    The ``beta = 1`` soft edge density.

    Args:
        x (array_like): Points with ``|x| <= 12``.

    Returns:
        numpy.ndarray: ``Ai'**2 - x*Ai**2 + Ai*(1 - int_x^inf Ai)/2``.
    """
    return goe_soft_density_derivatives(x, 0)[0]


def bessel_density(a, x):
    """
    The ``beta = 2`` hard edge density for the exponent ``a``.

    Args:
        a (float): The exponent, ``a > -1``.
        x (array_like): Positive points.

    Returns:
        numpy.ndarray: The density.
    """
    x = np.asarray(x, dtype=float)
    z = np.sqrt(x)
    ja = besselj(a, z)
    jb = besselj(a + 1, z)
    return (ja * ja + jb * jb - 2 * float(a) / z * ja * jb) / 4

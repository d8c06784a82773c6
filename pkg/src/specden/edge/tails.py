"""
Local solutions of the edge operators.

Soft edge: decaying solutions ``exp(-2*lam*x**1.5/3) * sum_j c_j x**(-p - 3j/2)``
at ``x -> +inf``. Conjugating the operator by the exponential turns every
term ``x**j d^i`` into ``x**j (d - lam*sqrt(x))**i``, which maps powers
``x**(-q + o)`` to powers, so the transport equations reduce to exact
polynomials in ``q``.

Hard edge: Frobenius series ``x**r * sum_n c_n x**n`` at the regular
singular point ``x = 0``.
"""

import logging
import dataclasses
from fractions import Fraction

import numpy as np
import sympy
from scipy import special

from specden.errors import StructureMismatchError
from specden.exactq import PolyQ

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)
STEP = Fraction(3, 2)


def _rational_roots(poly):
    """
    Rational roots of an exact polynomial.

    Args:
        poly (PolyQ): The polynomial.

    Returns:
        dict: ``root -> multiplicity`` with :py:class:`~fractions.Fraction` keys.
    """
    var = sympy.Symbol("r")
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)]
    found = sympy.roots(sympy.Poly(coeffs, var), filter="Q")
    return {Fraction(int(r.p), int(r.q)): m for r, m in found.items()}


def _falling(i):
    out = PolyQ((1,))
    for k in range(i):
        out = out * PolyQ((-k, 1))
    return out


def conjugated_power(i, lam):
    """
    Apply ``(d - lam*sqrt(x))**i`` to ``x**(-q)``.

    Args:
        i (int): The derivative order.
        lam (Fraction): The exponential rate.

    Returns:
        dict: ``offset -> PolyQ`` in ``q``; the result is
        ``sum c(q) * x**(-q + offset)``.
    """
    terms = {Fraction(0): PolyQ((1,))}
    for _ in range(i):
        nxt = {}
        for off, c in terms.items():
            down = off - 1
            nxt[down] = nxt.get(down, PolyQ()) + c * PolyQ((off, -1))
            up = off + HALF
            nxt[up] = nxt.get(up, PolyQ()) - c * lam
        terms = {k: v for k, v in nxt.items() if not v.is_zero()}
    return terms


def _top_offset(op):
    return max(Fraction(j) + Fraction(i, 2) for i, j, _ in op.terms())


def decay_rates(op):
    """
    Positive rational ``lam`` with ``exp(-2*lam*x**1.5/3)`` solving ``op`` at leading order.

    Args:
        op (DiffOp): A soft edge operator.

    Returns:
        list: Sorted rates.
    """
    top = _top_offset(op)
    chi = PolyQ()
    for i, j, c in op.terms():
        if Fraction(j) + Fraction(i, 2) == top:
            chi = chi + PolyQ.monomial(c * (-1) ** i, i)
    return sorted(r for r in _rational_roots(chi) if r > 0)


@dataclasses.dataclass(frozen=True)
class SoftTail:
    """
    A decaying asymptotic solution.

    Attributes:
        rate (Fraction): ``lam``.
        exponent (Fraction): ``p``.
        coeffs (tuple): ``c_0 = 1, c_1, ...``.
    """

    rate: Fraction
    exponent: Fraction
    coeffs: tuple

    def phase(self, x):
        """The exponent ``-2*lam*x**1.5/3``."""
        return -2.0 * float(self.rate) * float(x) ** 1.5 / 3.0

    def seed(self, x0, order):
        """
        Values and derivatives with the exponential divided out at ``x0``.

        Args:
            x0 (float): The seed point.
            order (int): Number of rows.

        Returns:
            numpy.ndarray: ``[f(x0), f'(x0), ...]`` for
            ``f(x) = exp(phase(x) - phase(x0)) * sum_j c_j x**(-q_j)``.
        """
        rows = np.zeros(order)
        for i in range(order):
            conj = conjugated_power(i, self.rate)
            total = 0.0
            for j, c in enumerate(self.coeffs):
                q = self.exponent + STEP * j
                for off, poly in conj.items():
                    total += float(c * poly(q)) * x0 ** float(off - q)
            rows[i] = total
        return rows

    def last_term(self, x0):
        j = len(self.coeffs) - 1
        return abs(float(self.coeffs[-1])) * x0 ** float(-STEP * j)


def soft_tail(op, rate, terms):
    """
    The asymptotic series of the decaying solution with the given rate.

    Args:
        op (DiffOp): A soft edge operator.
        rate (Fraction): One of :py:func:`decay_rates`.
        terms (int): Number of series coefficients.

    Returns:
        SoftTail: The series.

    Raises:
        StructureMismatchError: If the operator does not have the graded
            structure of a soft edge operator at this rate.
    """
    top = _top_offset(op)
    graded = {}
    for i, j, c in op.terms():
        for off, poly in conjugated_power(i, rate).items():
            key = off + j
            graded[key] = graded.get(key, PolyQ()) + poly * c
    levels = {}
    for off, poly in graded.items():
        if poly.is_zero():
            continue
        m = (top - off) / STEP
        if m.denominator != 1:
            raise StructureMismatchError(f"Offset {off} is off the x^(-3/2) lattice")
        levels[int(m)] = poly
    if 0 in levels:
        raise StructureMismatchError(f"Rate {rate} does not solve the characteristic equation")
    transport = levels.get(1, PolyQ())
    if transport.degree != 1:
        raise StructureMismatchError("The transport equation is not linear in the exponent")
    p = -transport.coefficient(0) / transport.coefficient(1)
    coeffs = [Fraction(1)]
    for n in range(1, terms):
        acc = Fraction(0)
        for m in range(2, n + 2):
            if m in levels:
                acc += coeffs[n + 1 - m] * levels[m](p + STEP * (n + 1 - m))
        coeffs.append(-acc / transport(p + STEP * n))
    log.debug("Soft tail at rate %s has exponent %s", rate, p)
    return SoftTail(rate, p, tuple(coeffs))


def soft_tail_amplitude(kappa):
    """
    ``Gamma(1 + kappa) / (pi * (8*kappa)**kappa)``.

    Args:
        kappa (Fraction): ``beta/2``.

    Returns:
        float: The amplitude of the physical decaying tail.
    """
    k = float(kappa)
    return float(special.gamma(1 + k)) / (np.pi * (8 * k) ** k)


def indicial_parts(op):
    """
    Group an operator with a regular singular point at zero by degree shift.

    Args:
        op (DiffOp): An operator whose terms ``x**j d^i`` all have ``j >= i``.

    Returns:
        list: ``I_s`` as :py:class:`PolyQ` in ``r`` with
        ``op x**r = sum_s I_s(r) x**(r + s)``.

    Raises:
        StructureMismatchError: If some term lowers the degree.
    """
    parts = {}
    for i, j, c in op.terms():
        if j < i:
            raise StructureMismatchError("The operator is not regular singular at zero")
        parts[j - i] = parts.get(j - i, PolyQ()) + _falling(i) * c
    return [parts.get(s, PolyQ()) for s in range(max(parts) + 1)]


@dataclasses.dataclass(frozen=True)
class Frobenius:
    """
    ``x**r * sum_n c_n x**n``.

    Attributes:
        root (Fraction): The indicial root ``r``.
        coeffs (tuple): ``c_0 = 1, c_1, ...``.
    """

    root: Fraction
    coeffs: tuple

    def rows(self, x, order):
        """
        The series and its derivatives.

        Args:
            x (numpy.ndarray): Positive points.
            order (int): Highest derivative.

        Returns:
            numpy.ndarray: Shape ``(order + 1, len(x))``.
        """
        x = np.asarray(x, dtype=float)
        out = np.zeros((order + 1, len(x)))
        for i in range(order + 1):
            ff = _falling(i)
            for n, c in enumerate(self.coeffs):
                if c == 0:
                    continue
                e = self.root + n
                out[i] += float(c * ff(e)) * x ** float(e - i)
        return out

    def last_term(self, x):
        n = len(self.coeffs) - 1
        return abs(float(self.coeffs[-1])) * x ** float(self.root + n)


def frobenius_series(parts, root, terms):
    """
    The Frobenius series at one indicial root.

    Where a larger root sits an integer above ``root`` and the recurrence is
    consistent, the free coefficient is set to zero; that solution is
    generated from the larger root itself.

    Args:
        parts (list): :py:func:`indicial_parts` of the operator.
        root (Fraction): A root of ``parts[0]``.
        terms (int): Number of coefficients.

    Returns:
        Frobenius: The series, or :py:data:`None` if a logarithm is needed.
    """
    coeffs = [Fraction(1)]
    for n in range(1, terms):
        rhs = Fraction(0)
        for s in range(1, min(n, len(parts) - 1) + 1):
            rhs -= parts[s](root + n - s) * coeffs[n - s]
        den = parts[0](root + n)
        if den == 0:
            if rhs != 0:
                log.info("Root %s needs a logarithmic term at order %d", root, n)
                return None
            coeffs.append(Fraction(0))
            continue
        coeffs.append(rhs / den)
    return Frobenius(root, tuple(coeffs))


def admissible_roots(parts, a, beta):
    """
    Indicial roots of the branches a physical hard edge density may contain.

    The density behaves as ``x**a`` at the origin. For ``beta = 2`` it is
    exactly the ``x**a`` series; otherwise every rational root ``r >= a`` is
    admitted and the combination is fixed at large ``x``.

    Args:
        parts (list): :py:func:`indicial_parts` of the operator.
        a (Fraction): The exponent.
        beta (Fraction): The Dyson index.

    Returns:
        list: Sorted roots.

    Raises:
        StructureMismatchError: If ``a`` is not an indicial root.
    """
    roots = _rational_roots(parts[0])
    if a not in roots:
        raise StructureMismatchError(f"x^{a} is not an indicial branch")
    if beta == 2:
        return [a]
    return sorted(r for r in roots if r >= a)

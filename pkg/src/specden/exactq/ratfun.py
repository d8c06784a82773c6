"""
Rational functions of the matrix size ``N`` with rational coefficients.

A :py:class:`RatFun` is kept in canonical form: numerator and denominator
are coprime and the denominator is monic, so equality is a field-wise
comparison.
"""

from fractions import Fraction

from specden.errors import ZeroDenominatorError
from specden.exactq.polyq import PolyQ, poly_gcd, as_scalar


def ratfun_normalize(num, den):
    """
    Reduce ``num/den`` to canonical form.

    Args:
        num (PolyQ): Numerator.
        den (PolyQ): Denominator.

    Returns:
        RatFun: The reduced rational function.

    Raises:
        ZeroDenominatorError: If ``den`` is the zero polynomial.
    """
    return RatFun(num, den)


class RatFun:
    """
    A canonical quotient of two :py:class:`PolyQ` in the variable ``N``.
    """

    __slots__ = ("_den", "_num")
    is_ratfun = True

    def __init__(self, num, den=None, _reduced=False):
        """
        Build and normalize the quotient.

        Args:
            num (PolyQ, Fraction, int): Numerator; scalars become constants.
            den (PolyQ, Fraction, int, optional): Denominator. Defaults to ``1``.
            _reduced (bool): Skip the gcd when the caller guarantees coprimality.

        Raises:
            ZeroDenominatorError: If the denominator is zero.
        """
        if not isinstance(num, PolyQ):
            num = PolyQ((num,))
        if den is None:
            den = PolyQ((1,))
        elif not isinstance(den, PolyQ):
            den = PolyQ((den,))
        if den.is_zero():
            raise ZeroDenominatorError(f"Rational function {num.render('N')}/0")
        if num.is_zero():
            self._num, self._den = PolyQ(), PolyQ((1,))
            return
        if den.degree > 0 and not _reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.leading
        if lead != 1:
            num, den = num / lead, den / lead
        self._num, self._den = num, den

    @classmethod
    def n(cls):
        """
        The variable ``N``.

        Returns:
            RatFun: ``N``.
        """
        return cls(PolyQ.x())

    @property
    def num(self):
        return self._num

    @property
    def den(self):
        return self._den

    def is_polynomial(self):
        return self._den.degree == 0

    def _lift(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, PolyQ):
            return NotImplemented
        other = as_scalar(other)
        if not isinstance(other, Fraction):
            return NotImplemented
        return RatFun(PolyQ((other,)), _reduced=True)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return RatFun(self._num + other._num, self._den)
        return RatFun(
            self._num * other._den + other._num * self._den, self._den * other._den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self._num, self._den, _reduced=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_polynomial() and other.is_polynomial():
            return RatFun(self._num * other._num, _reduced=True)
        return RatFun(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other._num.is_zero():
            raise ZeroDenominatorError("Division of a rational function by zero")
        return RatFun(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent):
        if exponent < 0:
            return RatFun(self._den, self._num) ** (-exponent)
        return RatFun(self._num**exponent, self._den**exponent, _reduced=True)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self.is_polynomial() and self._num.degree <= 0:
            return hash(self._num.leading)
        return hash((self._num, self._den))

    def __bool__(self):
        return not self._num.is_zero()

    def derivative(self):
        """
        Differentiate with the quotient rule.

        Returns:
            RatFun: The derivative.
        """
        num = self._num.derivative() * self._den - self._num * self._den.derivative()
        return RatFun(num, self._den * self._den)

    def evaluate(self, value):
        """
        Substitute a rational value for ``N``.

        Args:
            value (Fraction, int): The value of ``N``.

        Returns:
            Fraction: The exact value.

        Raises:
            ZeroDenominatorError: If the denominator vanishes at ``value``.
        """
        value = as_scalar(value)
        den = self._den(value)
        if den == 0:
            raise ZeroDenominatorError(f"Denominator vanishes at N = {value}")
        return self._num(value) / den

    def laurent(self, terms):
        """
        Expand in powers of ``1/N``.

        Writes the function as ``N**top * sum(c[r] * N**(-r))`` by exact power
        series division in ``u = 1/N``.

        Args:
            terms (int): Number of coefficients to produce.

        Returns:
            tuple: ``(top, [c_0, ..., c_{terms-1}])``; ``top`` is ``None`` for zero.
        """
        if self._num.is_zero():
            return None, [Fraction(0)] * terms
        num = list(reversed(self._num.coeffs))
        den = list(reversed(self._den.coeffs))
        out = []
        rem = num + [Fraction(0)] * terms
        for r in range(terms):
            c = rem[r] / den[0]
            out.append(c)
            if c != 0:
                for i, d in enumerate(den):
                    if r + i < len(rem):
                        rem[r + i] = rem[r + i] - c * d
        return self._num.degree - self._den.degree, out

    def to_strings(self):
        """
        Lossless text form.

        Returns:
            dict: ``{"num": [...], "den": [...]}`` with ``"p/q"`` coefficient strings.
        """
        return {"num": self._num.to_strings(), "den": self._den.to_strings()}

    @classmethod
    def from_strings(cls, data):
        return cls(PolyQ(data["num"]), PolyQ(data["den"]))

    def __str__(self):
        if self.is_polynomial():
            return self._num.render("N")
        return f"({self._num.render('N')})/({self._den.render('N')})"

    def __repr__(self):
        return f"RatFun({self})"

"""
Dense univariate polynomials over an exact field.

Coefficients are :py:class:`fractions.Fraction` for the field ``Q``, or
:py:class:`specden.exactq.ratfun.RatFun` for ``Q(N)``. Any other exact type
that supports the field operations and compares equal to ``0`` works too
(the Gaussian matrix systems use :py:class:`specden.diffop.systems.SqrtExt`).
"""

from fractions import Fraction

from specden.errors import ZeroDenominatorError


def as_scalar(value):
    """
    Coerce a Python number or ``"p/q"`` string into an exact scalar.

    Args:
        value (int, str, Fraction, object): The value to coerce. Exact
            objects other than :py:class:`int` and :py:class:`str` pass through.

    Returns:
        object: ``Fraction`` for rational input, otherwise ``value`` unchanged.

    Raises:
        TypeError: If ``value`` is a :py:class:`float`.
    """
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("Exact arithmetic does not accept binary64 values")
    return value


class PolyQ:
    """
    An immutable polynomial ``sum(coeffs[i] * x**i)``.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        """
        Build the polynomial, trimming trailing zero coefficients.

        Args:
            coeffs (iterable): Coefficients in ascending degree order.
        """
        trimmed = [as_scalar(c) for c in coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        self._coeffs = tuple(trimmed)

    @classmethod
    def x(cls):
        """
        The polynomial ``x``.

        Returns:
            PolyQ: ``x``.
        """
        return cls((0, 1))

    @classmethod
    def constant(cls, value):
        """
        A constant polynomial.

        Args:
            value (object): The constant.

        Returns:
            PolyQ: The constant polynomial.
        """
        return cls((value,))

    @classmethod
    def monomial(cls, coeff, degree):
        """
        The polynomial ``coeff * x**degree``.

        Args:
            coeff (object): Coefficient.
            degree (int): Non-negative exponent.

        Returns:
            PolyQ: The monomial.
        """
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1

    @property
    def leading(self):
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    @property
    def field(self):
        """
        The coefficient field tag.

        Returns:
            str: ``"Q(N)"`` if any coefficient is a rational function of ``N``,
            otherwise ``"Q"``.
        """
        if any(getattr(c, "is_ratfun", False) for c in self._coeffs):
            return "Q(N)"
        return "Q"

    def is_zero(self):
        return not self._coeffs

    def coefficient(self, i):
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def _lift(self, other):
        if isinstance(other, PolyQ):
            return other
        return PolyQ((other,))

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return PolyQ(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(-c for c in self._coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyQ):
            other = as_scalar(other)
            return PolyQ(c * other for c in self._coeffs)
        if not self._coeffs or not other._coeffs:
            return PolyQ()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyQ(out)

    def __rmul__(self, other):
        other = as_scalar(other)
        return PolyQ(other * c for c in self._coeffs)

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("Polynomials only support non-negative powers")
        result = PolyQ((1,))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDenominatorError("Polynomial division by zero")
        rem = list(self._coeffs)
        quot = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.leading
        while rem and len(rem) - 1 >= other.degree:
            shift = len(rem) - 1 - other.degree
            factor = rem[-1] / lead
            quot[shift] = factor
            for i, c in enumerate(other._coeffs):
                rem[shift + i] = rem[shift + i] - factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return PolyQ(quot), PolyQ(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, PolyQ):
            if other.degree > 0:
                raise TypeError("Use divmod or RatFun for division by a polynomial")
            other = other.leading if other._coeffs else Fraction(0)
        other = as_scalar(other)
        if other == 0:
            raise ZeroDenominatorError("Polynomial division by zero")
        return PolyQ(c / other for c in self._coeffs)

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self._coeffs == other._coeffs
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        if other == 0:
            return not self._coeffs
        return self._coeffs == (other,)

    def __hash__(self):
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __call__(self, value):
        """
        Evaluate with Horner's rule.

        Args:
            value (object): A scalar, a :py:class:`PolyQ` (composition) or
                a :py:class:`float`.

        Returns:
            object: ``p(value)``.
        """
        acc = PolyQ() if isinstance(value, PolyQ) else 0
        for c in reversed(self._coeffs):
            if isinstance(value, float):
                acc = acc * value + float(c)
            else:
                acc = acc * value + c
        if isinstance(acc, int) and not isinstance(value, float):
            acc = Fraction(acc)
        return acc

    def compose(self, other):
        return self(other)

    def derivative(self):
        return PolyQ(i * c for i, c in enumerate(self._coeffs) if i > 0)

    def map_coeffs(self, fn):
        return PolyQ(fn(c) for c in self._coeffs)

    def monic(self):
        if not self._coeffs:
            return self
        return self / self.leading

    def shift_degree(self, n):
        """
        Multiply by ``x**n``.

        Args:
            n (int): Non-negative shift.

        Returns:
            PolyQ: ``x**n * self``.
        """
        if not self._coeffs:
            return self
        return PolyQ([0] * n + list(self._coeffs))

    def valuation(self):
        """
        Return the largest ``m`` such that ``x**m`` divides the polynomial.

        Returns:
            int: The order of vanishing at zero (``-1`` for the zero polynomial).
        """
        for i, c in enumerate(self._coeffs):
            if c != 0:
                return i
        return -1

    def to_strings(self):
        return [str(c) for c in self._coeffs]

    def render(self, var="x"):
        """
        Human-readable text, highest power first.

        Args:
            var (str): Variable name.

        Returns:
            str: For example ``"2*x^2 - 1/2"``.
        """
        if not self._coeffs:
            return "0"
        out = ""
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            negative = isinstance(c, Fraction) and c < 0
            text = str(-c if negative else c)
            if " " in text:
                text = f"({text})"
            if i > 0:
                mono = var if i == 1 else f"{var}^{i}"
                text = mono if text == "1" else f"{text}*{mono}"
            if not out:
                out = f"-{text}" if negative else text
            else:
                out += f" - {text}" if negative else f" + {text}"
        return out

    def __repr__(self):
        return f"PolyQ({self.render()})"

    __str__ = render


def poly_gcd(a, b):
    """
    Monic greatest common divisor of two polynomials over a field.

    Args:
        a (PolyQ): First polynomial.
        b (PolyQ): Second polynomial.

    Returns:
        PolyQ: The monic gcd (zero only if both inputs are zero).
    """
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()

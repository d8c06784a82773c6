"""
Linear differential operators with polynomial coefficients.

A :py:class:`DiffOp` is ``sum(coeffs[i] * d^i/dx^i)`` where every
coefficient is a :py:class:`~specden.exactq.PolyQ`. Coefficients may live in
``Q`` or in ``Q(N)``; :py:meth:`DiffOp.at_n` instantiates the latter.
"""

import logging
import dataclasses
from fractions import Fraction
from math import comb

from specden.exactq import PolyQ, as_scalar
from specden.diffop.ensemble import WeightTag

log = logging.getLogger(__name__)


def _as_poly(value):
    if isinstance(value, PolyQ):
        return value
    return PolyQ((value,))


class DiffOp:
    """
    An operator ``sum_i p_i(x) d^i/dx^i``.

    The zero operator has no coefficients and order ``-1``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        """
        Build the operator, trimming vanishing top coefficients.

        Args:
            coeffs (iterable): Coefficients ``p_0, p_1, ...`` as
                :py:class:`PolyQ` or scalars.
        """
        cs = [_as_poly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def d(cls, k=1):
        """
        The operator ``d^k/dx^k``.

        Args:
            k (int): Derivative order.

        Returns:
            DiffOp: ``d^k``.
        """
        return cls([PolyQ()] * k + [PolyQ((1,))])

    @classmethod
    def from_terms(cls, terms):
        """
        Build from a mapping ``(i, j) -> c`` meaning ``c * x**j * d^i``.

        Args:
            terms (dict): Term coefficients.

        Returns:
            DiffOp: The operator.
        """
        order = max((i for i, _ in terms), default=-1)
        coeffs = [PolyQ() for _ in range(order + 1)]
        for (i, j), c in terms.items():
            coeffs[i] = coeffs[i] + PolyQ.monomial(c, j)
        return cls(coeffs)

    @property
    def order(self):
        return len(self._coeffs) - 1

    @property
    def coeffs(self):
        return list(self._coeffs)

    @property
    def leading(self):
        return self._coeffs[-1] if self._coeffs else PolyQ()

    def coefficient(self, i):
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return PolyQ()

    def is_zero(self):
        return not self._coeffs

    def terms(self):
        """
        Iterate over the nonzero terms.

        Yields:
            tuple: ``(i, j, c)`` for each term ``c * x**j * d^i``.
        """
        for i, p in enumerate(self._coeffs):
            for j, c in enumerate(p.coeffs):
                if c != 0:
                    yield i, j, c

    def max_shift(self):
        """
        The largest ``j - i`` over all terms ``x**j d^i``.

        Returns:
            int: The degree shift, or :py:data:`None` for the zero operator.
        """
        return max((j - i for i, j, _ in self.terms()), default=None)

    def max_degree(self):
        return max((p.degree for p in self._coeffs), default=-1)

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp([other])
        n = max(len(self._coeffs), len(other._coeffs))
        return DiffOp(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(-p for p in self._coeffs)

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """
        Left-multiply by a function: ``(f * D) g = f * (D g)``.

        Args:
            other (object): Scalar or :py:class:`PolyQ`.

        Returns:
            DiffOp: The product.
        """
        if isinstance(other, DiffOp):
            return self.compose(other)
        return DiffOp(p * other for p in self._coeffs)

    def __rmul__(self, other):
        return DiffOp(p * other for p in self._coeffs)

    def compose(self, other):
        """
        The composition ``self o other`` via the Leibniz rule.

        Args:
            other (DiffOp): The operator applied first.

        Returns:
            DiffOp: ``self(other(f))`` as a single operator.
        """
        out = {}
        for i, p in enumerate(self._coeffs):
            if p.is_zero():
                continue
            for k, q in enumerate(other._coeffs):
                deriv = q
                for r in range(i + 1):
                    if r:
                        deriv = deriv.derivative()
                    if deriv.is_zero():
                        break
                    idx = i - r + k
                    out[idx] = out.get(idx, PolyQ()) + p * deriv * comb(i, r)
        order = max(out, default=-1)
        return DiffOp(out.get(i, PolyQ()) for i in range(order + 1))

    def apply(self, poly):
        """
        Apply the operator to a polynomial.

        Args:
            poly (PolyQ): The operand.

        Returns:
            PolyQ: ``D(poly)``.
        """
        acc = PolyQ()
        deriv = poly
        for i, p in enumerate(self._coeffs):
            if i:
                deriv = deriv.derivative()
            acc = acc + p * deriv
        return acc

    def map_coeffs(self, fn):
        """
        Apply ``fn`` to every scalar coefficient.

        Args:
            fn (callable): Scalar map.

        Returns:
            DiffOp: The mapped operator.
        """
        return DiffOp(p.map_coeffs(fn) for p in self._coeffs)

    def at_n(self, n):
        """
        Substitute a value for the symbol ``N``.

        Args:
            n (int or Fraction): The matrix size.

        Returns:
            DiffOp: The operator over ``Q``.
        """
        return self.map_coeffs(lambda c: c.evaluate(n) if getattr(c, "is_ratfun", False) else c)

    def scale_x(self, factor):
        """
        Rewrite the operator in the variable ``x'`` where ``x = factor * x'``.

        Args:
            factor (object): A nonzero exact scalar.

        Returns:
            DiffOp: The operator acting on functions of ``x'``.
        """
        factor = as_scalar(factor)
        return DiffOp.from_terms({(i, j): c * factor ** (j - i) for i, j, c in self.terms()})

    def normalized(self):
        """
        Scale so that the top coefficient has leading coefficient one.

        Returns:
            DiffOp: The normalized operator.
        """
        if not self._coeffs:
            return self
        lead = self._coeffs[-1].leading
        return DiffOp(p / lead for p in self._coeffs)

    def is_proportional(self, other):
        """
        Whether ``self = f * other`` for some rational function ``f`` of ``x``.

        Every 2x2 minor ``p_i q_j - p_j q_i`` must vanish.

        Args:
            other (DiffOp): The operator to compare with.

        Returns:
            bool: :py:data:`True` if the operators are proportional.
        """
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        n = max(len(self._coeffs), len(other._coeffs))
        for i in range(n):
            for j in range(i + 1, n):
                minor = self.coefficient(i) * other.coefficient(j) - self.coefficient(
                    j
                ) * other.coefficient(i)
                if not minor.is_zero():
                    return False
        return True

    def render(self, var="x"):
        """
        Canonical text form in ascending derivative order.

        Args:
            var (str): Variable name.

        Returns:
            str: For example ``"[x] + [2 - x^2]*d + [1/4]*d^3"``.
        """
        parts = []
        for i, p in enumerate(self._coeffs):
            if p.is_zero():
                continue
            text = f"[{p.render(var)}]"
            if i == 1:
                text += "*d"
            elif i > 1:
                text += f"*d^{i}"
            parts.append(text)
        return " + ".join(parts) or "0"

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"DiffOp({self.render()})"

    __str__ = render


@dataclasses.dataclass(frozen=True)
class Affine:
    """The map ``x -> alpha*x + shift``."""

    alpha: Fraction
    shift: Fraction = Fraction(0)


@dataclasses.dataclass(frozen=True)
class Inverse:
    """The map ``x -> 1/x``."""


@dataclasses.dataclass(frozen=True)
class WeightedImage:
    """
    The result of applying an operator to ``w * P``.

    ``D(w*P) = w * poly / u**power`` with ``u = 1`` (Gaussian), ``u = x``
    (Laguerre) or ``u = x*(1-x)`` (Jacobi).
    """

    poly: PolyQ
    power: int


def pullback_with_power(op, mapping):
    """
    Pull an operator back through a change of variables.

    Args:
        op (DiffOp): The operator ``D``.
        mapping (Affine or Inverse): The map ``phi``.

    Returns:
        tuple: ``(D~, m)`` with ``x**m * (D f)(phi(x)) = (D~ (f o phi))(x)``.

    Raises:
        ValueError: If an affine map has ``alpha = 0``.
    """
    if isinstance(mapping, Affine):
        alpha = as_scalar(mapping.alpha)
        if alpha == 0:
            raise ValueError("Affine pullback needs a nonzero scale")
        inner = PolyQ((as_scalar(mapping.shift), alpha))
        return DiffOp(p(inner) / alpha**i for i, p in enumerate(op.coeffs)), 0

    # d/dy = -x^2 d/dx for y = 1/x
    step = DiffOp([PolyQ(), PolyQ((0, 0, -1))])
    power = DiffOp([PolyQ((1,))])
    laurent = {}
    for i, p in enumerate(op.coeffs):
        if i:
            power = step.compose(power)
        if p.is_zero():
            continue
        for r, q in enumerate(power.coeffs):
            for e_q, c_q in enumerate(q.coeffs):
                if c_q == 0:
                    continue
                for j, c in enumerate(p.coeffs):
                    if c == 0:
                        continue
                    key = (r, e_q - j)
                    laurent[key] = laurent.get(key, 0) + c * c_q
    laurent = {k: v for k, v in laurent.items() if v != 0}
    lowest = min((e for _, e in laurent), default=0)
    shift = max(0, -lowest)
    result = DiffOp.from_terms({(r, e + shift): c for (r, e), c in laurent.items()})
    log.debug("Inverse pullback cleared x^%d", shift)
    return result, shift


def op_pullback(op, mapping):
    """
    Pull an operator back through ``x -> alpha*x + shift`` or ``x -> 1/x``.

    Args:
        op (DiffOp): The operator.
        mapping (Affine or Inverse): The map.

    Returns:
        DiffOp: The operator acting on ``f o mapping`` with polynomial
        coefficients (see :py:func:`pullback_with_power` for the cleared power).
    """
    return pullback_with_power(op, mapping)[0]


def _weight_step(weight, poly, m):
    if weight.kind == "gaussian":
        return poly.derivative() - PolyQ((0, 2 * weight.c)) * poly, m
    x = PolyQ.x()
    if weight.kind == "laguerre":
        return x * poly.derivative() + PolyQ((weight.a - m, -1)) * poly, m + 1
    u = x * (1 - x)
    log_deriv = PolyQ((weight.a, -weight.a - weight.b))
    return (
        u * poly.derivative() + log_deriv * poly - PolyQ((1, -2)) * poly * m,
        m + 1,
    )


def weight_denominator(weight):
    if weight.kind == "gaussian":
        return PolyQ((1,))
    if weight.kind == "laguerre":
        return PolyQ.x()
    return PolyQ((0, 1, -1))


def weighted_derivatives(poly, weight, order):
    """
    Derivatives of ``w(x) * P(x)`` in the form ``w * Q_i / u**m_i``.

    Args:
        poly (PolyQ): The polynomial ``P``.
        weight (WeightTag): The weight ``w``.
        order (int): Highest derivative.

    Returns:
        list: ``(Q_i, m_i)`` for ``i = 0 .. order``; ``u`` is as in
        :py:class:`WeightedImage`.
    """
    derivs = [(poly, 0)]
    for _ in range(order):
        derivs.append(_weight_step(weight, *derivs[-1]))
    return derivs


def op_apply_to_weighted_poly(op, poly, weight):
    """
    Apply an operator to ``w(x) * P(x)`` for a classical weight.

    Args:
        op (DiffOp): The operator with coefficients over ``Q``.
        poly (PolyQ): The polynomial ``P``.
        weight (WeightTag): The weight ``w``.

    Returns:
        WeightedImage: ``Q`` and ``m`` with ``D(w*P) = w * Q / u**m``, ``m``
        minimal.
    """
    if not isinstance(weight, WeightTag):
        raise TypeError("weight must be a WeightTag")
    derivs = weighted_derivatives(poly, weight, op.order)
    u = weight_denominator(weight)
    top = max((m for _, m in derivs), default=0)
    acc = PolyQ()
    for p, (f, m) in zip(op.coeffs, derivs):
        acc = acc + p * f * u ** (top - m)
    if acc.is_zero():
        return WeightedImage(acc, 0)
    while top and u.degree > 0:
        quot, rem = divmod(acc, u)
        if not rem.is_zero():
            break
        acc, top = quot, top - 1
    return WeightedImage(acc, top)

"""
First-order matrix systems and scalar elimination.

The Jacobi system has entries that are rational functions of ``x`` (stored
as :py:class:`~specden.exactq.RatFun`, whose variable is read as ``x``
here). The Gaussian system has polynomial entries over ``Q(sqrt(kappa))``,
stored with :py:class:`SqrtExt` coefficients.
"""

import logging
from math import isqrt
from fractions import Fraction

from specden.errors import UnsupportedNError, StructureMismatchError
from specden.exactq import PolyQ, RatFun, poly_gcd, as_scalar
from specden.diffop.diffop import DiffOp

log = logging.getLogger(__name__)

SYSTEM_SIZES = (2, 4, 6)


def _rational_sqrt(value):
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


class SqrtExt:
    """
    An element ``rat + irr*sqrt(radicand)`` of ``Q(sqrt(radicand))``.

    The radicand is never a rational square; use :py:func:`sqrt_of` to get
    a plain :py:class:`Fraction` in that case.
    """

    __slots__ = ("irr", "radicand", "rat")

    def __init__(self, rat, irr, radicand):
        self.rat = as_scalar(rat)
        self.irr = as_scalar(irr)
        self.radicand = as_scalar(radicand)

    def _lift(self, other):
        if isinstance(other, SqrtExt):
            if other.radicand != self.radicand:
                raise ValueError("Mixed radicands")
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtExt(other, 0, self.radicand)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return SqrtExt(self.rat + other.rat, self.irr + other.irr, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return SqrtExt(-self.rat, -self.irr, self.radicand)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return SqrtExt(
            self.rat * other.rat + self.irr * other.irr * self.radicand,
            self.rat * other.irr + self.irr * other.rat,
            self.radicand,
        )

    __rmul__ = __mul__

    def norm(self):
        return self.rat * self.rat - self.irr * self.irr * self.radicand

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        norm = other.norm()
        if norm == 0:
            raise ZeroDivisionError("Division by zero in Q(sqrt)")
        conj = SqrtExt(other.rat / norm, -other.irr / norm, self.radicand)
        return self * conj

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        if isinstance(other, SqrtExt):
            return (self.rat, self.irr, self.radicand) == (other.rat, other.irr, other.radicand)
        if isinstance(other, (int, Fraction)):
            return self.irr == 0 and self.rat == other
        return NotImplemented

    def __hash__(self):
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr, self.radicand))

    def __bool__(self):
        return bool(self.rat) or bool(self.irr)

    def rational(self):
        """
        The value as a rational.

        Returns:
            Fraction: ``rat``.

        Raises:
            StructureMismatchError: If a ``sqrt`` part survives.
        """
        if self.irr != 0:
            raise StructureMismatchError(f"Residual sqrt({self.radicand}) part in {self}")
        return self.rat

    def __str__(self):
        return f"{self.rat} + {self.irr}*sqrt({self.radicand})"

    def __repr__(self):
        return f"SqrtExt({self})"


def sqrt_of(value):
    """
    Exact square root of a positive rational.

    Args:
        value (Fraction): The radicand.

    Returns:
        Fraction or SqrtExt: A rational when ``value`` is a square.
    """
    value = as_scalar(value)
    root = _rational_sqrt(value)
    if root is not None:
        return root
    return SqrtExt(0, 1, value)


class MatrixODE:
    """
    A system ``v' = M v`` with ``dim x dim`` function entries.

    Entries are either all :py:class:`RatFun` (variable ``x``) or all
    :py:class:`PolyQ`.
    """

    def __init__(self, entries):
        """
        Store a square matrix.

        Args:
            entries (list): Rows of entries.

        Raises:
            StructureMismatchError: If the matrix is not square.
        """
        rows = [list(row) for row in entries]
        if any(len(row) != len(rows) for row in rows):
            raise StructureMismatchError("Matrix systems must be square")
        self.entries = rows

    @property
    def dim(self):
        return len(self.entries)

    def __getitem__(self, index):
        p, q = index
        return self.entries[p][q]

    def reversed(self):
        """
        Reverse the component order.

        Returns:
            MatrixODE: The system for ``(v_{n-1}, ..., v_0)``.
        """
        n = self.dim
        return MatrixODE([[self.entries[n - 1 - p][n - 1 - q] for q in range(n)] for p in range(n)])

    def unit(self):
        sample = self.entries[0][0]
        if isinstance(sample, RatFun):
            return RatFun(1), RatFun(0)
        return PolyQ((1,)), PolyQ()


def build_jacobi_system(n, spec):
    """
    The differential-difference chain for the Jacobi ensemble as a matrix system.

    Row ``p`` reads
    ``x(x-1) J_p' = (A_p x + B_p) J_p + (n-p) E_p J_{p+1} - D_p x(x-1) J_{p-1}``.

    Args:
        n (int): System parameter (even ``beta``), one of 2, 4, 6.
        spec (EnsembleSpec): A numeric Jacobi specification (``a``, ``b``, ``N``).

    Returns:
        MatrixODE: The ``(n+1) x (n+1)`` system.

    Raises:
        UnsupportedNError: If ``n`` is not 2, 4 or 6.
    """
    if n not in SYSTEM_SIZES:
        raise UnsupportedNError(f"Matrix systems are built for n in {SYSTEM_SIZES}, not {n}")
    kappa = Fraction(n, 2)
    a, b, big_n = spec.param("a"), spec.param("b"), spec.n_value()
    a1 = (a + b + 2) / kappa + big_n - 2
    b1 = -(b + n) / kappa - big_n
    xx1 = PolyQ((0, -1, 1))
    zero = RatFun(0)
    rows = [[zero] * (n + 1) for _ in range(n + 1)]
    for p in range(n + 1):
        big_a = (n - p) * (a1 + b1 + 2 * (n - p - 1) / kappa + 2 * big_n + 2)
        big_b = (p - n) * (a1 + big_n + 1 + (n - p - 1) / kappa)
        big_d = p * ((n - p) / kappa + big_n + 1)
        big_e = a1 + b1 + (2 * n - p - 2) / kappa + big_n + 2
        rows[p][p] = RatFun(PolyQ((big_b, big_a)), xx1)
        if p < n:
            rows[p][p + 1] = RatFun(PolyQ(((n - p) * big_e,)), xx1)
        if p > 0:
            rows[p][p - 1] = RatFun(-big_d)
    log.debug("Built Jacobi system n=%d with a'=%s b'=%s", n, a1, b1)
    return MatrixODE(rows)


def build_gaussian_system(n, spec):
    """
    The Gaussian differential-difference chain as a matrix system.

    Components are ``exp(-x**2) G_{n,p}`` for the ensemble of ``N - 1``
    eigenvalues, so component 0 is proportional to the density at size
    ``N`` with weight ``exp(-x**2)``.

    Args:
        n (int): System parameter (even ``beta``), one of 2, 4, 6.
        spec (EnsembleSpec): A numeric specification providing ``N``.

    Returns:
        MatrixODE: Polynomial entries over ``Q(sqrt(kappa))`` with ``kappa = n/2``.

    Raises:
        UnsupportedNError: If ``n`` is not 2, 4 or 6.
    """
    if n not in SYSTEM_SIZES:
        raise UnsupportedNError(f"Matrix systems are built for n in {SYSTEM_SIZES}, not {n}")
    kappa = Fraction(n, 2)
    root = sqrt_of(kappa)
    inv_root = 1 / root
    big_n = spec.n_value() - 1
    rows = [[PolyQ() for _ in range(n + 1)] for _ in range(n + 1)]
    for p in range(n + 1):
        if p > 0:
            rows[p][p - 1] = PolyQ((inv_root * (p * ((n - p) / kappa + big_n + 1)),))
        rows[p][p] = PolyQ((0, 2 * ((n - p) / kappa - 1)))
        if p < n:
            rows[p][p + 1] = PolyQ((inv_root * (-2 * (n - p)),))
    return MatrixODE(rows)


def _derive(coeffs, zero):
    # d o L for L = sum c_i d^i
    out = [zero] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] = out[i] + c.derivative()
        out[i + 1] = out[i + 1] + c
    return out


def _combine(target, coeffs, factor, zero):
    out = list(target) + [zero] * max(0, len(coeffs) - len(target))
    for i, c in enumerate(coeffs):
        out[i] = out[i] - factor * c
    return out


def _to_rational_op(coeffs):
    """Clear denominators (RatFun entries) or the sqrt part (SqrtExt entries)."""
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        return DiffOp([])
    if isinstance(coeffs[0], RatFun) or isinstance(coeffs[-1], RatFun):
        lcm = PolyQ((1,))
        for c in coeffs:
            den = c.den
            lcm = lcm * den // poly_gcd(lcm, den)
        polys = [c.num * (lcm // c.den) for c in coeffs]
        return DiffOp(polys).normalized()
    lead = coeffs[-1].leading
    polys = []
    for c in coeffs:
        scaled = [v / lead for v in c.coeffs]
        polys.append(PolyQ(v.rational() if isinstance(v, SqrtExt) else v for v in scaled))
    return DiffOp(polys)


def eliminate_scalar(system, target=0):
    """
    Eliminate a matrix system to a scalar equation for one component.

    Row ``p`` must express component ``p + 1`` through the derivative of
    component ``p`` and components ``q <= p``; the last row then becomes a
    scalar equation after back-substitution.

    Args:
        system (MatrixODE): The system.
        target (int): Component index, ``0`` or ``dim - 1`` (the chain is
            reversed for the latter).

    Returns:
        DiffOp: An operator of order ``dim`` annihilating the component,
        with polynomial coefficients over ``Q`` and unit leading coefficient.

    Raises:
        StructureMismatchError: If the triangular substitution pattern fails
            or a ``sqrt(kappa)`` part survives.
    """
    if target == system.dim - 1 and target != 0:
        system = system.reversed()
    elif target != 0:
        raise StructureMismatchError(f"Cannot eliminate onto interior component {target}")
    one, zero = system.unit()
    dim = system.dim
    ops = [[one]]
    for p in range(dim - 1):
        for q in range(p + 2, dim):
            if system[p, q]:
                raise StructureMismatchError(f"Row {p} couples to component {q}")
        sup = system[p, p + 1]
        if not sup:
            raise StructureMismatchError(f"Row {p} does not determine component {p + 1}")
        acc = _derive(ops[p], zero)
        for q in range(p + 1):
            if system[p, q]:
                acc = _combine(acc, ops[q], system[p, q], zero)
        ops.append([c / sup for c in acc])
    last = _derive(ops[dim - 1], zero)
    for q in range(dim):
        if system[dim - 1, q]:
            last = _combine(last, ops[q], system[dim - 1, q], zero)
    result = _to_rational_op(last)
    if result.order != dim:
        raise StructureMismatchError(f"Elimination produced order {result.order}, expected {dim}")
    log.debug("Eliminated %dx%d system to order %d", dim, dim, result.order)
    return result

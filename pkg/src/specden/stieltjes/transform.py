"""
Stieltjes-transform reduction of density operators.

The integral

    ``I(s; p, q, n, k) = integral x**p (1-x)**q (s-x)**(-k) rho^(n)(x) dx``

is reduced by integration by parts,

    ``I(p, q, n, k) = -p I(p-1, q, n-1, k) + q I(p, q-1, n-1, k) - k I(p, q, n-1, k+1)``,

until no derivative of ``rho`` remains. The remaining integrals are
derivatives in ``s`` of ``I(p, 0, 0, 1) = s**p W(s) - sum_{l<p} s**(p-l-1) m_l``
or plain moments (``k = 0``). Boundary terms vanish when ``n <= q`` for the
Jacobi weight, and always for the Gaussian and Laguerre weights.
"""

import math
import logging
import functools
import dataclasses
from fractions import Fraction

from specden.errors import (
    SingularSystemError,
    StructureMismatchError,
    InsufficientMomentsError,
)
from specden.exactq import PolyQ
from specden.diffop import DiffOp
from specden.stieltjes.recurrence import falling

log = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class StieltjesTerm:
    """
    The integral ``I(s; p, q, n, k)``.

    Attributes:
        p (int): Power of ``x``.
        q (int): Power of ``1 - x``.
        n (int): Derivative order on the density.
        k (int): Power of ``1/(s - x)``.
    """

    p: int
    q: int = 0
    n: int = 0
    k: int = 1

    def __post_init__(self):
        if min(self.p, self.q, self.n, self.k) < 0:
            raise StructureMismatchError(f"Negative index in {self}")

    @property
    def boundary_safe(self):
        """Whether every boundary term vanishes for any Jacobi weight."""
        return self.n <= min(self.p, self.q)

    def reduce(self):
        """
        Reduce to the resolvent, its derivatives and the moments.

        Returns:
            StieltjesForm: The reduced expression.
        """
        return _reduce(self)


class StieltjesForm:
    """
    ``sum_r A_r(s) W^(r)(s) + sum_l B_l(s) m_l``.

    ``resolvent`` maps derivative orders ``r`` to polynomials ``A_r`` in
    ``s``; ``moments`` maps moment indices ``l`` to polynomials ``B_l``.
    """

    __slots__ = ("moments", "resolvent")

    def __init__(self, resolvent=None, moments=None):
        self.resolvent = {r: p for r, p in (resolvent or {}).items() if p}
        self.moments = {l: p for l, p in (moments or {}).items() if p}

    @classmethod
    def moment(cls, index):
        return cls(moments={index: PolyQ((1,))})

    @staticmethod
    def _merge(left, right, scale):
        out = dict(left)
        for key, poly in right.items():
            out[key] = out.get(key, PolyQ()) + poly * scale
        return out

    def __add__(self, other):
        return StieltjesForm(
            self._merge(self.resolvent, other.resolvent, 1),
            self._merge(self.moments, other.moments, 1),
        )

    def __eq__(self, other):
        if not isinstance(other, StieltjesForm):
            return NotImplemented
        return self.resolvent == other.resolvent and self.moments == other.moments

    __hash__ = None

    def __mul__(self, scale):
        """Multiply by a scalar or a polynomial in ``s``."""
        return StieltjesForm(
            {r: p * scale for r, p in self.resolvent.items()},
            {l: p * scale for l, p in self.moments.items()},
        )

    __rmul__ = __mul__

    def derivative(self):
        """
        Differentiate in ``s``.

        Returns:
            StieltjesForm: ``d/ds`` of the expression.
        """
        resolvent = {}
        for r, poly in self.resolvent.items():
            resolvent[r] = resolvent.get(r, PolyQ()) + poly.derivative()
            resolvent[r + 1] = resolvent.get(r + 1, PolyQ()) + poly
        moments = {l: p.derivative() for l, p in self.moments.items()}
        return StieltjesForm(resolvent, moments)

    def operator(self):
        """
        The part acting on ``W`` as a differential operator in ``s``.

        Returns:
            DiffOp: ``sum_r A_r(s) d^r``.
        """
        order = max(self.resolvent, default=-1)
        return DiffOp([self.resolvent.get(r, PolyQ()) for r in range(order + 1)])

    def moment_part(self, moments):
        """
        Substitute moment values into the moment part.

        Args:
            moments (list): ``m_0, m_1, ...``.

        Returns:
            PolyQ: ``sum_l B_l(s) m_l``.

        Raises:
            InsufficientMomentsError: If an index with nonzero coefficient is missing.
        """
        missing = [l for l in self.moments if l >= len(moments)]
        if missing:
            raise InsufficientMomentsError(
                f"Moments up to m_{max(missing)} are needed, {len(moments)} were given"
            )
        total = PolyQ()
        for l, poly in sorted(self.moments.items()):
            total = total + poly * moments[l]
        return total

    def __repr__(self):
        return f"StieltjesForm(W-orders={sorted(self.resolvent)}, moments={sorted(self.moments)})"


@functools.lru_cache(maxsize=None)
def _reduce(term):
    p, q, n, k = term.p, term.q, term.n, term.k
    if n > 0:
        out = StieltjesForm()
        if k:
            out = out + _reduce(StieltjesTerm(p, q, n - 1, k + 1)) * (-k)
        if p:
            out = out + _reduce(StieltjesTerm(p - 1, q, n - 1, k)) * (-p)
        if q:
            out = out + _reduce(StieltjesTerm(p, q - 1, n - 1, k)) * q
        return out
    if q > 0:
        out = StieltjesForm()
        for m in range(q + 1):
            out = out + _reduce(StieltjesTerm(p + m, 0, 0, k)) * ((-1) ** m * math.comb(q, m))
        return out
    if k == 0:
        return StieltjesForm.moment(p)
    if k == 1:
        moments = {l: PolyQ.monomial(Fraction(-1), p - l - 1) for l in range(p)}
        return StieltjesForm({0: PolyQ.monomial(Fraction(1), p)}, moments)
    # (s-x)^(-k) = (-1)^(k-1)/(k-1)! d^(k-1)/ds^(k-1) (s-x)^(-1)
    out = _reduce(StieltjesTerm(p, 0, 0, 1))
    for _ in range(k - 1):
        out = out.derivative()
    return out * Fraction((-1) ** (k - 1), math.factorial(k - 1))


_ONE_MINUS_X = PolyQ((1, -1))


def _split_boundary(poly, limit):
    """Write ``poly = x**p (1-x)**q r`` with ``p, q <= limit``."""
    p = 0
    while p < limit and not poly.coefficient(0):
        poly = PolyQ(poly.coeffs[1:])
        p += 1
    q = 0
    while q < limit and not sum(poly.coeffs):
        poly, _ = divmod(poly, _ONE_MINUS_X)
        q += 1
    return p, q, poly


def stieltjes_terms(op):
    """
    Split ``D rho`` into integrals ``c * I(s; p, q, n, 1)``.

    Each coefficient ``p_n`` is factored as ``x**p0 (1-x)**q r(x)`` with
    ``p0, q <= n`` before ``r`` is expanded into monomials, so the factors
    that cancel the Jacobi boundary terms stay attached to the integral.

    Args:
        op (DiffOp): The density operator.

    Returns:
        list: ``(c, StieltjesTerm)`` pairs.
    """
    terms = []
    for n, coeff in enumerate(op.coeffs):
        if coeff.is_zero():
            continue
        p0, q, rest = _split_boundary(coeff, n)
        for j, c in enumerate(rest.coeffs):
            if c:
                terms.append((c, StieltjesTerm(p0 + j, q, n, 1)))
    unsafe = sum(1 for _, term in terms if not term.boundary_safe)
    if unsafe:
        log.debug("%d of %d integrals keep a Jacobi boundary term", unsafe, len(terms))
    return terms


def reduce_operator(op):
    """
    Transform ``D rho`` term by term.

    Args:
        op (DiffOp): The density operator.

    Returns:
        StieltjesForm: The transform of ``D rho``; its resolvent part is ``D``
        itself acting on ``W``.
    """
    out = StieltjesForm()
    for c, term in stieltjes_terms(op):
        out = out + _reduce(term) * c
    return out


def resolvent_rhs_from_ode(op, moments, n=None):
    """
    The polynomial ``R`` with ``D (W/N) = R`` implied by ``D rho = 0``.

    Args:
        op (DiffOp): The density operator.
        moments (list): ``m_0, m_1, ...``; ``m_0 .. m_{S-1}`` are required,
            ``S`` being the largest degree shift of ``op``.
        n (object, optional): The normalization ``N``. Defaults to ``m_0``.

    Returns:
        PolyQ: The right-hand side.

    Raises:
        InsufficientMomentsError: If too few moments are supplied.
    """
    form = reduce_operator(op)
    poly = form.moment_part(moments)
    if n is None:
        n = moments[0] if moments else Fraction(1)
    return -poly / n


def initial_moments_from_rhs(op, rhs, n, count=None):
    """
    Solve ``D W = N R`` for the leading moments.

    Substituting ``W = sum m_t x**(-t-1)`` and matching the coefficient of
    ``x**(S-1-t)`` gives a triangular system: ``m_t`` enters first at that
    power with the pivot ``sum c * (-t-1)_i`` over the top-shift terms.
    ``m_0 = N`` is imposed.

    Args:
        op (DiffOp): The density operator.
        rhs (PolyQ): The right-hand side ``R``.
        n (object): The normalization ``N``.
        count (int, optional): Number of moments. Defaults to the order of ``op``.

    Returns:
        list: ``[m_0, ..., m_{count-1}]``.

    Raises:
        SingularSystemError: If a pivot beyond ``m_0`` vanishes.
    """
    count = op.order if count is None else count
    terms = list(op.terms())
    top = max(j - i for i, j, _ in terms)
    values = []
    for t in range(count):
        e = top - 1 - t
        pivot = Fraction(0)
        known = Fraction(0)
        for i, j, c in terms:
            idx = j - i - 1 - e
            if idx < 0 or idx > t:
                continue
            weight = c * falling(-idx - 1, i)
            if idx == t:
                pivot = pivot + weight
            else:
                known = known + weight * values[idx]
        target = rhs.coefficient(e) * n if e >= 0 else Fraction(0)
        if t == 0:
            values.append(n)
            if pivot * n + known != target:
                log.warning("Normalization m_0 = %s is inconsistent with the leading equation", n)
            continue
        if not pivot:
            raise SingularSystemError(f"Zero pivot for m_{t} in the initial-moment system")
        values.append((target - known) / pivot)
    log.debug("Solved %d initial moments", count)
    return values

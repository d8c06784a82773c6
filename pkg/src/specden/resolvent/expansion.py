"""
Topological expansion of the scaled resolvent.

With the weight parameters scaled with ``N`` (``a = alpha_1 N``,
``b = alpha_2 N``; Gaussian coupling ``g = 1/2``) and the variable scaled so
that the spectrum stays bounded (``x = kappa N xi`` for Laguerre), the
normalized resolvent has an expansion

    ``W(xi) / N = sum_l F_l(xi) N**(-l)``.

The catalog operator is expanded the same way, ``D = N**P sum_p D_p N**(-p)``,
and the resolvent equation splits into

    ``D_0 F_l = R_l - sum_{p=1}^{l} D_p F_{l-p}``,

one linear equation per level. Each is solved coefficientwise in ``1/xi``:
the coefficient of ``xi**(S-j)`` (``S`` the top degree shift of ``D_0``)
involves ``f_j`` with a multiplier depending only on ``j``, and lower
coefficients already known. Where the multiplier vanishes at ``j = 1`` the
normalization ``m_0 = N`` fixes ``f_1``.

Stored levels are ``normalization * F_l``; the Gaussian normalization is
``1/2`` so that the planar level starts at ``1/(2x)``.
"""

import json
import logging
from fractions import Fraction

from specden.config import config
from specden.errors import (
    InvalidSpecError,
    RangeTooSmallError,
    SingularSystemError,
    StructureMismatchError,
    TruncationTooShortError,
)
from specden.exactq import PolyQ, InvXSeries, as_scalar, series_apply_diffop
from specden.diffop import Scaled, DiffOp, EnsembleSpec, catalog_pair, check_supported
from specden.moments import Report
from specden.stieltjes import falling

log = logging.getLogger(__name__)

NORMALIZATION = {
    "gaussian": Fraction(1, 2),
    "laguerre": Fraction(1),
    "jacobi": Fraction(1),
}

VARIABLES = {
    "gaussian": "x (weight exp(-N kappa x^2))",
    "laguerre": "xi = x / (kappa N)",
    "jacobi": "x",
}


def scaled_spec(family, beta, alpha1=0, alpha2=0):
    """
    The symbolic ensemble whose resolvent is expanded.

    Args:
        family (str): Ensemble family.
        beta (Fraction): Dyson index.
        alpha1 (Fraction): ``a = alpha1 * N``.
        alpha2 (Fraction): ``b = alpha2 * N`` (Jacobi only).

    Returns:
        EnsembleSpec: ``N`` symbolic; Gaussian coupling ``1/2``.

    Raises:
        InvalidSpecError: For a negative ``alpha``.
    """
    alpha1, alpha2 = as_scalar(alpha1), as_scalar(alpha2)
    if alpha1 < 0 or alpha2 < 0:
        raise InvalidSpecError("Scaled exponents need alpha >= 0")
    if family == "gaussian":
        spec = EnsembleSpec("gaussian", beta, gaussian_g=Fraction(1, 2))
    else:
        spec = EnsembleSpec(family, beta, a=Scaled(alpha1), b=Scaled(alpha2))
    check_supported(spec)
    return spec


def _scaled_pair(spec):
    op, rhs = catalog_pair(spec)
    if spec.family != "laguerre":
        return op, rhs
    factor = spec.n_value() * spec.kappa
    op = op.scale_x(factor)
    rhs = PolyQ([c * factor**e for e, c in enumerate(rhs.coeffs)]) * factor
    return op, rhs


def _top(value):
    if getattr(value, "is_ratfun", False):
        return value.laurent(0)[0]
    return 0 if value != 0 else None


def _expand(value, power, levels):
    """Coefficients of ``N**(power - p)`` in ``value`` for ``p = 0 .. levels``."""
    out = [Fraction(0)] * (levels + 1)
    top = _top(value)
    if top is None:
        return out
    offset = power - top
    if not getattr(value, "is_ratfun", False):
        if offset <= levels:
            out[offset] = value
        return out
    count = levels + 1 - offset
    if count <= 0:
        return out
    _, series = value.laurent(count)
    for r, c in enumerate(series):
        out[offset + r] = c
    return out


def level_equations(spec, l_max):
    """
    Split the scaled resolvent equation by powers of ``N``.

    Args:
        spec (EnsembleSpec): A symbolic ensemble from :py:func:`scaled_spec`.
        l_max (int): Highest level needed.

    Returns:
        tuple: ``([D_0, ..., D_lmax], [R_0, ..., R_lmax])``.

    Raises:
        StructureMismatchError: If the right-hand side grows faster in ``N``
            than the operator.
    """
    op, rhs = _scaled_pair(spec)
    tops = [_top(c) for _, _, c in op.terms()]
    power = max(t for t in tops if t is not None)
    rhs_tops = [t for t in (_top(c) for c in rhs.coeffs) if t is not None]
    if rhs_tops and max(rhs_tops) > power:
        raise StructureMismatchError("The right-hand side outgrows the operator in N")
    ops = [{} for _ in range(l_max + 1)]
    for i, j, c in op.terms():
        for p, value in enumerate(_expand(c, power, l_max)):
            if value != 0:
                ops[p][(i, j)] = value
    rhss = [[Fraction(0)] * len(rhs.coeffs) for _ in range(l_max + 1)]
    for e, c in enumerate(rhs.coeffs):
        for p, value in enumerate(_expand(c, power, l_max)):
            rhss[p][e] = value
    return [DiffOp.from_terms(terms) for terms in ops], [PolyQ(coeffs) for coeffs in rhss]


def _multiplier(group, j):
    total = Fraction(0)
    for i, _, c in group:
        total += c * falling(-j, i)
    return total


class LevelSolver:
    """
    Solve ``D_0 F = G`` for ``F = sum_{j >= 1} f_j x**(-j)``.

    Groups of terms with a common degree shift that annihilate every inverse
    power are skipped; the largest remaining shift sets the pivot exponent.
    """

    def __init__(self, op):
        terms = list(op.terms())
        self.log = logging.getLogger(f"{__name__}.LevelSolver")
        self.top = None
        self.terms = []
        for shift in sorted({j - i for i, j, _ in terms}, reverse=True):
            group = [(i, j, c) for i, j, c in terms if j - i == shift]
            if self.top is None:
                depth = max(i for i, _, _ in group) + 1
                if all(_multiplier(group, j) == 0 for j in range(1, depth + 1)):
                    self.log.debug("Shift %d annihilates inverse powers; skipped", shift)
                    continue
                self.top = shift
            self.terms.extend(group)
        if self.top is None:
            raise SingularSystemError("The leading operator annihilates every inverse power")

    def solve(self, rhs, order, first=Fraction(0)):
        """
        Solve coefficientwise.

        Args:
            rhs (InvXSeries): The right-hand side ``G``.
            order (int): Number of coefficients ``f_1 .. f_order``.
            first (Fraction): ``f_1`` when its multiplier vanishes.

        Returns:
            tuple: ``(InvXSeries, list)``, the solution and a list of
            inconsistencies found in ``G``.

        Raises:
            TruncationTooShortError: If ``G`` is not known far enough.
            SingularSystemError: If a multiplier beyond ``j = 1`` vanishes.
        """
        if rhs.order < order - self.top:
            raise TruncationTooShortError(
                f"Right-hand side known to x^{-rhs.order}, x^{self.top - order} is needed"
            )
        issues = [f"x^{e}: {c}" for e, c in sorted(rhs.terms.items()) if e >= self.top]
        values = {}
        for j in range(1, order + 1):
            pivot = Fraction(0)
            known = Fraction(0)
            for i, a, c in self.terms:
                jp = j - (self.top - (a - i))
                if jp < 1:
                    continue
                weight = c * falling(-jp, i)
                if jp == j:
                    pivot += weight
                elif jp in values:
                    known += weight * values[jp]
            target = rhs.coefficient(self.top - j)
            if pivot == 0:
                if j > 1:
                    raise SingularSystemError(f"Zero multiplier for the coefficient of x^{-j}")
                values[j] = first
                if target != known:
                    issues.append(f"x^{self.top - 1}: {target - known}")
                continue
            values[j] = (target - known) / pivot
            if j == 1 and values[j] != first:
                issues.append(f"x^-1 coefficient {values[j]}, normalization expects {first}")
        return InvXSeries({-j: v for j, v in values.items()}, order), issues


class ExpansionStack:
    """
    The levels ``W^l`` of the scaled resolvent of one ensemble.

    Attributes:
        family (str): Ensemble family.
        beta (Fraction): Dyson index.
        alpha1 (Fraction): ``a = alpha1 * N``.
        alpha2 (Fraction): ``b = alpha2 * N``.
        levels (list): :py:class:`~specden.exactq.InvXSeries`, one per level.
        order (int): The truncation order ``J``.
        consistency (list): Equations of the level system found inconsistent.
    """

    def __init__(self, family, beta, alpha1, alpha2, levels, order, consistency=()):
        self.family = family
        self.beta = as_scalar(beta)
        self.alpha1 = as_scalar(alpha1)
        self.alpha2 = as_scalar(alpha2)
        self.levels = list(levels)
        self.order = order
        self.consistency = list(consistency)

    @property
    def normalization(self):
        return NORMALIZATION[self.family]

    @property
    def l_max(self):
        return len(self.levels) - 1

    def level(self, l):
        return self.levels[l]

    def odd_levels_vanish(self):
        return all(series.is_zero() for series in self.levels[1::2])

    @classmethod
    def from_coeff_table(cls, table, l_max, order):
        """
        Reassemble the levels from expansion coefficients ``M[k, l]``.

        Args:
            table (CoeffTable): Coefficients of the unit-weight Gaussian
                ensemble, or of a Laguerre/Jacobi ensemble with ``a = alpha_1 N``
                (and ``b = alpha_2 N``).
            l_max (int): Highest level.
            order (int): Truncation order; capped by the table's ``k`` range.

        Returns:
            ExpansionStack: The reassembled stack.

        Raises:
            RangeTooSmallError: If the table has fewer levels than ``l_max``.
        """
        spec = table.spec
        if table.l_max < l_max:
            raise RangeTooSmallError(f"The table stops at l = {table.l_max}")
        kappa = spec.kappa
        norm = NORMALIZATION[spec.family]
        levels = []
        if spec.family == "gaussian":
            order = min(order, 2 * table.k_max + 2)
            for l in range(l_max + 1):
                terms = {-2 * k - 1: norm * table.get(k, l) / kappa**k for k in range(table.k_max + 1)}
                levels.append(InvXSeries(terms, order))
        else:
            order = min(order, table.k_max + 1)
            scale = kappa if spec.family == "laguerre" else Fraction(1)
            for l in range(l_max + 1):
                terms = {-k - 1: table.get(k, l) / scale**k for k in range(table.k_max + 1)}
                levels.append(InvXSeries(terms, order))
        alpha1 = spec.a.alpha if isinstance(spec.a, Scaled) else Fraction(0)
        alpha2 = spec.b.alpha if isinstance(spec.b, Scaled) else Fraction(0)
        return cls(spec.family, spec.beta, alpha1, alpha2, levels, order)

    def __eq__(self, other):
        if not isinstance(other, ExpansionStack):
            return NotImplemented
        return (self.family, self.beta, self.alpha1, self.alpha2, self.order, self.levels) == (
            other.family,
            other.beta,
            other.alpha1,
            other.alpha2,
            other.order,
            other.levels,
        )

    def to_dict(self):
        return {
            "kind": "expansion",
            "family": self.family,
            "beta": str(self.beta),
            "alpha1": str(self.alpha1),
            "alpha2": str(self.alpha2),
            "variable": VARIABLES[self.family],
            "normalization": str(self.normalization),
            "order": self.order,
            "levels": {str(l): series.to_strings() for l, series in enumerate(self.levels)},
            "consistency": list(self.consistency),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        """
        Rebuild a stack written by :py:meth:`to_json`.

        Args:
            text (str): JSON text.

        Returns:
            ExpansionStack: The stack.

        Raises:
            InvalidSpecError: If the text is not an expansion stack.
        """
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise InvalidSpecError(f"Cannot parse expansion stack: {exc}") from exc
        if data.get("kind") != "expansion":
            raise InvalidSpecError(f"Expected an expansion stack, found {data.get('kind')!r}")
        levels = [
            InvXSeries.from_strings(data["levels"][str(l)]) for l in range(len(data["levels"]))
        ]
        return cls(
            data["family"],
            Fraction(data["beta"]),
            Fraction(data["alpha1"]),
            Fraction(data["alpha2"]),
            levels,
            data["order"],
            data.get("consistency", ()),
        )

    def __repr__(self):
        return (
            f"ExpansionStack({self.family}, beta={self.beta}, levels=0..{self.l_max}, "
            f"order={self.order})"
        )


def expansion_coefficients(family, beta, alpha1=0, alpha2=0, l_max=4, order=12):
    """
    Solve the level equations of the scaled resolvent.

    Args:
        family (str): Ensemble family.
        beta (Fraction): Dyson index in the catalog.
        alpha1 (Fraction): ``a = alpha1 * N`` (Laguerre, Jacobi).
        alpha2 (Fraction): ``b = alpha2 * N`` (Jacobi).
        l_max (int): Highest level.
        order (int): Truncation order ``J`` of every level.

    Returns:
        ExpansionStack: Levels ``0 .. l_max``.

    Raises:
        UnsupportedBetaError: Outside the catalog.
        TruncationTooShortError: If ``order`` is not positive.
    """
    if order < 1:
        raise TruncationTooShortError("The truncation order must be positive")
    spec = scaled_spec(family, beta, alpha1, alpha2)
    ops, rhss = level_equations(spec, l_max)
    solver = LevelSolver(ops[0])
    shifts = [op.max_shift() for op in ops[1:] if not op.is_zero()]
    margin = max([s - solver.top for s in shifts] + [0]) + config["resolvent"]["truncation_margin"]
    raw = []
    issues = []
    for l in range(l_max + 1):
        internal = order + margin * (l_max - l)
        rhs = InvXSeries.from_poly(rhss[l], internal)
        for p in range(1, l + 1):
            if not ops[p].is_zero():
                rhs = rhs - series_apply_diffop(ops[p], raw[l - p])
        level, found = solver.solve(rhs, internal, Fraction(1) if l == 0 else Fraction(0))
        issues.extend(f"level {l}: {text}" for text in found)
        raw.append(level)
        log.debug("Solved level %d to order %d", l, internal)
    for text in issues:
        log.warning("Inconsistent level equation, %s", text)
    norm = NORMALIZATION[spec.family]
    levels = [(series * norm).truncate(order) for series in raw]
    return ExpansionStack(spec.family, spec.beta, alpha1, alpha2, levels, order, issues)


def planar_equation(family, beta, alpha1=0, alpha2=0):
    """
    The closed-form planar equation ``D W^0 = R``.

    The planar level does not depend on ``beta`` once ``alpha`` is divided
    by ``kappa``; the returned equation is the ``beta = 2`` one at
    ``alpha / kappa``.

    Args:
        family (str): Ensemble family.
        beta (Fraction): Dyson index.
        alpha1 (Fraction): ``a = alpha1 * N``.
        alpha2 (Fraction): ``b = alpha2 * N``.

    Returns:
        tuple: ``(DiffOp, PolyQ)``.
    """
    kappa = as_scalar(beta) / 2
    x = PolyQ.x()
    if family == "gaussian":
        return DiffOp([-x, x * x - 2]), PolyQ((-1,))
    a1 = as_scalar(alpha1) / kappa
    if family == "laguerre":
        op = DiffOp([x * (a1 + 2) - a1 * a1, (x * 4 - (x - a1) ** 2) * x])
        return op, PolyQ((a1, 1))
    a2 = as_scalar(alpha2) / kappa
    c = (a1 + a2 + 2) ** 2
    u = x * (1 - x)
    v = 1 - x * 2
    p0 = v * u * (c / 2) + u * (Fraction(3, 2) * (a1 * a1 - a2 * a2)) + PolyQ((-a1 * a1, a1 * a1 + a2 * a2))
    p1 = u * u * c - PolyQ((a1 * a1, a2 * a2 - a1 * a1)) * u
    return DiffOp([p0, p1]), PolyQ((a1, a2 - a1)) * (a1 + a2 + 1)


def check_planar(family, beta, alpha1=0, alpha2=0):
    """
    Compare the mechanical planar operator with :py:func:`planar_equation`.

    Args:
        family (str): Ensemble family.
        beta (Fraction): Dyson index.
        alpha1 (Fraction): ``a = alpha1 * N``.
        alpha2 (Fraction): ``b = alpha2 * N``.

    Returns:
        bool: Whether the two equations agree up to a polynomial factor.
    """
    spec = scaled_spec(family, beta, alpha1, alpha2)
    ops, rhss = level_equations(spec, 0)
    derived, rhs = ops[0], rhss[0] * NORMALIZATION[family]
    printed, printed_rhs = planar_equation(family, beta, alpha1, alpha2)
    if derived.order != printed.order or not derived.is_proportional(printed):
        return False
    return rhs * printed.leading == printed_rhs * derived.leading


def w0_universality_check(family, betas, order, alpha1=0, alpha2=0):
    """
    Check that the planar level is the same for every ``beta``.

    Each ``beta`` is run with ``alpha * kappa`` so that ``alpha / kappa``
    is common to all of them.

    Args:
        family (str): Ensemble family.
        betas (iterable): Dyson indices in the catalog.
        order (int): Truncation order.
        alpha1 (Fraction): ``alpha_1`` at ``beta = 2``.
        alpha2 (Fraction): ``alpha_2`` at ``beta = 2``.

    Returns:
        Report: Coefficients that differ from the first ``beta``.
    """
    report = Report(f"{family}-planar-universality")
    reference = None
    for beta in betas:
        kappa = as_scalar(beta) / 2
        stack = expansion_coefficients(
            family, beta, as_scalar(alpha1) * kappa, as_scalar(alpha2) * kappa, 0, order
        )
        series = stack.level(0)
        if reference is None:
            reference = (beta, series)
            continue
        for e in range(-1, -order - 1, -1):
            report.checked += 1
            if series.coefficient(e) != reference[1].coefficient(e):
                report.violations.append(
                    f"beta={beta}: x^{e} is {series.coefficient(e)}, "
                    f"beta={reference[0]} gives {reference[1].coefficient(e)}"
                )
    return report

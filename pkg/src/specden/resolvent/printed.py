"""
Published level equations of the topological expansion, kept as fixtures.

A published level ``l`` equation reads ``L W^l = sum c * h**e * T W^(l-m)``
plus polynomial terms, where ``h = sqrt(kappa) - 1/sqrt(kappa)`` and the
published levels relate to the stored ones by ``W^l = b**l U_l`` with
``b = 2 sqrt(kappa)`` (Gaussian), ``sqrt(kappa)`` (Laguerre) or ``kappa``
(Jacobi). Dividing by ``b**l`` turns each term into
``(h/b)**e * b**(e-m) * T U_(l-m)``, rational whenever ``m - e`` is even.

Equations are stored multiplied through by their denominators and are
checked by substituting the computed levels; nothing computed is replaced
by a published equation.
"""

import logging
import dataclasses
from fractions import Fraction

from specden.errors import InvalidSpecError
from specden.exactq import PolyQ, InvXSeries, as_scalar, series_apply_diffop
from specden.diffop import DiffOp
from specden.resolvent.expansion import expansion_coefficients

log = logging.getLogger(__name__)

X = PolyQ.x()


@dataclasses.dataclass(frozen=True)
class PrintedTerm:
    """
    One right-hand side term of a published level equation.

    Attributes:
        drop (int): The term acts on ``W^(l - drop)``; for a polynomial term
            the level ``l`` itself.
        h_power (int): Power of ``h`` in front of the term.
        operand (object): :py:class:`~specden.diffop.DiffOp` applied to the
            lower level, or a :py:class:`~specden.exactq.PolyQ`.
    """

    drop: int
    h_power: int
    operand: object


@dataclasses.dataclass(frozen=True)
class PrintedLevel:
    level: int
    lhs: DiffOp
    terms: tuple


def _gaussian_planar(l):
    y2 = X * X - 2
    lhs = DiffOp([-X, y2])
    if l == 0:
        return y2, lhs, PrintedLevel(0, lhs, (PrintedTerm(0, 0, PolyQ((-1,))),))
    return y2, lhs, None


def _gaussian_beta14(l, beta, alpha1, alpha2):
    y2, lhs, planar = _gaussian_planar(l)
    if planar is not None:
        return planar
    terms = [PrintedTerm(1, 1, DiffOp([X * -2, y2 * 4]))]
    if l == 1:
        terms.append(PrintedTerm(1, 1, PolyQ((-5,))))
    else:
        terms += [
            PrintedTerm(2, 0, DiffOp([0, 1, X * -3, y2 * Fraction(5, 2)])),
            PrintedTerm(3, 1, DiffOp.d(3) * -5),
            PrintedTerm(4, 0, DiffOp.d(5)),
        ]
    return PrintedLevel(l, lhs * y2, tuple(terms))


def _gaussian_beta6(l, beta, alpha1, alpha2):
    y2, lhs, planar = _gaussian_planar(l)
    if planar is not None:
        return planar
    if l == 1:
        terms = (PrintedTerm(1, 1, DiffOp([X * -4, y2 * 6])), PrintedTerm(1, 1, PolyQ((7,))))
        return PrintedLevel(1, lhs * y2, terms)
    y4 = y2 * y2
    terms = [
        PrintedTerm(1, 1, DiffOp([X * y2 * -4, y4 * 6])),
        PrintedTerm(
            2, 0, DiffOp([X * 25, (72 - X * X * 19) * 3, X * y2 * -78, y4 * 49]) * Fraction(1, 12)
        ),
    ]
    if l == 2:
        terms.append(PrintedTerm(2, 0, PolyQ((Fraction(-43, 3),))))
    else:
        terms += [
            PrintedTerm(3, 1, DiffOp([0, -10, X * 39, y2 * 49]) * Fraction(1, 3)),
            PrintedTerm(4, 0, DiffOp([0, 0, 0, 230, X * 63, y2 * 63]) * Fraction(1, 18)),
            PrintedTerm(5, 1, DiffOp.d(5) * 7),
            PrintedTerm(6, 1, DiffOp.d(7) * Fraction(3, 4)),
        ]
    return PrintedLevel(l, lhs * y4, tuple(terms))


def _laguerre_beta2(l, beta, alpha1, alpha2):
    a = alpha1
    p0 = X * (a + 2) - a * a
    p1 = (X * 4 - (X - a) ** 2) * X
    if l == 0:
        return PrintedLevel(0, DiffOp([p0, p1]), (PrintedTerm(0, 0, PolyQ((a, 1))),))
    if l == 1:
        return None
    return PrintedLevel(l, DiffOp([-p0, -p1]), (PrintedTerm(2, 0, DiffOp([0, X * 2, X**2 * 4, X**3])),))


def _laguerre_beta14(l, beta, alpha1, alpha2):
    # the beta = 4 equations are the beta = 1 ones at alpha_1 / 4
    a = alpha1 if beta == 1 else alpha1 / 4
    y2 = (X - 2 * a) ** 2 - X * 4
    c = X * (a + 1) - 2 * a * a
    if l == 0:
        return PrintedLevel(0, DiffOp([c * 2, -(X * y2)]), (PrintedTerm(0, 0, PolyQ((2 * a, 1))),))
    lhs = DiffOp([-(y2 * c * 2), X * y2 * y2])
    first = DiffOp([(X * X - X * (6 * (a + 1)) + 8 * a * a) * (4 * a), X * y2 * (8 * a)])
    terms = [PrintedTerm(1, 1, first)]
    if l == 1:
        terms.append(PrintedTerm(1, 1, (X * X - X + X * (4 * a) + 8 * a * a) * 2))
        return PrintedLevel(1, lhs, tuple(terms))
    second = DiffOp(
        [
            c * 4,
            (X * X - X * (6 * (a + 1)) + 10 * a * a) * X * 2,
            (X * X * 8 - X * (38 * (a + 1)) + 44 * a * a) * X * X,
            X**3 * y2 * Fraction(5, 2),
        ]
    )
    terms.append(PrintedTerm(2, 0, second))
    if l == 2:
        terms.append(PrintedTerm(2, 0, (X + 2 * a) * -2))
    else:
        terms += [
            PrintedTerm(3, 1, DiffOp([0, 14, X * 22, X * X * 5]) * (X * (-2 * a))),
            PrintedTerm(4, 0, -DiffOp([0, X * -4, X**2 * 4, X**3 * 22, X**4 * 10, X**5])),
        ]
    return PrintedLevel(l, lhs, tuple(terms))


def _jacobi_beta2(l, beta, alpha1, alpha2):
    a, b = alpha1, alpha2
    u = X * (X - 1)
    quad = X * X * (a + b + 2) ** 2 - X * (2 * (a + 2) * (a + b)) + a * a
    zero = (
        (X - 1) ** 3 * (a * a)
        + X * (1 - X) * (1 - X * 2) * (a * (b + 2))
        + X**3 * (b + 2) ** 2
        - (X * X * 3 + X) * (2 * (b + 1))
    )
    lhs = DiffOp([zero, quad * u])
    if l == 0:
        return PrintedLevel(0, lhs, (PrintedTerm(0, 0, ((1 - X) * a + X * b) * (a + b + 1)),))
    step = DiffOp([u * (1 - X * 2) * -2, u * (u * 7 + 1) * 2, u * u * (1 - X * 2) * -4, u**3])
    return PrintedLevel(l, lhs, (PrintedTerm(2, 0, step),))


@dataclasses.dataclass(frozen=True)
class PrintedLevels:
    """
    A family of published level equations.

    Attributes:
        fixture (str): Identifier.
        family (str): Ensemble family.
        betas (tuple): The ``beta`` values it covers.
        equation (callable): ``(l, beta, alpha1, alpha2)`` to a
            :py:class:`PrintedLevel`, or :py:data:`None` where level ``l`` is
            not published.
    """

    fixture: str
    family: str
    betas: tuple
    equation: object


PRINTED_LEVELS = {
    "gaussian-beta14": PrintedLevels("gaussian-beta14", "gaussian", (Fraction(1), Fraction(4)), _gaussian_beta14),
    "gaussian-beta6": PrintedLevels("gaussian-beta6", "gaussian", (Fraction(2, 3), Fraction(6)), _gaussian_beta6),
    "laguerre-beta2": PrintedLevels("laguerre-beta2", "laguerre", (Fraction(2),), _laguerre_beta2),
    "laguerre-beta14": PrintedLevels("laguerre-beta14", "laguerre", (Fraction(1), Fraction(4)), _laguerre_beta14),
    "jacobi-beta2": PrintedLevels("jacobi-beta2", "jacobi", (Fraction(2),), _jacobi_beta2),
}


def _ratios(family, kappa):
    """``(h/b, b**2)`` for the published normalization of ``family``."""
    if family == "gaussian":
        return (kappa - 1) / (2 * kappa), 4 * kappa
    if family == "laguerre":
        return (kappa - 1) / kappa, kappa
    return None, kappa * kappa


def _factor(term, ratio, square):
    rest = term.drop - term.h_power
    if rest % 2:
        return None
    factor = Fraction(1) / square ** (rest // 2)
    if term.h_power:
        factor *= ratio**term.h_power
    return factor


@dataclasses.dataclass(frozen=True)
class LevelCheck:
    """
    The outcome for one level.

    Attributes:
        level (int): The level ``l``.
        status (str): ``agree``, ``disagree``, ``not printed`` or
            ``not rational`` (a term mixes odd and even powers of ``sqrt(kappa)``).
        order (int): Exponents down to ``-order`` of the residual were compared.
        exponent (int): Highest power with a nonzero residual.
        value (Fraction): The residual coefficient at that power.
    """

    level: int
    status: str
    order: int = None
    exponent: int = None
    value: Fraction = None

    def to_dict(self):
        return {
            "level": self.level,
            "status": self.status,
            "order": self.order,
            "exponent": self.exponent,
            "value": None if self.value is None else str(self.value),
        }


@dataclasses.dataclass
class PrintedLevelReport:
    """
    Per-level agreement of a published equation set with the computed stack.

    Attributes:
        fixture (str): Fixture identifier.
        beta (Fraction): Dyson index.
        alpha1 (Fraction): ``a = alpha1 * N``.
        alpha2 (Fraction): ``b = alpha2 * N``.
        levels (list): :py:class:`LevelCheck`, indexed by level.
    """

    fixture: str
    beta: Fraction
    alpha1: Fraction
    alpha2: Fraction
    levels: list = dataclasses.field(default_factory=list)

    def status(self, l):
        return self.levels[l].status

    @property
    def disagreements(self):
        return [check.level for check in self.levels if check.status == "disagree"]

    def to_dict(self):
        return {
            "fixture": self.fixture,
            "beta": str(self.beta),
            "alpha1": str(self.alpha1),
            "alpha2": str(self.alpha2),
            "levels": [check.to_dict() for check in self.levels],
        }


def _residual(equation, levels, factors):
    l = equation.level
    residual = series_apply_diffop(equation.lhs, levels[l])
    for term, factor in zip(equation.terms, factors):
        if isinstance(term.operand, PolyQ):
            residual = residual - InvXSeries.from_poly(term.operand * factor, residual.order)
        else:
            residual = residual - series_apply_diffop(term.operand, levels[l - term.drop]) * factor
    return residual


def check_printed_levels(fixture_id, beta, alpha1=0, alpha2=0, l_max=4, order=12):
    """
    Substitute the computed levels into the published level equations.

    Args:
        fixture_id (str): A key of :py:data:`PRINTED_LEVELS`.
        beta (Fraction): Dyson index covered by the fixture.
        alpha1 (Fraction): ``a = alpha1 * N`` (Laguerre, Jacobi).
        alpha2 (Fraction): ``b = alpha2 * N`` (Jacobi).
        l_max (int): Highest level.
        order (int): Truncation order of the computed levels.

    Returns:
        PrintedLevelReport: One :py:class:`LevelCheck` per level.

    Raises:
        InvalidSpecError: For an unknown fixture or a ``beta`` it does not cover.
    """
    try:
        fixture = PRINTED_LEVELS[fixture_id]
    except KeyError as exc:
        raise InvalidSpecError(
            f"Unknown fixture {fixture_id!r}; choose from {', '.join(sorted(PRINTED_LEVELS))}"
        ) from exc
    beta, alpha1, alpha2 = as_scalar(beta), as_scalar(alpha1), as_scalar(alpha2)
    if beta not in fixture.betas:
        raise InvalidSpecError(f"{fixture_id} does not cover beta = {beta}")
    stack = expansion_coefficients(fixture.family, beta, alpha1, alpha2, l_max, order)
    ratio, square = _ratios(fixture.family, beta / 2)
    report = PrintedLevelReport(fixture_id, beta, alpha1, alpha2)
    for l in range(l_max + 1):
        equation = fixture.equation(l, beta, alpha1, alpha2)
        if equation is None:
            report.levels.append(LevelCheck(l, "not printed"))
            continue
        terms = tuple(t for t in equation.terms if isinstance(t.operand, PolyQ) or t.drop <= l)
        factors = [_factor(t, ratio, square) for t in terms]
        if any(f is None for f in factors):
            log.warning("%s level %d has a term that is not rational in kappa", fixture_id, l)
            report.levels.append(LevelCheck(l, "not rational"))
            continue
        equation = PrintedLevel(l, equation.lhs, terms)
        residual = _residual(equation, stack.levels, factors)
        found = residual.terms
        if not found:
            report.levels.append(LevelCheck(l, "agree", residual.order))
            continue
        top = max(found)
        log.warning(
            "%s beta=%s level %d: published equation leaves %s x^%d", fixture_id, beta, l, found[top], top
        )
        report.levels.append(LevelCheck(l, "disagree", residual.order, top, found[top]))
    return report

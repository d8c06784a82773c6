"""
Published recurrences, kept as fixtures for the derived ones.

Two kinds of fixture are registered under descriptive identifiers:

* recurrence fixtures (:py:data:`RECURRENCES`): the printed coefficients
  ``d_l(k)`` of ``sum_l d_l(k) m_{k - l*step} = 0``;
* coefficient fixtures (:py:data:`COEFF_RECURSIONS`): the printed
  recursions for the expansion coefficients ``M[k, l]``.

Three printed coefficient recursions are stored in corrected form: the
Gaussian ``beta`` in {2/3, 6} recursion divides by ``4**i`` (printed
``2**i``); the Laguerre ``beta`` in {1, 4} recursion uses
``alpha_1 + 4(kappa-1)**2`` where ``(alpha_1 + 4(kappa-1))(kappa-1)`` is
printed; the Laguerre ``beta = 2`` recursion carries the term
``-2 alpha_1 delta_1 (k-2) M[k-2, l-1]``, which vanishes in the printed
cases.
"""

import random
import logging
import dataclasses
from fractions import Fraction

from specden.config import config
from specden.errors import InvalidSpecError, RangeTooSmallError
from specden.diffop import Scaled, EnsembleSpec, catalog_density_op
from specden.stieltjes import falling, moment_recurrence_from_ode
from specden.moments.tables import CoeffTable, MomentTable

log = logging.getLogger(__name__)


@dataclasses.dataclass
class Report:
    """
    The outcome of checking a fixture.

    Attributes:
        fixture (str): Fixture identifier.
        checked (int): Number of relations evaluated.
        violations (list): Human-readable descriptions of failures.
    """

    fixture: str
    checked: int = 0
    violations: list = dataclasses.field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def merge(self, other):
        self.checked += other.checked
        self.violations.extend(other.violations)
        return self

    def to_dict(self):
        return {
            "fixture": self.fixture,
            "checked": self.checked,
            "violations": list(self.violations),
            "ok": self.ok,
        }


def _dual(spec):
    s = spec.kappa - 1
    return s, spec.param("a") / s, spec.param("b") / s, s * spec.n_value()


def _jacobi_beta2(spec, k):
    a, b, n = spec.param("a"), spec.param("b"), spec.n_value()
    c = (a + b + 2 * n) ** 2
    return [
        k * (c - (k - 1) ** 2),
        3 * k**3 - 11 * k**2 - k * (2 * c + a * a - b * b - 14) + 3 * (a + b) * (a + 2 * n) + 6 * (n * n - 1),
        (2 * k - 3) * (2 * n * (a + b + n) + a * b) - (k - 2) * (3 * k**2 - 10 * k - 3 * a * a + 9),
        (k - 3) * ((k - 2) ** 2 - a * a),
    ]


def _laguerre_beta2(spec, k):
    a, n = spec.param("a"), spec.n_value()
    return [
        Fraction(k + 1),
        -(2 * k - 1) * (a + 2 * n),
        -(k - 2) * ((k - 1) ** 2 - a * a),
    ]


def _jacobi_beta14(spec, k):
    _, ab, bb, nb = _dual(spec)
    at, bt = ab * (ab - 2), bb * (bb - 2)
    c2 = (ab + bb + 4 * nb - 1) ** 2
    c4 = c2 * c2
    plus, minus = at + bt, at - bt
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    d0 = k * (c2 - (k - 2) ** 2) * (c2 - (2 * k - 1) ** 2)
    d1 = (
        half * (c2 - 9) ** 2 * (5 - 6 * k)
        + half * minus * ((c2 - 9) * (5 - 4 * k) + 2 * k * (5 * (k - 1) * (k - 5) + 4 * k))
        + (c2 - 9) * k * (5 * (4 * k - 3) * (k - 3) + 2 * k)
        - 4 * k**2 * (k - 5) * (5 * (k - 2) * (k - 1) - 2)
    )
    d2 = (
        c4 * (3 * k - 5)
        + c2 * (half * plus * (2 * k - 5) + 5 * minus * (k - 2))
        - c2 * (30 * k**3 - 171 * k**2 + 339 * k - 230)
        - half * plus * (5 * k**3 - 44 * k**2 + 129 * k - 125)
        - half * minus * (35 * k**3 - 246 * k**2 + 581 * k - 460)
        + half * (2 * k - 5) * minus**2
        + 40 * k**4 * (k - 11)
        + 1966 * k**3
        - 4443 * k**2
        + 5056 * k
        - 2305
    )
    d3 = (
        half * c4 * (5 - 2 * k)
        + c2 * (quarter * plus * (25 - 8 * k) + quarter * minus * (45 - 16 * k))
        + c2 * (20 * k**3 - 155 * k**2 + 401 * k - 345)
        + Fraction(5, 4) * plus * (6 * k**3 - 62 * k**2 + 216 * k - 253)
        + quarter * minus * (90 * k**3 - 806 * k**2 + 2436 * k - 2485)
        + quarter * (at * at - bt * bt) * (15 - 4 * k)
        + quarter * minus**2 * (25 - 8 * k)
        - 4 * k**3 * (10 * k**2 - 140 * k + 789)
        + 8923 * k**2
        - 12600 * k
        + Fraction(14125, 2)
    )
    d4 = (k - 4) * (
        k**3 + k**2 - 18 * k - (c2 - bt - 4 * k**2 + 29 * k - 51) * (5 * k**2 - 29 * k + 40)
    ) + half * at * at * (6 * k - 25) + half * at * (
        (4 * k - 15) * (c2 - bt - 10 * k**2 + 76 * k - 147) - 2 * (k - 5)
    )
    d5 = (k - 5) * (4 * (k - 5) * (k - 4) - at) * (at - (k - 4) * (k - 2))
    return [d0, d1, d2, d3, d4, d5]


def _laguerre_beta14(spec, k):
    s, ab, _, nb = _dual(spec)
    at = ab * (ab - 2)
    big = ab + 4 * nb
    d = [
        Fraction(k + 1),
        (1 - 4 * k) * big,
        (1 - k) * (5 * k**2 - 11 * k + 4) + (2 * k - 3) * (at + 2 * big * big),
        big * ((11 - 4 * k) * at + 10 * k**3 - 68 * k**2 + 146 * k - 96),
        (k - 4) * (at - 4 * (k - 4) * (k - 3)) * (at - (k - 3) * (k - 1)),
    ]
    return [c * s**l for l, c in enumerate(d)]


def _gaussian_beta6(spec, k):
    s, _, _, nb = _dual(spec)
    p = 3 * nb + 2
    q = nb * (3 * nb + 4)
    d = [
        Fraction(-4 * (k + 2)),
        8 * (3 * k - 1) * p,
        48 * (8 - 3 * k) * q + 49 * k**3 - 216 * k**2 + 92 * k + 320,
        4 * (k - 5) * p * (24 * q - 49 * k**2 + 304 * k - 442),
        2 * falling(k - 5, 3) * (294 * q - 63 * k * (k - 6) - 274),
        252 * falling(k - 5, 5) * p,
        Fraction(81 * falling(k - 5, 7)),
    ]
    return [c * (s / 4) ** l for l, c in enumerate(d)]


@dataclasses.dataclass(frozen=True)
class PrintedRecurrence:
    """
    A published moment recurrence.

    Attributes:
        fixture (str): Identifier.
        family (str): Ensemble family.
        betas (tuple): The ``beta`` values it covers.
        step (int): Moment index stride.
        coefficients (callable): ``(spec, k) -> [d_0(k), ..., d_span(k)]``.
        k_from (int): Smallest top index at which the recurrence holds for moments.
    """

    fixture: str
    family: str
    betas: tuple
    step: int
    coefficients: object
    k_from: int = 0


RECURRENCES = {
    "jacobi-beta2": PrintedRecurrence("jacobi-beta2", "jacobi", (Fraction(2),), 1, _jacobi_beta2, 3),
    "laguerre-beta2": PrintedRecurrence(
        "laguerre-beta2", "laguerre", (Fraction(2),), 1, _laguerre_beta2, 2
    ),
    "jacobi-beta14": PrintedRecurrence(
        "jacobi-beta14", "jacobi", (Fraction(1), Fraction(4)), 1, _jacobi_beta14, 5
    ),
    "laguerre-beta14": PrintedRecurrence(
        "laguerre-beta14", "laguerre", (Fraction(1), Fraction(4)), 1, _laguerre_beta14, 4
    ),
    "gaussian-beta6": PrintedRecurrence(
        "gaussian-beta6", "gaussian", (Fraction(2, 3), Fraction(6)), 2, _gaussian_beta6, 12
    ),
}


def _random_rational(rng, low, high, den=6):
    return Fraction(rng.randint(low * den, high * den), den)


def random_spec(rng, family, beta):
    """
    Draw a numeric ensemble with rational parameters.

    Args:
        rng (random.Random): The generator.
        family (str): Ensemble family.
        beta (Fraction): Dyson index.

    Returns:
        EnsembleSpec: Parameters ``a, b`` in ``[1/6, 6]`` and ``N`` in ``[1, 6]``.
    """
    a = _random_rational(rng, 0, 6) + Fraction(1, 6)
    b = _random_rational(rng, 0, 6) + Fraction(1, 6)
    return EnsembleSpec(family, beta, n=rng.randint(1, 6), a=a, b=b)


def check_recurrence_fixture(fixture_id, spec, k_min=None, k_max=None):
    """
    Compare a derived recurrence with the published one at one parameter point.

    The two agree up to one overall constant, fixed from the first nonzero
    printed coefficient.

    Args:
        fixture_id (str): A key of :py:data:`RECURRENCES`.
        spec (EnsembleSpec): A numeric ensemble of the fixture's family.
        k_min (int, optional): Smallest top index. Defaults to the configured value.
        k_max (int, optional): Largest top index. Defaults to the configured value.

    Returns:
        Report: Any mismatching coefficients.

    Raises:
        InvalidSpecError: For an unknown fixture or mismatched ensemble.
    """
    fixture = _lookup(RECURRENCES, fixture_id)
    if spec.family != fixture.family or spec.beta not in fixture.betas:
        raise InvalidSpecError(f"{fixture_id} does not cover {spec.family} beta={spec.beta}")
    k_min = config["fixtures"]["k_min"] if k_min is None else k_min
    k_max = config["fixtures"]["k_max"] if k_max is None else k_max
    rec = moment_recurrence_from_ode(catalog_density_op(spec), source=fixture_id)
    report = Report(fixture_id)
    if rec.step != fixture.step:
        report.violations.append(f"stride {rec.step} != printed {fixture.step}")
        return report
    scale = None
    for k in range(k_min, k_max + 1):
        printed = fixture.coefficients(spec, k)
        derived = rec.coefficients(k)
        width = max(len(printed), len(derived))
        printed += [Fraction(0)] * (width - len(printed))
        derived += [Fraction(0)] * (width - len(derived))
        for lag, (p, d) in enumerate(zip(printed, derived)):
            if scale is None and p != 0:
                scale = d / p
            report.checked += 1
            if d != (scale or 0) * p:
                report.violations.append(f"{spec.to_dict()} k={k} l={lag}: derived {d}, printed {p}")
    log.debug("%s: %d coefficients, %d violations", fixture_id, report.checked, len(report.violations))
    return report


def verify_recurrence_fixture(fixture_id, trials=None, seed=None, k_min=None, k_max=None):
    """
    Compare derived and published recurrences at random parameter points.

    Args:
        fixture_id (str): A key of :py:data:`RECURRENCES`.
        trials (int, optional): Parameter draws per ``beta``. Defaults to the configured value.
        seed (int, optional): Seed for the draws. Defaults to the configured seed.
        k_min (int, optional): Smallest top index.
        k_max (int, optional): Largest top index.

    Returns:
        Report: The combined report.
    """
    fixture = _lookup(RECURRENCES, fixture_id)
    trials = config["fixtures"]["trials"] if trials is None else trials
    rng = random.Random(config["seed"] if seed is None else seed)
    report = Report(fixture_id)
    for beta in fixture.betas:
        for _ in range(trials):
            spec = random_spec(rng, fixture.family, beta)
            report.merge(check_recurrence_fixture(fixture_id, spec, k_min, k_max))
    return report


def zero_sum_report(spec, k_min=None, k_max=None):
    """
    Check that the recurrence coefficients sum to zero at every ``k``.

    Args:
        spec (EnsembleSpec): A numeric Jacobi ensemble.
        k_min (int, optional): Smallest top index.
        k_max (int, optional): Largest top index.

    Returns:
        Report: Indices where the sum does not vanish.
    """
    k_min = config["fixtures"]["k_min"] if k_min is None else k_min
    k_max = config["fixtures"]["k_max"] if k_max is None else k_max
    rec = moment_recurrence_from_ode(catalog_density_op(spec))
    report = Report(f"{spec.family}-beta{spec.beta}-zero-sum")
    for k in range(k_min, k_max + 1):
        report.checked += 1
        total = rec.zero_sum(k)
        if total != 0:
            report.violations.append(f"k={k}: sum {total}")
    return report


def _scaled(value):
    if isinstance(value, Scaled):
        return value.alpha, value.delta
    return Fraction(0), value


def _gaussian_beta6_coeffs(table, k, l):
    s = table.spec.kappa - 1
    m = table.get
    f = {
        (1, 0): 3 * (6 * k - 1),
        (1, 1): 2 * (6 * k - 1),
        (2, 0): 36 * (4 - 3 * k),
        (2, 1): 48 * (4 - 3 * k),
        (2, 2): 49 * k**3 - 108 * k**2 + 23 * k + 40,
        (3, 0): 108 * (2 * k - 5),
        (3, 1): 216 * (2 * k - 5),
        (3, 2): 3 * (5 - 2 * k) * (98 * k**2 - 304 * k + 189),
        (3, 3): 2 * (5 - 2 * k) * (98 * k**2 - 304 * k + 221),
        (4, 2): Fraction(441, 2) * falling(2 * k - 5, 3),
        (4, 3): 294 * falling(2 * k - 5, 3),
        (4, 4): Fraction(1, 2) * falling(2 * k - 5, 3) * (126 * k * (3 - k) - 137),
        (5, 4): Fraction(189, 2) * falling(2 * k - 5, 5),
        (5, 5): 63 * falling(2 * k - 5, 5),
        (6, 6): Fraction(81, 8) * falling(2 * k - 5, 7),
    }
    rhs = Fraction(0)
    for (i, j), coef in f.items():
        rhs += s ** (2 * i - j) / Fraction(4) ** i * coef * m(k - i, l - j)
    return (k + 1) * m(k, l) - rhs


def _laguerre_beta2_coeffs(table, k, l):
    alpha, delta = _scaled(table.spec.a)
    m = table.get
    rhs = (
        (2 * k - 1) * ((2 + alpha) * m(k - 1, l) + delta * m(k - 1, l - 1))
        - alpha**2 * (k - 2) * m(k - 2, l)
        - 2 * alpha * delta * (k - 2) * m(k - 2, l - 1)
        + (k - 2) * ((k - 1) ** 2 - delta**2) * m(k - 2, l - 2)
    )
    return (k + 1) * m(k, l) - rhs


def _laguerre_beta14_coeffs(table, k, l):
    alpha, _ = _scaled(table.spec.a)
    s = table.spec.kappa - 1
    big = alpha + 4 * s * s
    m = table.get
    g = {
        (1, 0): (4 * k - 1) * big,
        (2, 0): (3 - 2 * k) * (alpha**2 + 2 * big * big),
        (2, 1): 2 * (2 * k - 3) * alpha,
        (2, 2): (k - 1) * (5 * k**2 - 11 * k + 4),
        (3, 0): (4 * k - 11) * big * alpha**2,
        (3, 1): 2 * (11 - 4 * k) * big * alpha,
        (3, 2): 2 * (3 - k) * (5 * k**2 - 19 * k + 16) * big,
        (4, 0): (4 - k) * alpha**4,
        (4, 1): 4 * (k - 4) * alpha**3,
        (4, 2): (k - 4) * (5 * k**2 - 32 * k + 47) * alpha**2,
        (4, 3): 2 * (4 - k) * (k - 3) * (5 * k - 17) * alpha,
        (4, 4): 4 * (1 - k) * ((k - 4) * (k - 3)) ** 2,
    }
    rhs = Fraction(0)
    for (i, j), coef in g.items():
        rhs += s**j * coef * m(k - i, l - j)
    return (k + 1) * m(k, l) - rhs


def _jacobi_h(alpha1, alpha2, k):
    return {
        (1, 0): 2 * (4 * k - 3) * (alpha1 + alpha2 + 1) + (3 * alpha1 * (k - 1) + alpha2 * k) * (alpha1 + alpha2),
        (1, 1): (1 - k) * (3 * k**2 - 8 * k + 6),
        (2, 0): 3 * alpha1**2 * (2 - k) + (3 - 2 * k) * ((alpha1 + 2) * (alpha2 + 2) - 2),
        (2, 1): (k - 2) * (3 * k**2 - 10 * k + 9),
        (3, 0): alpha1**2 * (k - 3),
        (3, 1): (3 - k) * (k - 2) ** 2,
    }


def _jacobi_beta2_coeffs(table, k, l, alpha1=None, alpha2=None):
    if alpha1 is None:
        alpha1, _ = _scaled(table.spec.a)
        alpha2, _ = _scaled(table.spec.b)
    m = table.get
    rhs = k * (k - 1) ** 2 * m(k, l - 2)
    for (i, j), coef in _jacobi_h(alpha1, alpha2, k).items():
        rhs += coef * m(k - i, l - 2 * j)
    return k * (alpha1 + alpha2 + 2) ** 2 * m(k, l) - rhs


def _jacobi_legendre_coeffs(table, k, l):
    m = table.get
    rhs = (
        k * (k - 1) ** 2 * m(k, l - 2)
        + 2 * (4 * k - 3) * m(k - 1, l)
        + (1 - k) * (3 * k**2 - 8 * k + 6) * m(k - 1, l - 2)
        + 2 * (3 - 2 * k) * m(k - 2, l)
        + (k - 2) * (3 * k**2 - 10 * k + 9) * m(k - 2, l - 2)
        + (3 - k) * (k - 2) ** 2 * m(k - 3, l - 2)
    )
    return 4 * k * m(k, l) - rhs


@dataclasses.dataclass(frozen=True)
class CoeffRecursion:
    """
    A published recursion for ``M[k, l]``.

    Attributes:
        fixture (str): Identifier.
        family (str): Ensemble family.
        betas (tuple): Covered ``beta`` values.
        residual (callable): ``(table, k, l) -> lhs - rhs``.
        k_from (int): Smallest ``k`` at which it holds.
        requires_zero_params (bool): Only valid for ``a = b = 0``.
    """

    fixture: str
    family: str
    betas: tuple
    residual: object
    k_from: int
    requires_zero_params: bool = False


COEFF_RECURSIONS = {
    "gaussian-beta6": CoeffRecursion(
        "gaussian-beta6", "gaussian", (Fraction(2, 3), Fraction(6)), _gaussian_beta6_coeffs, 6
    ),
    "laguerre-beta2": CoeffRecursion("laguerre-beta2", "laguerre", (Fraction(2),), _laguerre_beta2_coeffs, 2),
    "laguerre-beta14": CoeffRecursion(
        "laguerre-beta14", "laguerre", (Fraction(1), Fraction(4)), _laguerre_beta14_coeffs, 4
    ),
    "jacobi-beta2": CoeffRecursion("jacobi-beta2", "jacobi", (Fraction(2),), _jacobi_beta2_coeffs, 3),
    "jacobi-legendre": CoeffRecursion(
        "jacobi-legendre", "jacobi", (Fraction(2),), _jacobi_legendre_coeffs, 3, requires_zero_params=True
    ),
}


def _lookup(registry, fixture_id):
    try:
        return registry[fixture_id]
    except KeyError as exc:
        raise InvalidSpecError(
            f"Unknown fixture {fixture_id!r}; choose from {', '.join(sorted(registry))}"
        ) from exc


def _verify_moment_table(fixture, table):
    spec = table.spec
    if spec.family != fixture.family or spec.beta not in fixture.betas:
        raise InvalidSpecError(f"{fixture.fixture} does not cover {spec.family} beta={spec.beta}")
    if spec.symbolic:
        raise InvalidSpecError("Recurrence fixtures are checked on numeric moment tables")
    report = Report(fixture.fixture)
    span = len(fixture.coefficients(spec, 0)) - 1
    lowest = max(fixture.k_from, table.k_min + span * fixture.step)
    if lowest > table.k_max:
        raise RangeTooSmallError(
            f"{fixture.fixture} needs moments up to k = {lowest}, the table stops at {table.k_max}"
        )
    for k in range(lowest, table.k_max + 1):
        coeffs = fixture.coefficients(spec, k)
        total = Fraction(0)
        for lag, c in enumerate(coeffs):
            total += c * table[k - lag * fixture.step]
        report.checked += 1
        if total != 0:
            report.violations.append(f"k={k}: residual {total}")
    return report


def _verify_coeff_table(fixture, table):
    spec = table.spec
    if spec.family != fixture.family or spec.beta not in fixture.betas:
        raise InvalidSpecError(f"{fixture.fixture} does not cover {spec.family} beta={spec.beta}")
    if fixture.requires_zero_params and (spec.a != 0 or spec.b != 0):
        raise InvalidSpecError(f"{fixture.fixture} is stated for a = b = 0")
    if table.k_max < fixture.k_from:
        raise RangeTooSmallError(
            f"{fixture.fixture} holds from k = {fixture.k_from}, the table stops at {table.k_max}"
        )
    report = Report(fixture.fixture)
    for k in range(fixture.k_from, table.k_max + 1):
        top = table.l_max if spec.family == "jacobi" else min(k, table.l_max)
        for l in range(top + 1):
            report.checked += 1
            residual = fixture.residual(table, k, l)
            if residual != 0:
                report.violations.append(f"k={k} l={l}: residual {residual}")
    return report


def verify_printed_recursion(fixture_id, table):
    """
    Check a published recursion against a table.

    Moment tables are checked against :py:data:`RECURRENCES`, coefficient
    tables against :py:data:`COEFF_RECURSIONS`.

    Args:
        fixture_id (str): The fixture identifier.
        table (MomentTable or CoeffTable): The data.

    Returns:
        Report: Every admissible relation that fails.

    Raises:
        RangeTooSmallError: If the table does not reach the fixture's range.
        InvalidSpecError: For an unknown fixture or a mismatched table.
    """
    if isinstance(table, CoeffTable):
        report = _verify_coeff_table(_lookup(COEFF_RECURSIONS, fixture_id), table)
    elif isinstance(table, MomentTable):
        report = _verify_moment_table(_lookup(RECURRENCES, fixture_id), table)
    else:
        raise InvalidSpecError(f"Cannot verify a {type(table).__name__}")
    if report.ok:
        log.info("%s: %d relations hold", fixture_id, report.checked)
    else:
        log.warning("%s: %d of %d relations fail", fixture_id, len(report.violations), report.checked)
    return report

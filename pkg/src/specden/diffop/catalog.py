"""
The operator catalog.

Each supported (family, beta) pair has a differential operator ``D`` that
annihilates the one-point density and satisfies ``D (W/N) = R`` for the
resolvent ``W``. :py:func:`catalog_density_op` returns ``D`` and
:py:func:`catalog_resolvent_rhs` returns ``R``, both with the ensemble
parameters substituted. Coefficients are exact rationals, or rational
functions of ``N`` when the specification is symbolic.
"""

import logging
from fractions import Fraction

from specden.errors import UnsupportedBetaError
from specden.exactq import PolyQ
from specden.diffop.diffop import DiffOp

log = logging.getLogger(__name__)

SUPPORTED = {
    "gaussian": (Fraction(2, 3), Fraction(1), Fraction(2), Fraction(4), Fraction(6)),
    "laguerre": (Fraction(1), Fraction(2), Fraction(4)),
    "jacobi": (Fraction(1), Fraction(2), Fraction(4)),
}

X = PolyQ.x()
ONE = PolyQ((1,))


def check_supported(spec):
    """
    Validate that the catalog covers ``spec``.

    Args:
        spec (EnsembleSpec): The ensemble.

    Raises:
        UnsupportedBetaError: For any (family, beta) outside the catalog.
    """
    if spec.beta not in SUPPORTED[spec.family]:
        raise UnsupportedBetaError(
            f"No differential operator for the {spec.family} ensemble at beta = {spec.beta}"
        )


def _gaussian_t(spec):
    # t^2 = (g/(N*sqrt(kappa)))^2 and h*t = g*(1 - 1/kappa)/N
    g, n, kappa = spec.g(), spec.n_value(), spec.kappa
    return g * g / (n * n * kappa), g * (1 - 1 / kappa) / n, X * X - 4 * g


def _gaussian_beta2(spec):
    t2, _, y2 = _gaussian_t(spec)
    return DiffOp([X, -y2, PolyQ(), ONE * t2]), ONE * 2


def _gaussian_beta14(spec):
    t2, ht, y2 = _gaussian_t(spec)
    op = DiffOp(
        [
            (y2 - 2 * ht) * X,
            -(y2 * y2 - y2 * (4 * ht) - t2),
            X * (-3 * t2),
            (y2 * Fraction(1, 2) - ht) * (5 * t2),
            PolyQ(),
            ONE * (-t2 * t2),
        ]
    )
    return op, y2 * 2 - 10 * ht


def _gaussian_beta6_unit(spec):
    """
    The seventh-order operator for the weight ``exp(-x**2)``.

    The printed form carries half-integer powers of ``kappa - 1``; the
    whole operator and right-hand side are multiplied by ``sqrt(kappa - 1)``
    so every coefficient is rational.
    """
    s = spec.kappa - 1
    nb = s * spec.n_value()
    u = X * X / s
    c1 = 3 * nb + 2
    op = DiffOp(
        [
            (ONE * (144 * nb * nb + 192 * nb + 25) - u * (64 * c1) + u * u * 64) * X * 256,
            (
                ONE * (54 * nb * (4 * nb * nb + 8 * nb + 3) - 20)
                - u * (432 * nb * nb + 576 * nb + 57)
                + u * u * (96 * c1)
                - u * u * u * 64
            )
            * (256 * s),
            (ONE * c1 - u * 2) * X * (9984 * s),
            (ONE * (21 * nb + 5) - u * 14) * (ONE * (21 * nb + 23) - u * 14) * (64 * s * s),
            X * (2016 * s * s),
            (ONE * c1 - u * 2) * (1008 * s**3),
            PolyQ(),
            ONE * (81 * s**4),
        ]
    )
    inner = u * 4 - 6 * nb - 7
    return op, inner * inner * 2**11 - 3 * 2**12


def _gaussian_beta6(spec):
    op, rhs = _gaussian_beta6_unit(spec)
    if spec.gaussian_g is None:
        return op, rhs
    # x' = c*x with c^2 = N*kappa/(2g); the operator is odd so c * c^(j-i) is rational
    c2 = spec.n_value() * spec.kappa / (2 * spec.gaussian_g)
    scaled = DiffOp.from_terms(
        {(i, j): coef * c2 ** ((j - i + 1) // 2) for i, j, coef in op.terms()}
    )
    rhs = PolyQ(c * c2 ** (e // 2) for e, c in enumerate(rhs.coeffs)) * c2
    return scaled, rhs


def _laguerre_beta2(spec):
    a, n = spec.param("a"), spec.n_value()
    op = DiffOp(
        [
            PolyQ((-a * a, a + 2 * n)),
            -(X * X - X * (2 * (a + 2 * n)) + (a * a - 2)) * X,
            X * X * 4,
            X**3,
        ]
    )
    return op, PolyQ((a, 1))


def _dual_params(spec):
    s = spec.kappa - 1
    ab = spec.param("a") / s
    bb = spec.param("b") / s
    nb = s * spec.n_value()
    return s, ab, bb, nb


def _laguerre_beta14(spec):
    s, ab, _, nb = _dual_params(spec)
    at = ab * (ab - 2)
    big = ab + 4 * nb
    xs = X / s
    op = DiffOp(
        [
            -(xs**3) * big + xs * xs * (2 * big * big + at) - xs * ((3 * at + 4) * big) + at * at,
            (xs * xs - xs * (4 * big) + 2 * (2 * big * big + at - 2)) * X**3 / (s * s)
            - (xs * (4 * (at - 3) * big) + (-at * at + 14 * at + 16)) * X,
            -(xs * xs * 16 - xs * (38 * big) + (22 * at - 16)) * X * X,
            -(xs * xs * 5 - xs * (10 * big) + (5 * at - 88)) * X**3,
            X**4 * 40,
            X**5 * 4,
        ]
    )
    rhs = (
        (xs * xs * 2 + xs * (2 * ab - 1)) * (4 * nb / s)
        - (xs**3 - xs * xs * (ab + 2)) / s
        + (xs * (ab * ab + 4 * ab - 4) - ab * (ab - 2) ** 2) / s
    )
    return op, rhs


def _jacobi_beta2(spec):
    a, b, n = spec.param("a"), spec.param("b"), spec.n_value()
    u = X * (1 - X)
    v = 1 - X * 2
    c = (a + b + 2 * n) ** 2
    op = DiffOp(
        [
            v * u * ((c - 4) / 2) + u * (Fraction(3, 2) * (a * a - b * b)) + PolyQ((-a * a, a * a + b * b)),
            u * u * (c - 14) - (PolyQ((a * a, b * b - a * a)) - 2) * u,
            v * u * u * 4,
            u**3,
        ]
    )
    return op, PolyQ((a, b - a)) * (a + b + n)


def _f_pm(p, q, sign):
    # f_pm(x; p, q) = p*(1 - x) +- q*x
    return PolyQ((p, sign * q - p))


def _jacobi_beta14(spec):
    _, ab, bb, nb = _dual_params(spec)
    at, bt = ab * (ab - 2), bb * (bb - 2)
    ct = ab + bb + 4 * nb - 1
    c2 = ct * ct
    u = X * (1 - X)
    v = 1 - X * 2
    f_plus, f_minus = _f_pm(at, bt, 1), _f_pm(at, bt, -1)
    f_plus_sq, f_minus_sq = _f_pm(at * at, bt * bt, 1), _f_pm(at * at, bt * bt, -1)
    op = DiffOp(
        [
            u * u * (Fraction(5, 2) * (c2 - 9) * (at - bt))
            + v * u * u * ((c2 - 9) ** 2 / 2)
            - (f_minus * (3 * c2 - 35) + Fraction(7, 2) * (at * at - bt * bt) + 4 * (at - bt))
            * u
            / 2
            - v * u * ((4 * c2 - 36 + Fraction(3, 2) * (at - bt) ** 2) / 2)
            + f_minus_sq,
            u**3 * (c2 * c2 - 64 * c2 + 719)
            - u * u * ((c2 - 45) * (at + bt - 6) + (at - bt) ** 2 - 248)
            - v * u * u * ((c2 - 37) * (at - bt))
            + (f_plus_sq - f_plus * 14 - 16) * u,
            u**3 * (41 * (at - bt))
            + v * u**3 * (19 * c2 - 539)
            - f_minus * u * u * 22
            + v * u * u * 16,
            u**4 * (5 * c2 - 493) - (f_plus * 5 - 88) * u**3,
            v * u**4 * 40,
            u**5 * 4,
        ]
    )
    k = ct - 2 * nb
    bracket = (
        _f_pm(ab, bb, 1) * ((ab + bb) * (ab + bb - 2))
        + (_f_pm(2 * ab, 2 * bb, 1) - 1) * (4 * nb * k)
        - (ab * bb * (ab + bb - 6) + 4 * (ab + bb - 1))
    )
    edge = PolyQ((1, -2, 1)) * (ab * (ab - 2) ** 2) + X * X * (bb * (bb - 2) ** 2)
    return op, u * bracket * k - edge * k


_BUILDERS = {
    ("gaussian", Fraction(2)): _gaussian_beta2,
    ("gaussian", Fraction(1)): _gaussian_beta14,
    ("gaussian", Fraction(4)): _gaussian_beta14,
    ("gaussian", Fraction(2, 3)): _gaussian_beta6,
    ("gaussian", Fraction(6)): _gaussian_beta6,
    ("laguerre", Fraction(2)): _laguerre_beta2,
    ("laguerre", Fraction(1)): _laguerre_beta14,
    ("laguerre", Fraction(4)): _laguerre_beta14,
    ("jacobi", Fraction(2)): _jacobi_beta2,
    ("jacobi", Fraction(1)): _jacobi_beta14,
    ("jacobi", Fraction(4)): _jacobi_beta14,
}


def catalog_pair(spec):
    """
    The operator and resolvent right-hand side for ``spec``.

    Args:
        spec (EnsembleSpec): The ensemble.

    Returns:
        tuple: ``(DiffOp, PolyQ)``.

    Raises:
        UnsupportedBetaError: Outside the catalog.
    """
    check_supported(spec)
    op, rhs = _BUILDERS[(spec.family, spec.beta)](spec)
    log.debug("Catalog operator for %s beta=%s has order %d", spec.family, spec.beta, op.order)
    return op, rhs


def catalog_density_op(spec):
    """
    The operator annihilating the one-point density of ``spec``.

    Args:
        spec (EnsembleSpec): The ensemble.

    Returns:
        DiffOp: Order 3 for ``beta = 2``, 5 for ``beta`` in {1, 4} and 7 for
        ``beta`` in {2/3, 6}.

    Raises:
        UnsupportedBetaError: Outside the catalog.
    """
    return catalog_pair(spec)[0]


def catalog_resolvent_rhs(spec):
    """
    The polynomial ``R`` in ``D (W/N) = R``.

    Args:
        spec (EnsembleSpec): The ensemble.

    Returns:
        PolyQ: The right-hand side.

    Raises:
        UnsupportedBetaError: Outside the catalog.
    """
    return catalog_pair(spec)[1]

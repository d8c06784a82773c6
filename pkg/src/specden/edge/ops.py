"""
Edge-limit operators.

The soft edge operators annihilate the universal soft edge density for
``beta`` in {2/3, 1, 2, 4, 6}; the hard edge operators annihilate the hard
edge density of exponent ``a`` for ``beta`` in {1, 2, 4}. Both are exact
:py:class:`~specden.diffop.DiffOp` objects; floats only appear when a solver
integrates them.
"""

import logging
from fractions import Fraction

from specden.diffop import DiffOp, EnsembleSpec, catalog_density_op
from specden.errors import UnsupportedBetaError
from specden.exactq import as_scalar

log = logging.getLogger(__name__)

SOFT_BETAS = (Fraction(2, 3), Fraction(1), Fraction(2), Fraction(4), Fraction(6))
HARD_BETAS = (Fraction(1), Fraction(2), Fraction(4))


def soft_edge_op(beta):
    """
    The soft edge operator for ``beta``.

    Args:
        beta (object): The Dyson index.

    Returns:
        DiffOp: Order 3, 5 or 7.

    Raises:
        UnsupportedBetaError: For ``beta`` outside {2/3, 1, 2, 4, 6}.
    """
    beta = as_scalar(beta)
    kappa = beta / 2
    if beta == 2:
        return DiffOp.from_terms({(3, 0): 1, (1, 1): -4, (0, 0): 2})
    if beta in (1, 4):
        return DiffOp.from_terms(
            {
                (5, 0): 1,
                (3, 1): -10 * kappa,
                (2, 0): 6 * kappa,
                (1, 2): 16 * kappa**2,
                (0, 1): -8 * kappa**2,
            }
        )
    if beta in (Fraction(2, 3), 6):
        return DiffOp.from_terms(
            {
                (7, 0): 3,
                (5, 1): -56 * kappa,
                (4, 0): 28 * kappa,
                (3, 2): Fraction(784, 3) * kappa**2,
                (2, 1): -208 * kappa**2,
                (1, 3): -256 * kappa**3,
                (1, 0): 68 * kappa**2,
                (0, 2): 128 * kappa**3,
            }
        )
    raise UnsupportedBetaError(f"No soft edge operator for beta = {beta}")


def hard_edge_op(beta, a):
    """
    The hard edge operator for ``beta`` and the exponent ``a``.

    For ``beta`` in {1, 4} the exponent enters through
    ``at = ah*(ah - 2)`` with ``ah = a/(kappa - 1)``.

    Args:
        beta (object): The Dyson index.
        a (object): The weight exponent at the hard edge.

    Returns:
        DiffOp: Order 3 for ``beta = 2``, order 5 otherwise.

    Raises:
        UnsupportedBetaError: For ``beta`` outside {1, 2, 4}.
    """
    beta, a = as_scalar(beta), as_scalar(a)
    kappa = beta / 2
    if beta == 2:
        return DiffOp.from_terms(
            {
                (3, 3): 1,
                (2, 2): 4,
                (1, 2): 1,
                (1, 1): 2 - a * a,
                (0, 1): Fraction(1, 2),
                (0, 0): -a * a,
            }
        )
    if beta not in (1, 4):
        raise UnsupportedBetaError(f"No hard edge operator for beta = {beta}")
    ah = a / (kappa - 1)
    at = ah * (ah - 2)
    return DiffOp.from_terms(
        {
            (5, 5): 4,
            (4, 4): 40,
            (3, 4): 10 * kappa,
            (3, 3): 88 - 5 * at,
            (2, 3): 38 * kappa,
            (2, 2): 16 - 22 * at,
            (1, 3): 4 * kappa**2,
            (1, 2): 12 * kappa - 4 * kappa * at,
            (1, 1): at * at - 14 * at - 16,
            (0, 2): 2 * kappa**2,
            (0, 1): -3 * kappa * at - 4 * kappa,
            (0, 0): at * at,
        }
    )


def _top_term(c):
    if getattr(c, "is_ratfun", False):
        top, lead = c.laurent(1)
        return top, lead[0]
    return 0, c


def derive_hard_edge_op(beta, a):
    """
    Rederive the hard edge operator from the finite-``N`` Laguerre operator.

    Substitutes ``x -> kappa*x/(4N)`` in the Laguerre density operator with
    symbolic ``N`` and keeps the terms of highest order in ``N``.

    Args:
        beta (object): The Dyson index, one of 1, 2, 4.
        a (object): The Laguerre exponent.

    Returns:
        DiffOp: The limiting operator over ``Q``.
    """
    spec = EnsembleSpec("laguerre", beta, n=None, a=a)
    if spec.beta not in HARD_BETAS:
        raise UnsupportedBetaError(f"No hard edge operator for beta = {spec.beta}")
    factor = spec.n_value() ** -1 * (spec.kappa / 4)
    scaled = catalog_density_op(spec).scale_x(factor)
    leading = {}
    for i, j, c in scaled.terms():
        top, lead = _top_term(c)
        if top is not None:
            leading[(i, j)] = (top, lead)
    best = max(top for top, _ in leading.values())
    log.debug("Hard edge limit keeps the N^%d terms", best)
    return DiffOp.from_terms({key: lead for key, (top, lead) in leading.items() if top == best})

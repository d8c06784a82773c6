"""
Moments straight from the joint eigenvalue density.

For even ``beta`` the Vandermonde power is a polynomial; it is expanded with
sympy and integrated monomial by monomial against the product weight, so the
moments come out exact. For ``beta = 1`` and ``N = 2`` the absolute value is
handled by integrating over the ordered region with scipy.
"""

import math
import logging
from fractions import Fraction

import sympy
from scipy import integrate

from specden.config import config
from specden.errors import (
    SizeLimitError,
    UnsupportedNError,
    UnsupportedBetaError,
    ToleranceNotMetError,
)
from specden.moments import MomentTable
from specden.oracle.cd import weight_moments

log = logging.getLogger(__name__)

MAX_BRUTEFORCE_N = 3


def _vandermonde_terms(n, beta):
    xs = sympy.symbols(f"x0:{n}")
    degree = beta * n * (n - 1) // 2
    bound = math.comb(degree + n - 1, n - 1)
    limit = config["bruteforce"]["max_monomials"]
    if bound > limit:
        raise SizeLimitError(f"Up to {bound} monomials exceed the limit of {limit}")
    vandermonde = sympy.Integer(1)
    for i in range(n):
        for j in range(i + 1, n):
            vandermonde *= (xs[j] - xs[i]) ** beta
    poly = sympy.Poly(sympy.expand(vandermonde), *xs)
    terms = [(exps, Fraction(int(c))) for exps, c in poly.terms()]
    log.debug("Vandermonde power has %d monomials", len(terms))
    return terms, degree


def moments_bruteforce(spec, k_max):
    """
    Exact moments by direct integration of the joint density.

    Args:
        spec (EnsembleSpec): A numeric ensemble with even integer ``beta`` and ``N <= 3``.
        k_max (int): Largest moment index.

    Returns:
        MomentTable: ``m_0 = N .. m_{k_max}``.

    Raises:
        UnsupportedBetaError: For ``beta`` not an even integer.
        UnsupportedNError: For symbolic ``N`` or ``N > 3``.
        SizeLimitError: If the expansion would exceed the configured size.
    """
    if spec.beta.denominator != 1 or spec.beta.numerator % 2:
        raise UnsupportedBetaError("Brute-force moments need an even integer beta")
    if spec.symbolic or spec.n > MAX_BRUTEFORCE_N:
        raise UnsupportedNError(f"Brute-force moments need 1 <= N <= {MAX_BRUTEFORCE_N}")
    n = spec.n
    terms, degree = _vandermonde_terms(n, int(spec.beta))
    mu = weight_moments(spec.weight(), degree + k_max + 1)

    def product(exps):
        out = Fraction(1)
        for e in exps:
            out *= mu[e]
        return out

    norm = sum((c * product(exps) for exps, c in terms), Fraction(0))
    values = {}
    for k in range(k_max + 1):
        total = Fraction(0)
        for exps, c in terms:
            for i in range(n):
                shifted = list(exps)
                shifted[i] += k
                total += c * product(shifted)
        values[k] = total / norm
    return MomentTable(spec, values, provenance="bruteforce")


def _bounds(weight):
    if weight.kind == "gaussian":
        half = config["quadrature"]["gaussian_cutoff"] / math.sqrt(float(weight.c))
        return -half, half
    if weight.kind == "laguerre":
        return 0.0, float(config["quadrature"]["laguerre_cutoff"])
    return 0.0, 1.0


def _weight_fn(weight):
    if weight.kind == "gaussian":
        c = float(weight.c)
        return lambda t: math.exp(-c * t * t)
    a = float(weight.a)
    if weight.kind == "laguerre":
        return lambda t: t**a * math.exp(-t)
    b = float(weight.b)
    return lambda t: t**a * (1 - t) ** b


def moments_quadrature(spec, k_max):
    """
    Moments of the ``beta = 1``, ``N = 2`` ensemble by 2-D quadrature.

    Args:
        spec (EnsembleSpec): A numeric ``beta = 1`` ensemble with ``N = 2``.
        k_max (int): Largest moment index.

    Returns:
        dict: ``k -> m_k`` as floats.

    Raises:
        UnsupportedBetaError: For ``beta != 1``.
        UnsupportedNError: For ``N != 2``.
        ToleranceNotMetError: If an integral misses the configured error target.
    """
    if spec.beta != 1:
        raise UnsupportedBetaError("The quadrature oracle handles beta = 1")
    if spec.n != 2:
        raise UnsupportedNError("The quadrature oracle handles N = 2")
    cfg = config["quadrature"]
    w = _weight_fn(spec.weight())
    lo, hi = _bounds(spec.weight())

    def ordered(fn):
        value, error = integrate.dblquad(
            lambda y, x: fn(x, y) * (y - x) * w(x) * w(y),
            lo,
            hi,
            lambda x: x,
            hi,
            epsabs=cfg["epsabs"],
            epsrel=cfg["epsrel"],
        )
        if error > cfg["max_error"] * max(1.0, abs(value)):
            raise ToleranceNotMetError(f"Quadrature error {error:.3g} exceeds {cfg['max_error']}")
        return value

    norm = ordered(lambda x, y: 1.0)
    values = {}
    for k in range(k_max + 1):
        values[k] = ordered(lambda x, y, k=k: x**k + y**k) / norm
        log.debug("Quadrature m_%d = %.17g", k, values[k])
    return values

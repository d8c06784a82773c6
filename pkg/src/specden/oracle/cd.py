"""
Christoffel-Darboux densities of the ``beta = 2`` ensembles.

For ``beta = 2`` the one-point density is

    ``rho(x) = w(x) / h_0 * sum_{j<N} p_j(x)**2 / nu_j``

with ``p_j`` the monic orthogonal polynomials of ``w``, ``h_0 = integral w``
and ``nu_j = <p_j, p_j> / h_0``. The recurrence coefficients come from the
Stieltjes procedure run on the exact normalized weight moments, so ``P`` is an
exact rational polynomial and only ``h_0`` is transcendental.
"""

import math
import logging
import dataclasses
from fractions import Fraction

import numpy as np
from scipy import special

from specden.errors import UnsupportedNError, UnsupportedBetaError
from specden.exactq import PolyQ
from specden.diffop import weight_denominator, weighted_derivatives
from specden.oracle.residual import poly_values

log = logging.getLogger(__name__)

MAX_CD_N = 12


def weight_moments(weight, count):
    """
    Normalized moments ``integral x**k w / integral w`` of a classical weight.

    Args:
        weight (WeightTag): The weight.
        count (int): Number of moments.

    Returns:
        list: Exact rationals ``mu_0 = 1, mu_1, ...``.
    """
    out = []
    acc = Fraction(1)
    for k in range(count):
        if weight.kind == "gaussian":
            if k % 2:
                out.append(Fraction(0))
                continue
            out.append(acc)
            acc = acc * (k + 1) / (2 * weight.c)
            continue
        out.append(acc)
        if weight.kind == "laguerre":
            acc = acc * (weight.a + 1 + k)
        else:
            acc = acc * (weight.a + 1 + k) / (weight.a + weight.b + 2 + k)
    return out


def weight_mass(weight):
    """
    ``h_0 = integral w`` as a float.

    Args:
        weight (WeightTag): The weight.

    Returns:
        float: ``sqrt(pi/c)``, ``Gamma(a+1)`` or ``B(a+1, b+1)``.
    """
    if weight.kind == "gaussian":
        return math.sqrt(math.pi / float(weight.c))
    if weight.kind == "laguerre":
        return float(special.gamma(float(weight.a) + 1))
    return float(special.beta(float(weight.a) + 1, float(weight.b) + 1))


def _inner(p, q, moments):
    total = Fraction(0)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            total += a * b * moments[i + j]
    return total


def monic_orthogonal(weight, count):
    """
    Monic orthogonal polynomials by the Stieltjes procedure.

    Args:
        weight (WeightTag): The weight.
        count (int): Number of polynomials.

    Returns:
        tuple: ``(polys, norms)`` with ``norms[j] = <p_j, p_j> / h_0``.
    """
    moments = weight_moments(weight, 2 * count + 1)
    x = PolyQ.x()
    polys = [PolyQ((1,))]
    norms = [Fraction(1)]
    prev = PolyQ()
    for j in range(count - 1):
        p = polys[-1]
        alpha = _inner(x * p, p, moments) / norms[-1]
        beta = norms[-1] / norms[-2] if j else Fraction(0)
        nxt = (x - alpha) * p - prev * beta
        prev = p
        polys.append(nxt)
        norms.append(_inner(nxt, nxt, moments))
    return polys, norms


@dataclasses.dataclass(frozen=True)
class CDKernelDensity:
    """
    ``rho(x) = w(x) * P(x) / h_0``.

    Attributes:
        spec (EnsembleSpec): The ensemble (``beta = 2``).
        weight (WeightTag): The weight ``w``.
        poly (PolyQ): The exact polynomial part ``P``.
        mass (str): The closed form of ``h_0``.
    """

    spec: object
    weight: object
    poly: PolyQ
    mass: str

    def replace(self, poly):
        return dataclasses.replace(self, poly=poly)

    def _weight_values(self, x):
        w = self.weight
        if w.kind == "gaussian":
            return np.exp(-float(w.c) * x * x)
        if w.kind == "laguerre":
            return np.power(x, float(w.a)) * np.exp(-x)
        return np.power(x, float(w.a)) * np.power(1 - x, float(w.b))

    def __call__(self, x):
        return self.derivatives(x, 0)[0]

    def derivatives(self, x, order):
        """
        Evaluate ``rho`` and its derivatives.

        Args:
            x (numpy.ndarray): Points inside the support.
            order (int): Highest derivative.

        Returns:
            numpy.ndarray: Shape ``(order + 1, len(x))``.
        """
        x = np.asarray(x, dtype=float)
        base = self._weight_values(x) / weight_mass(self.weight)
        u = weight_denominator(self.weight)
        uval = poly_values(u, x) if u.degree > 0 else np.ones_like(x)
        rows = []
        for q, m in weighted_derivatives(self.poly, self.weight, order):
            rows.append(base * poly_values(q, x) / uval**m)
        return np.array(rows)


def cd_density(spec):
    """
    The exact ``beta = 2`` density of ``spec``.

    Args:
        spec (EnsembleSpec): A numeric ``beta = 2`` ensemble with ``N <= 12``.

    Returns:
        CDKernelDensity: The density.

    Raises:
        UnsupportedBetaError: For ``beta != 2``.
        UnsupportedNError: For symbolic or large ``N``.
    """
    if spec.beta != 2:
        raise UnsupportedBetaError("Christoffel-Darboux densities need beta = 2")
    if spec.symbolic or spec.n > MAX_CD_N:
        raise UnsupportedNError(f"Christoffel-Darboux densities need 1 <= N <= {MAX_CD_N}")
    weight = spec.weight()
    polys, norms = monic_orthogonal(weight, spec.n)
    poly = PolyQ()
    for p, nu in zip(polys, norms):
        poly = poly + p * p / nu
    mass = {
        "gaussian": f"sqrt(pi/{weight.c})",
        "laguerre": f"Gamma({weight.a + 1})",
        "jacobi": f"Beta({weight.a + 1}, {weight.b + 1})",
    }[weight.kind]
    log.debug("CD polynomial of degree %d for %s N=%d", poly.degree, spec.family, spec.n)
    return CDKernelDensity(spec, weight, poly, mass)


def gue_density(n, x):
    """
    The GUE density for the weight ``exp(-x**2)`` from Hermite functions.

    The orthonormal functions follow the stable three-term recurrence, so
    large ``N`` does not overflow.

    Args:
        n (int): Matrix size.
        x (numpy.ndarray): Points.

    Returns:
        numpy.ndarray: ``sum_{j<N} phi_j(x)**2``.
    """
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.pi**-0.25 * np.exp(-x * x / 2)
    total = cur * cur
    for j in range(n - 1):
        nxt = np.sqrt(2.0 / (j + 1)) * x * cur - np.sqrt(j / (j + 1)) * prev
        prev, cur = cur, nxt
        total = total + cur * cur
    return total

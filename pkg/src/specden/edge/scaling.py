"""
Edge scaling maps.

An :py:class:`EdgeScalingMap` sends the edge variable ``x`` to the raw
eigenvalue variable ``center + orientation * scale * x``. The scaled density
``scale * rho_N(center + orientation * scale * x)`` tends to the universal
soft or hard edge density. Every map carries the shift that gives the fastest
convergence; ``optimal=False`` drops it.
"""

import math
import logging
import dataclasses

from specden.errors import (
    InvalidSpecError,
    NoHardEdgeError,
    UnsupportedFamilyError,
)
from specden.diffop import Scaled

log = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class EdgeScalingMap:
    """
    An affine edge map.

    Attributes:
        spec (EnsembleSpec): The ensemble.
        kind (str): ``"soft"`` or ``"hard"``.
        side (str): ``"largest"`` or ``"smallest"`` eigenvalue.
        center (float): ``c_0``.
        scale (float): ``c_1 > 0``.
        orientation (int): ``+1`` or ``-1``; ``-1`` points into the bulk to the left.
        delta (float): The shift included in ``center`` (zero for the plain map).
        q_plus (float): ``sqrt(1 + alpha/kappa) + 1`` for Laguerre maps.
        q_minus (float): ``sqrt(1 + alpha/kappa) - 1`` for Laguerre maps.
        exponent (Fraction): The weight exponent at a hard edge.
    """

    spec: object
    kind: str
    side: str
    center: float
    scale: float
    orientation: int = 1
    delta: float = 0.0
    q_plus: float = None
    q_minus: float = None
    exponent: object = None

    def raw(self, x):
        """
        Map edge coordinates to eigenvalue coordinates.

        Args:
            x (float or numpy.ndarray): Edge coordinates.

        Returns:
            float or numpy.ndarray: ``center + orientation * scale * x``.
        """
        return self.center + self.orientation * self.scale * x

    def density(self, rho):
        """
        Rescale a finite-``N`` density to the edge variable.

        Args:
            rho (callable): The density in eigenvalue coordinates.

        Returns:
            callable: ``x -> scale * rho(raw(x))``.
        """
        return lambda x: self.scale * rho(self.raw(x))

    def to_dict(self):
        return {
            "kind": self.kind,
            "side": self.side,
            "spec": self.spec.to_dict(),
            "center": format(self.center, ".17g"),
            "scale": format(self.scale, ".17g"),
            "orientation": self.orientation,
            "delta": format(self.delta, ".17g"),
            "q_plus": None if self.q_plus is None else format(self.q_plus, ".17g"),
            "q_minus": None if self.q_minus is None else format(self.q_minus, ".17g"),
            "exponent": None if self.exponent is None else str(self.exponent),
        }


def _gaussian(spec, kind, side, optimal):
    if kind == "hard":
        raise NoHardEdgeError("The Gaussian ensembles have soft edges only")
    n, kappa = spec.n, float(spec.kappa)
    # exp(-c x^2) is the unit weight in x*sqrt(c)
    unit = 1 / math.sqrt(float(spec.weight().c))
    delta = (1 - 1 / kappa) / (2 * math.sqrt(2 * n)) if optimal else 0.0
    center = math.sqrt(kappa) * (math.sqrt(2 * n) + delta) * unit
    scale = math.sqrt(kappa) / (math.sqrt(2) * n ** (1 / 6)) * unit
    sign = 1 if side == "largest" else -1
    return EdgeScalingMap(spec, kind, side, sign * center, scale, sign, delta)


def _laguerre_soft(spec, side, optimal):
    n, kappa = spec.n, float(spec.kappa)
    alpha = float(spec.a.alpha) if isinstance(spec.a, Scaled) else 0.0
    root = math.sqrt(1 + alpha / kappa)
    q_plus, q_minus = root + 1, root - 1
    if side == "largest":
        if alpha == 0:
            delta = 2 * float(spec.param("a")) / kappa if optimal else 0.0
            center = kappa * (4 * n + delta)
            scale = kappa * 2 * (2 * n) ** (1 / 3)
        else:
            delta = (1 - 1 / kappa) * (alpha / kappa) / (2 * root) if optimal else 0.0
            center = kappa * (q_plus**2 * n + delta)
            scale = kappa * q_plus / (q_plus - 1) * (q_plus * n) ** (1 / 3)
        return EdgeScalingMap(spec, "soft", side, center, scale, 1, delta, q_plus, q_minus)
    if alpha <= 0:
        raise InvalidSpecError("A soft smallest-eigenvalue edge needs a = alpha*N with alpha > 0")
    delta = (1 - 1 / kappa) * (alpha / kappa) / (2 * root) if optimal else 0.0
    center = kappa * (q_minus**2 * n - delta)
    scale = kappa * q_minus * (q_minus * n / (q_minus + 1)) ** (1 / 3)
    return EdgeScalingMap(spec, "soft", side, center, scale, -1, delta, q_plus, q_minus)


def _laguerre_hard(spec, side, optimal):
    if side != "smallest" or isinstance(spec.a, Scaled):
        raise NoHardEdgeError("The Laguerre hard edge is the smallest eigenvalue with a = O(1)")
    n, kappa, a = spec.n, float(spec.kappa), spec.param("a")
    denom = 4 * n + (2 * float(a) / kappa if optimal else 0.0)
    return EdgeScalingMap(
        spec, "hard", side, 0.0, kappa / denom, 1, denom - 4 * n, exponent=a
    )


def _jacobi_hard(spec, side, optimal):
    near, far = (spec.a, spec.b) if side == "smallest" else (spec.b, spec.a)
    if isinstance(near, Scaled):
        raise NoHardEdgeError("A Jacobi hard edge needs an O(1) exponent")
    n, kappa = spec.n, float(spec.kappa)
    stretch = 1.0
    if isinstance(far, Scaled) and optimal:
        stretch = 1 + float(far.alpha) / kappa
    scale = 1 / (4 * stretch * n * n)
    if side == "smallest":
        return EdgeScalingMap(spec, "hard", side, 0.0, scale, 1, exponent=near)
    return EdgeScalingMap(spec, "hard", side, 1.0, scale, -1, exponent=near)


def edge_scaling_map(spec, kind="soft", side=None, optimal=True):
    """
    The edge map of a numeric ensemble.

    Args:
        spec (EnsembleSpec): A numeric ensemble.
        kind (str): ``"soft"`` or ``"hard"``.
        side (str, optional): ``"largest"`` or ``"smallest"``. Defaults to
            the largest eigenvalue for soft edges and the smallest for hard ones.
        optimal (bool): Include the convergence-optimal shift.

    Returns:
        EdgeScalingMap: The map.

    Raises:
        NoHardEdgeError: For a hard edge where the density has none.
        UnsupportedFamilyError: For Jacobi soft edges.
        InvalidSpecError: For symbolic ``N`` or unknown ``kind``/``side``.
    """
    if spec.symbolic:
        raise InvalidSpecError("Edge maps need a numeric N")
    if kind not in ("soft", "hard"):
        raise InvalidSpecError(f"Unknown edge kind: {kind}")
    side = side or ("largest" if kind == "soft" else "smallest")
    if side not in ("largest", "smallest"):
        raise InvalidSpecError(f"Unknown edge side: {side}")
    if spec.family == "gaussian":
        return _gaussian(spec, kind, side, optimal)
    if spec.family == "laguerre":
        if kind == "soft":
            return _laguerre_soft(spec, side, optimal)
        return _laguerre_hard(spec, side, optimal)
    if kind == "soft":
        raise UnsupportedFamilyError("Jacobi soft edge maps are not available")
    return _jacobi_hard(spec, side, optimal)

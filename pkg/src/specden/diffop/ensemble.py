"""
Ensemble specifications and weight tags.

An :py:class:`EnsembleSpec` fixes the family, the Dyson index ``beta``, the
matrix size ``N`` (an integer or the symbol ``N``) and the weight
parameters. The weights are

* Gaussian: ``exp(-N*kappa*x**2/(2*g))``, or ``exp(-x**2)`` for the unit weight,
* Laguerre: ``x**a * exp(-x)`` on ``(0, inf)``,
* Jacobi: ``x**a * (1-x)**b`` on ``(0, 1)``,

with ``kappa = beta/2``. Laguerre and Jacobi exponents may scale with ``N``
(``a = alpha*N + delta``), see :py:class:`Scaled`.
"""

import dataclasses
from fractions import Fraction

from specden.errors import InvalidSpecError
from specden.exactq import RatFun, as_scalar

FAMILIES = ("gaussian", "laguerre", "jacobi")


@dataclasses.dataclass(frozen=True)
class Scaled:
    """A parameter of the form ``alpha*N + delta``."""

    alpha: Fraction
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        object.__setattr__(self, "delta", as_scalar(self.delta))

    def value(self, n):
        return self.alpha * n + self.delta

    def __str__(self):
        return f"{self.alpha}*N + {self.delta}"


@dataclasses.dataclass(frozen=True)
class WeightTag:
    """
    A classical weight with rational exponents.

    ``kind`` is one of ``"gaussian"`` (``exp(-c*x**2)``), ``"laguerre"``
    (``x**a * exp(-x)``) or ``"jacobi"`` (``x**a * (1-x)**b``).
    """

    kind: str
    c: Fraction = Fraction(1)
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @classmethod
    def gaussian(cls, c=1):
        return cls("gaussian", c=as_scalar(c))

    @classmethod
    def laguerre(cls, a):
        return cls("laguerre", a=as_scalar(a))

    @classmethod
    def jacobi(cls, a, b):
        return cls("jacobi", a=as_scalar(a), b=as_scalar(b))


def _param(value):
    if value is None:
        return Fraction(0)
    if isinstance(value, Scaled):
        return value
    return as_scalar(value)


@dataclasses.dataclass(frozen=True)
class EnsembleSpec:
    """
    A classical beta-ensemble.

    Attributes:
        family (str): ``"gaussian"``, ``"laguerre"`` or ``"jacobi"``.
        beta (Fraction): The Dyson index.
        n (int): Matrix size, or :py:data:`None` for the symbol ``N``.
        a (Fraction or Scaled): Laguerre/Jacobi exponent at ``x = 0``.
        b (Fraction or Scaled): Jacobi exponent at ``x = 1``.
        gaussian_g (Fraction): Gaussian coupling ``g``; :py:data:`None` selects
            the unit weight ``exp(-x**2)``.
    """

    family: str
    beta: Fraction
    n: int = None
    a: object = Fraction(0)
    b: object = Fraction(0)
    gaussian_g: Fraction = None

    def __post_init__(self):
        family = str(self.family).lower()
        if family not in FAMILIES:
            raise InvalidSpecError(f"Unknown ensemble family: {self.family}")
        object.__setattr__(self, "family", family)
        try:
            beta = as_scalar(self.beta)
        except (TypeError, ValueError) as exc:
            raise InvalidSpecError(f"Invalid beta: {self.beta}") from exc
        if beta <= 0:
            raise InvalidSpecError("beta must be positive")
        object.__setattr__(self, "beta", beta)
        if self.n is not None:
            if int(self.n) != self.n or self.n < 1:
                raise InvalidSpecError("N must be a positive integer")
            object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "a", _param(self.a))
        object.__setattr__(self, "b", _param(self.b))
        if self.gaussian_g is not None:
            object.__setattr__(self, "gaussian_g", as_scalar(self.gaussian_g))
        self._check_exponents()

    def _check_exponents(self):
        if self.n is None:
            return
        if self.family in {"laguerre", "jacobi"} and self.param("a") <= -1:
            raise InvalidSpecError("The exponent a must exceed -1")
        if self.family == "jacobi" and self.param("b") <= -1:
            raise InvalidSpecError("The exponent b must exceed -1")

    @property
    def kappa(self):
        return self.beta / 2

    @property
    def symbolic(self):
        return self.n is None

    def n_value(self):
        """
        The matrix size as an exact scalar.

        Returns:
            Fraction or RatFun: ``N`` itself in symbolic mode.
        """
        if self.n is None:
            return RatFun.n()
        return Fraction(self.n)

    def param(self, name):
        """
        Resolve ``a`` or ``b`` against the matrix size.

        Args:
            name (str): ``"a"`` or ``"b"``.

        Returns:
            Fraction or RatFun: The exact parameter value.
        """
        value = getattr(self, name)
        if isinstance(value, Scaled):
            return value.value(self.n_value())
        return value

    def g(self):
        """
        The Gaussian coupling, with the unit weight mapped to ``g = N*kappa/2``.

        Returns:
            Fraction or RatFun: ``g``.
        """
        if self.gaussian_g is None:
            return self.n_value() * self.kappa / 2
        return self.gaussian_g

    def weight(self):
        """
        The one-body weight of a numeric specification.

        Returns:
            WeightTag: The weight.
        """
        if self.family == "gaussian":
            if self.gaussian_g is None:
                return WeightTag.gaussian(1)
            return WeightTag.gaussian(self.n_value() * self.kappa / (2 * self.gaussian_g))
        if self.family == "laguerre":
            return WeightTag.laguerre(self.param("a"))
        return WeightTag.jacobi(self.param("a"), self.param("b"))

    def with_n(self, n):
        return dataclasses.replace(self, n=n)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        """
        JSON-ready description.

        Returns:
            dict: Exact values as strings.
        """

        def text(value):
            if isinstance(value, Scaled):
                return {"alpha": str(value.alpha), "delta": str(value.delta)}
            return str(value)

        return {
            "family": self.family,
            "beta": str(self.beta),
            "n": "N" if self.n is None else self.n,
            "a": text(self.a),
            "b": text(self.b),
            "gaussian_g": "unit" if self.gaussian_g is None else str(self.gaussian_g),
        }

    @classmethod
    def from_dict(cls, data):
        def value(item):
            if isinstance(item, dict):
                return Scaled(Fraction(item["alpha"]), Fraction(item["delta"]))
            return Fraction(item)

        return cls(
            family=data["family"],
            beta=Fraction(data["beta"]),
            n=None if data["n"] == "N" else int(data["n"]),
            a=value(data["a"]),
            b=value(data["b"]),
            gaussian_g=None if data["gaussian_g"] == "unit" else Fraction(data["gaussian_g"]),
        )

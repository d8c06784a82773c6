from specden.exactq.polyq import PolyQ, poly_gcd, as_scalar
from specden.exactq.ratfun import RatFun, ratfun_normalize
from specden.exactq.series import (
    InvXSeries,
    series_from_moments,
    series_apply_diffop,
)

__all__ = [
    "InvXSeries",
    "PolyQ",
    "RatFun",
    "as_scalar",
    "poly_gcd",
    "ratfun_normalize",
    "series_apply_diffop",
    "series_from_moments",
]

"""
Exact moment recurrences, 1/N expansions and edge densities for the
classical beta-ensembles.
"""

import logging
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("specden")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())

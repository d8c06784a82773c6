"""
Library configuration.

Defaults live in :py:data:`DEFAULTS`. A JSON file named by the
``SPECDEN_CONFIG`` environment variable may override any subset of them,
section by section. Values are read as ``config["edge"]["rtol"]``.
"""

import os
import copy
import json
import logging

from specden.errors import InvalidSpecError

log = logging.getLogger(__name__)

DEFAULTS = {
    "moments": {
        # Extra terms kept when dividing a rational function of N in 1/N.
        "guard_terms": 4,
    },
    "bruteforce": {
        "max_monomials": 200000,
    },
    "quadrature": {
        "epsabs": 1e-12,
        "epsrel": 1e-12,
        "max_error": 1e-10,
        "gaussian_cutoff": 12.0,
        "laguerre_cutoff": 120.0,
    },
    "mc": {
        "samples": 100000,
        "workers": 1,
        "max_n": 64,
        "max_samples": 10**7,
    },
    "edge": {
        "rtol": 1e-11,
        "atol": 1e-40,
        "soft_seed_point": 10.0,
        "tail_terms": 10,
        "bulk_window": 2.0,
        "seed_tolerance": 1e-6,
        "bulk_seed_tolerance": 5e-2,
        "residual_tolerance": 1e-6,
        "hard_rtol": 1e-13,
        "hard_residual_tolerance": 1e-8,
        "oracle_tolerance": 1e-6,
        "residual_step": 1e-3,
        "frobenius_point": 0.25,
        "frobenius_terms": 80,
        "grid_points": 601,
    },
    "fixtures": {
        "trials": 3,
        "k_min": -3,
        "k_max": 25,
    },
    "resolvent": {
        "truncation_margin": 4,
    },
    "seed": 20240611,
}


def _merge(base, override):
    """
    Recursively overlay ``override`` on ``base``.

    Args:
        base (dict): The defaults (modified in place).
        override (dict): User values.

    Returns:
        dict: ``base`` after the overlay.

    Raises:
        InvalidSpecError: If ``override`` names an unknown key.
    """
    for key, value in override.items():
        if key not in base:
            raise InvalidSpecError(f"Unknown configuration key: {key}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise InvalidSpecError(f"Configuration section {key} must be a mapping")
            _merge(base[key], value)
        else:
            base[key] = value
    return base


def load_config(path=None):
    """
    Build the configuration from the defaults and an optional JSON file.

    Args:
        path (str, optional): JSON file with overrides. Defaults to the value of
            ``SPECDEN_CONFIG`` or no file.

    Returns:
        dict: The merged configuration.

    Raises:
        InvalidSpecError: If the file cannot be parsed.
    """
    cfg = copy.deepcopy(DEFAULTS)
    path = path or os.environ.get("SPECDEN_CONFIG")
    if path:
        log.debug("Loading configuration overrides from %s", path)
        try:
            with open(path, "r", encoding="utf-8") as f_hand:
                override = json.load(f_hand)
        except (OSError, ValueError) as exc:
            raise InvalidSpecError(f"Cannot read configuration {path}: {exc}") from exc
        _merge(cfg, override)
    seed = os.environ.get("SPECDEN_SEED")
    if seed:
        try:
            cfg["seed"] = int(seed)
        except ValueError as exc:
            raise InvalidSpecError("SPECDEN_SEED must be an integer") from exc
    return cfg


config = load_config()

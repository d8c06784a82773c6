"""
Monte Carlo moments from the tridiagonal beta-ensemble models.

Gaussian: a symmetric tridiagonal matrix with normal diagonal and chi
distributed off-diagonal (degrees of freedom ``beta*(N-1), ..., beta``).
Laguerre: ``B B^T`` for a bidiagonal ``B`` with chi entries. Eigenvalues are
rescaled to the weights ``exp(-c x**2)`` and ``x**a exp(-x)``.

Every worker draws from its own Philox stream spawned from one
:py:class:`numpy.random.SeedSequence`, so results depend only on
``(seed, workers)``.
"""

import math
import logging
import dataclasses
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import linalg

from specden.config import config
from specden.errors import (
    SizeLimitError,
    InvalidSpecError,
    UnsupportedNError,
    UnsupportedFamilyError,
)

log = logging.getLogger(__name__)

CHUNK = 10000


def tridiagonal_eigenvalues(diag, off):
    """
    Eigenvalues of a symmetric tridiagonal matrix.

    Args:
        diag (array_like): The diagonal.
        off (array_like): The off-diagonal.

    Returns:
        numpy.ndarray: Ascending eigenvalues.
    """
    return linalg.eigh_tridiagonal(np.asarray(diag, float), np.asarray(off, float), eigvals_only=True)


def _chi(rng, dofs, size):
    return np.sqrt(rng.chisquare(dofs, size=(size, len(dofs))))


def _batch_eigenvalues(diag, off):
    if diag.shape[1] == 1:
        return diag.copy()
    return np.stack([tridiagonal_eigenvalues(d, e) for d, e in zip(diag, off)])


def _gaussian_sample(rng, spec, size):
    n, beta = spec.n, float(spec.beta)
    diag = rng.normal(0.0, math.sqrt(2.0), size=(size, n))
    off = _chi(rng, beta * np.arange(n - 1, 0, -1), size) if n > 1 else np.zeros((size, 0))
    eig = _batch_eigenvalues(diag, off) / math.sqrt(2.0)
    # density exp(-lambda^2/2) -> exp(-c x^2)
    return eig / math.sqrt(2.0 * float(spec.weight().c))


def _laguerre_sample(rng, spec, size):
    n, beta = spec.n, float(spec.beta)
    shape = float(spec.param("a")) + 1 + beta * (n - 1) / 2
    d = _chi(rng, 2 * shape - beta * np.arange(n), size)
    e = _chi(rng, beta * np.arange(n - 1, 0, -1), size) if n > 1 else np.zeros((size, 0))
    diag = d * d
    diag[:, 1:] += e * e
    off = d[:, :-1] * e
    # density lambda^(shape-p) exp(-lambda/2) -> x^a exp(-x)
    return _batch_eigenvalues(diag, off) / 2.0


_SAMPLERS = {"gaussian": _gaussian_sample, "laguerre": _laguerre_sample}


@dataclasses.dataclass
class MCEstimate:
    """
    Monte Carlo moment estimates.

    Attributes:
        spec (EnsembleSpec): The ensemble.
        samples (int): Number of matrices.
        seed (int): Root seed.
        workers (int): Number of independent streams.
        mean (dict): ``k -> estimate of m_k``.
        stderr (dict): ``k -> standard error``.
    """

    spec: object
    samples: int
    seed: int
    workers: int
    mean: dict
    stderr: dict

    def within(self, exact, k, sigmas=4.0):
        """
        Whether an exact value lies within ``sigmas`` standard errors.

        Args:
            exact (object): The exact moment.
            k (int): Moment index.
            sigmas (float): Width of the acceptance band.

        Returns:
            bool: The test outcome.
        """
        return abs(self.mean[k] - float(exact)) <= sigmas * self.stderr[k]

    def to_dict(self):
        return {
            "kind": "mc",
            "spec": self.spec.to_dict(),
            "samples": self.samples,
            "seed": self.seed,
            "workers": self.workers,
            "mean": {str(k): format(v, ".17g") for k, v in sorted(self.mean.items())},
            "stderr": {str(k): format(v, ".17g") for k, v in sorted(self.stderr.items())},
        }


def _worker(sampler, spec, seq, size, k_max):
    rng = np.random.Generator(np.random.Philox(seq))
    sums = np.zeros(k_max + 1)
    squares = np.zeros(k_max + 1)
    done = 0
    while done < size:
        chunk = min(CHUNK, size - done)
        eig = sampler(rng, spec, chunk)
        powers = np.stack([np.sum(eig**k, axis=1) for k in range(k_max + 1)])
        sums += np.sum(powers, axis=1)
        squares += np.sum(powers * powers, axis=1)
        done += chunk
    return sums, squares


def mc_moments(spec, samples=None, seed=None, k_max=6, workers=None):
    """
    Estimate ``m_0 .. m_{k_max}`` by sampling.

    Args:
        spec (EnsembleSpec): A numeric Gaussian or Laguerre ensemble; any ``beta > 0``.
        samples (int, optional): Number of matrices. Defaults to the configured value.
        seed (int, optional): Root seed. Defaults to the configured seed.
        k_max (int): Largest moment index.
        workers (int, optional): Independent streams. Defaults to the configured value.

    Returns:
        MCEstimate: Means and standard errors.

    Raises:
        UnsupportedFamilyError: For the Jacobi ensembles.
        UnsupportedNError: For symbolic or large ``N``.
        SizeLimitError: For too many samples.
    """
    cfg = config["mc"]
    samples = cfg["samples"] if samples is None else samples
    seed = config["seed"] if seed is None else seed
    workers = cfg["workers"] if workers is None else workers
    if spec.family not in _SAMPLERS:
        raise UnsupportedFamilyError(f"No sampling model for the {spec.family} ensemble")
    if spec.symbolic or spec.n > cfg["max_n"]:
        raise UnsupportedNError(f"Monte Carlo needs 1 <= N <= {cfg['max_n']}")
    if samples > cfg["max_samples"]:
        raise SizeLimitError(f"At most {cfg['max_samples']} samples are allowed")
    if samples < 2 or workers < 1:
        raise InvalidSpecError("Monte Carlo needs at least two samples and one worker")
    sampler = _SAMPLERS[spec.family]
    seqs = np.random.SeedSequence(seed).spawn(workers)
    sizes = [samples // workers + (i < samples % workers) for i in range(workers)]
    log.info("Sampling %d matrices on %d stream(s), seed %d", samples, workers, seed)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda job: _worker(sampler, spec, job[0], job[1], k_max), zip(seqs, sizes)))
    sums = np.zeros(k_max + 1)
    squares = np.zeros(k_max + 1)
    for part_sums, part_squares in parts:
        sums += part_sums
        squares += part_squares
    mean = sums / samples
    var = np.maximum(squares / samples - mean * mean, 0.0) * samples / (samples - 1)
    stderr = np.sqrt(var / samples)
    return MCEstimate(
        spec,
        samples,
        seed,
        workers,
        {k: float(mean[k]) for k in range(k_max + 1)},
        {k: float(stderr[k]) for k in range(k_max + 1)},
    )

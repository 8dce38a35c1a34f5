"""Synthetic data generators for the experiment runners.

All randomness flows through numpy's PCG64 generator seeded explicitly;
replicate substreams are split with ``SeedSequence.spawn`` so runs are
reproducible bit for bit on a fixed platform.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError, NumericalError


def gen_clustered_signal(p, cluster_values, cluster_sizes, shuffle=False,
                         seed=0):
    """Piecewise-constant signal with the given cluster values and sizes.

    With ``shuffle`` the entries are permuted by the seeded generator (one
    ``permutation(p)`` draw).
    """
    values = np.asarray(cluster_values, dtype=np.float64)
    sizes = np.asarray(cluster_sizes, dtype=np.int64)
    if values.size != sizes.size:
        raise ConfigurationError("one size per cluster value required")
    if int(sizes.sum()) != int(p):
        raise ConfigurationError("cluster sizes must sum to p")
    x = np.repeat(values, sizes)
    if shuffle:
        rng = np.random.default_rng(seed)
        x = x[rng.permutation(p)]
    return x


def gen_toeplitz_design(n, p, rho, seed=0):
    """Gaussian design with rows of covariance rho^|i-j| (Cholesky coloring)."""
    if not 0.0 <= rho < 1.0:
        raise ConfigurationError("rho must be in [0, 1)")
    idx = np.arange(p)
    sigma = rho ** np.abs(idx[:, None] - idx[None, :])
    try:
        chol = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Cholesky factorization failed: {exc}") from exc
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, p)) @ chol.T


def add_noise_sigma(x, sigma, seed=0):
    """Additive Gaussian noise of the given standard deviation."""
    if sigma < 0:
        raise ConfigurationError("sigma must be nonnegative")
    rng = np.random.default_rng(seed)
    return np.asarray(x, dtype=np.float64) + sigma * rng.standard_normal(len(x))


def add_noise_snr(signal, snr, seed=0):
    """Additive Gaussian noise scaled so ||signal|| / ||noise|| equals snr."""
    if not snr > 0:
        raise ConfigurationError("snr must be positive")
    signal = np.asarray(signal, dtype=np.float64)
    norm = np.linalg.norm(signal)
    if norm == 0.0:
        raise ConfigurationError("cannot scale noise against a zero signal")
    rng = np.random.default_rng(seed)
    eps = rng.standard_normal(signal.size)
    eps *= norm / (snr * np.linalg.norm(eps))
    return signal + eps

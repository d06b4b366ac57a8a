"""Photon-count simulation via the Born rule.

Counts are deterministic expectations: the noise channel in this model is the
jitter distortion of the operators, not shot noise.  ``expected_counts`` uses
the ideal operators (what a reconstruction assumes), ``measured_counts`` the
jitter-convolved ones (what the detector actually delivers).
"""

import numpy as np

from .errors import DimensionMismatch
from .povm import TimeGrid, ideal_matrices, jittered_matrices
from .pulse import PulseConfig


def _born_counts(ops: np.ndarray, rho: np.ndarray, photons: int) -> np.ndarray:
    # N * Tr(M_k rho); the trace is real for Hermitian operands, and
    # nonnegative up to round-off, which the clip absorbs.
    k = ops.shape[0]
    counts = photons * (ops.reshape(k, -1) @ rho.T.ravel()).real
    return np.maximum(counts, 0.0)


def _check_dim(rho: np.ndarray, cfg: PulseConfig):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (cfg.dim, cfg.dim):
        raise DimensionMismatch(f"state is {rho.shape}, config says d={cfg.dim}")
    return rho


def expected_counts(rho: np.ndarray, grid: TimeGrid, cfg: PulseConfig) -> np.ndarray:
    """n_k = N * Tr(M(t_k) rho) over the grid, using ideal operators."""
    rho = _check_dim(rho, cfg)
    return _born_counts(ideal_matrices(cfg, grid.instants), rho, cfg.photons)


def measured_counts(rho: np.ndarray, grid: TimeGrid, cfg: PulseConfig) -> np.ndarray:
    """n_k = N * Tr(M_D(t_k) rho) over the grid, using jittered operators."""
    rho = _check_dim(rho, cfg)
    return _born_counts(jittered_matrices(cfg, grid.instants), rho, cfg.photons)

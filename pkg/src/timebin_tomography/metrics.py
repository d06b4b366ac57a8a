"""Closeness measures between states and their worst-case aggregation.

Fidelity follows the Uhlmann formula

    F(a, b) = ( Tr sqrt( sqrt(a) b sqrt(a) ) )^2,

trace distance is ``D(a, b) = Tr|a - b| / 2``.  Reconstruction quality over a
sample of inputs is summarized by the minimum fidelity and the maximum trace
distance, i.e. the worst case over the sample.
"""

import numpy as np

from .errors import DimensionMismatch, EmptySample
from .linalg import hermitize, psd_sqrt


def _check_same_dim(a: np.ndarray, b: np.ndarray):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"incompatible shapes {a.shape} and {b.shape}")
    return a, b


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Uhlmann fidelity in [0, 1]; 1 iff the states coincide.

    Symmetric in its arguments up to round-off; values overshooting [0, 1]
    by round-off are clamped.
    """
    a, b = _check_same_dim(a, b)
    root = psd_sqrt(a)
    inner = hermitize(root @ b @ root)
    eigs = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    value = float(np.sum(np.sqrt(eigs)) ** 2)
    return min(max(value, 0.0), 1.0)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the trace norm of (a - b): sum of |eigenvalues| / 2."""
    a, b = _check_same_dim(a, b)
    eigs = np.linalg.eigvalsh(hermitize(a - b))
    return float(0.5 * np.sum(np.abs(eigs)))


def min_fidelity(sample, reconstruct):
    """Worst-case fidelity of ``reconstruct`` over a sample of input states.

    Parameters
    ----------
    sample : StateSample
        Input states to stress the reconstruction with.
    reconstruct : callable
        Maps an input density matrix to its reconstructed one.

    Returns
    -------
    (value, index)
        The minimum fidelity and the index of the first state attaining it.
    """
    if len(sample.states) == 0:
        raise EmptySample("cannot minimize over an empty sample")
    worst = None
    worst_idx = -1
    for i, rho in enumerate(sample.states):
        f = fidelity(rho, reconstruct(rho))
        if worst is None or f < worst:
            worst, worst_idx = f, i
    return worst, worst_idx


def max_trace_distance(sample, reconstruct):
    """Worst-case trace distance over a sample; mirror of :func:`min_fidelity`."""
    if len(sample.states) == 0:
        raise EmptySample("cannot maximize over an empty sample")
    worst = None
    worst_idx = -1
    for i, rho in enumerate(sample.states):
        dist = trace_distance(rho, reconstruct(rho))
        if worst is None or dist > worst:
            worst, worst_idx = dist, i
    return worst, worst_idx

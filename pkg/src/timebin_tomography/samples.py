"""Input-state samples for worst-case tomography benchmarks.

Two kinds of sample per dimension: a product grid covering pure and mixed
states (for complete tomography), and a relative-phase family of fixed
populations (for phase estimation).  Grid sizes are chosen so that ``n``
points per axis give ``n^3`` (grids) or ``n^2``/``n`` (phase families)
states; coordinate degeneracies (r = 0, poles) are kept as duplicates so the
advertised sample size is exact.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class StateSample:
    """A list of density matrices with the parameters that generated them."""

    states: list
    label: str
    params: Optional[list] = None

    def __len__(self):
        return len(self.states)


def _require(n: int, minimum: int = 2):
    if n < minimum:
        raise ValueError(f"need at least {minimum} points per axis, got {n}")


def qubit_grid(n_per_axis: int = 21) -> StateSample:
    """Product grid over the Bloch ball: rho = (I + r n_hat . sigma) / 2.

    ``r`` runs over [0, 1], the polar angle over [0, pi], the azimuth over
    [0, 2 pi); ``n_per_axis`` points each, ``n_per_axis**3`` states total
    (21 gives the canonical 9261).
    """
    _require(n_per_axis)
    radii = np.linspace(0.0, 1.0, n_per_axis)
    thetas = np.linspace(0.0, np.pi, n_per_axis)
    phis = np.linspace(0.0, 2.0 * np.pi, n_per_axis, endpoint=False)
    eye = np.eye(2, dtype=complex)
    states, params = [], []
    for r in radii:
        for th in thetas:
            sin_th, cos_th = np.sin(th), np.cos(th)
            for ph in phis:
                direction = (
                    sin_th * np.cos(ph) * _PAULI_X
                    + sin_th * np.sin(ph) * _PAULI_Y
                    + cos_th * _PAULI_Z
                )
                states.append(0.5 * (eye + r * direction))
                params.append((float(r), float(th), float(ph)))
    return StateSample(states, f"qubit-grid-{len(states)}", params)


def _phase_ket(phi12: float, phi13: float) -> np.ndarray:
    return np.array([1.0, np.exp(1j * phi12), np.exp(1j * phi13)]) / np.sqrt(3.0)


def qutrit_grid(n_per_axis: int = 21) -> StateSample:
    """Purity-phase product grid: rho = p |psi><psi| + (1-p) I/3.

    ``|psi>`` is the equal-amplitude qutrit with relative phases
    (phi12, phi13); ``p`` runs over [0, 1] and each phase over [0, 2 pi),
    ``n_per_axis`` points per axis.
    """
    _require(n_per_axis)
    purities = np.linspace(0.0, 1.0, n_per_axis)
    phases = np.linspace(0.0, 2.0 * np.pi, n_per_axis, endpoint=False)
    mixed = np.eye(3, dtype=complex) / 3.0
    states, params = [], []
    for p in purities:
        for p12 in phases:
            for p13 in phases:
                ket = _phase_ket(p12, p13)
                states.append(p * np.outer(ket, ket.conj()) + (1.0 - p) * mixed)
                params.append((float(p), float(p12), float(p13)))
    return StateSample(states, f"qutrit-grid-{len(states)}", params)


def qubit_phase_family(n: int = 201) -> StateSample:
    """Equatorial qubits rho(phi) = [[1, e^{-i phi}], [e^{i phi}, 1]] / 2.

    ``phi`` uniform on [0, 2 pi] including both endpoints.
    """
    _require(n)
    states, params = [], []
    for phi in np.linspace(0.0, 2.0 * np.pi, n):
        e = np.exp(1j * phi)
        states.append(0.5 * np.array([[1.0, e.conjugate()], [e, 1.0]]))
        params.append((float(phi),))
    return StateSample(states, f"qubit-phase-{n}", params)


def qutrit_phase_family(n_per_axis: int = 41) -> StateSample:
    """Pure equal-population qutrits parameterized by two relative phases.

    Both phases run over a uniform ``n_per_axis``-point grid on [0, 2 pi]
    (endpoints included), ``n_per_axis**2`` states (41 gives 1681).
    """
    _require(n_per_axis)
    phases = np.linspace(0.0, 2.0 * np.pi, n_per_axis)
    states, params = [], []
    for p12 in phases:
        for p13 in phases:
            ket = _phase_ket(p12, p13)
            states.append(np.outer(ket, ket.conj()))
            params.append((float(p12), float(p13)))
    return StateSample(states, f"qutrit-phase-{len(states)}", params)


def random_sample(dim: int, count: int, seed: int) -> StateSample:
    """Hilbert-Schmidt random mixed states rho = G G† / Tr(G G†).

    Not the default anywhere; exposed for sweeps that want an unstructured
    sample instead of the product grids.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    states = []
    for _ in range(count):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        gram = g @ g.conj().T
        states.append(gram / np.trace(gram).real)
    return StateSample(states, f"random-d{dim}-{count}", None)

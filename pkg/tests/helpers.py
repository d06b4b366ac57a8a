"""Shared test utilities: random states and quadrature baselines."""

import numpy as np

from timebin_tomography.pulse import PulseConfig, amplitude, dispersed_width


def random_density(rng, dim):
    """Hilbert-Schmidt random mixed state."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    gram = g @ g.conj().T
    return gram / np.trace(gram).real


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (g + g.conj().T)


def random_psd(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return g @ g.conj().T


def equatorial_qubit(phi):
    e = np.exp(1j * phi)
    return 0.5 * np.array([[1.0, e.conjugate()], [e, 1.0]])


def intensity_axis(cfg: PulseConfig, n=20001, pad_sigmas=10.0):
    """Dense time axis covering all bins out to ``pad_sigmas`` widths."""
    reach = pad_sigmas * max(dispersed_width(cfg), cfg.sigma_d, cfg.sigma0)
    return np.linspace(-reach, (cfg.dim - 1) * cfg.tau + reach, n)


def quad_norm(cfg: PulseConfig, bin_index=0, n=20001):
    """Trapezoid integral of |u_bin|^2 over a generous axis."""
    t = intensity_axis(cfg, n)
    u = amplitude(cfg, bin_index, t)
    return np.trapezoid(np.abs(u) ** 2, t)


def quad_std(cfg: PulseConfig, bin_index=0, n=40001):
    """Intensity standard deviation of one bin by quadrature."""
    t = intensity_axis(cfg, n)
    w = np.abs(amplitude(cfg, bin_index, t)) ** 2
    mean = np.trapezoid(t * w, t)
    var = np.trapezoid((t - mean) ** 2 * w, t)
    return np.sqrt(var)


def fidelity_qubit_closed_form(rho, sigma):
    """2x2 fidelity via Tr(rho sigma) + 2 sqrt(det rho det sigma).

    Independent oracle for the Uhlmann formula; valid only for qubits.
    """
    term = np.trace(rho @ sigma).real
    dets = (np.linalg.det(rho) * np.linalg.det(sigma)).real
    return float(term + 2.0 * np.sqrt(max(dets, 0.0)))

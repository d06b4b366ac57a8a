"""Time-resolved measurement operators for time-bin qudits.

The detector clicking at time ``t`` implements the rank-one operator

    M(t)[j, k] = u_j(t) * conj(u_k(t)),        weight mu(t) = sum_j |u_j(t)|^2,

a continuous POVM indexed by detection time.  Timing jitter smears it into

    M_D(t) = int M(t') q_D(t - t') dt',

with ``q_D`` a Gaussian of std ``sigma_d``.  Every entry of M(t') is a
complex-coefficient Gaussian in t', so the convolution is evaluated in closed
form entry by entry; :func:`numeric_jitter_oracle` re-does the integral by
composite Simpson quadrature and exists only to cross-check the closed form.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from .errors import DimensionMismatch, QuadratureNotConverged, ZeroWeight
from .linalg import hermitize
from .pulse import PulseConfig, _norm_prefactor, amplitude_as_gaussian, dispersed_width

WEIGHT_FLOOR = 1e-300


@dataclass(frozen=True)
class PovmElement:
    """One measurement operator at detection time ``time``.

    ``matrix`` is Hermitian PSD.  Ideal elements are rank one with
    ``matrix = weight * |state><state|``; jitter-convolved elements are
    generally full rank and carry ``state=None``.
    """

    time: float
    weight: float
    state: Optional[np.ndarray]
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing detection instants (seconds)."""

    instants: np.ndarray

    def __post_init__(self):
        inst = np.asarray(self.instants, dtype=float)
        if inst.ndim != 1 or len(inst) < 2:
            raise ValueError("a time grid needs at least two instants")
        if not np.all(np.diff(inst) > 0):
            raise ValueError("grid instants must be strictly increasing")
        object.__setattr__(self, "instants", inst)

    def __len__(self):
        return len(self.instants)


def _amplitude_table(cfg: PulseConfig, times: np.ndarray) -> np.ndarray:
    """u[j](t_k) for all bins and instants, shape (K, d)."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    centers = cfg.tau * np.arange(cfg.dim)
    shift = times[:, None] - centers[None, :]
    return _norm_prefactor(cfg) * np.exp(-(shift * shift) / (4.0 * cfg.complex_variance))


def ideal_matrices(cfg: PulseConfig, times) -> np.ndarray:
    """Stack of ideal operators M(t_k), shape (K, d, d)."""
    u = _amplitude_table(cfg, times)
    return u[:, :, None] * u.conj()[:, None, :]


def _entry_coefficients(cfg: PulseConfig):
    """(A, B, C) with M(t)[j,k] = exp(A[j,k] t^2 + B[j,k] t + C[j,k])."""
    gaussians = [amplitude_as_gaussian(cfg, j) for j in range(cfg.dim)]
    a = np.array([g.a for g in gaussians])
    b = np.array([g.b for g in gaussians])
    c = np.array([g.c for g in gaussians])
    return (
        a[:, None] + a.conj()[None, :],
        b[:, None] + b.conj()[None, :],
        c[:, None] + c.conj()[None, :],
    )


def jittered_matrices(cfg: PulseConfig, times) -> np.ndarray:
    """Stack of jitter-convolved operators M_D(t_k), shape (K, d, d).

    Each ideal entry exp(A t^2 + B t + C) convolved with the Gaussian kernel
    of variance sigma_d^2 stays in the same family; see
    :func:`timebin_tomography.pulse.convolve_gaussian` for the coefficient map.
    For ``sigma_d = 0`` this is exactly :func:`ideal_matrices`.
    """
    if cfg.sigma_d == 0.0:
        return ideal_matrices(cfg, times)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    a, b, c = _entry_coefficients(cfg)
    alpha = 1.0 / (2.0 * cfg.sigma_d**2)
    denom = alpha - a
    a2 = alpha * a / denom
    b2 = alpha * b / denom
    c2 = c + b * b / (4.0 * denom) + 0.5 * np.log(alpha / denom)
    t = times[:, None, None]
    mats = np.exp(a2 * t * t + b2 * t + c2)
    return 0.5 * (mats + mats.conj().transpose(0, 2, 1))


def ideal_element(cfg: PulseConfig, t: float) -> PovmElement:
    """Ideal rank-one operator M(t) with its weight and normalized state."""
    u = _amplitude_table(cfg, t)[0]
    mu = float(np.sum(np.abs(u) ** 2))
    if mu <= WEIGHT_FLOOR:
        d = cfg.dim
        return PovmElement(time=float(t), weight=0.0, state=None,
                           matrix=np.zeros((d, d), dtype=complex))
    return PovmElement(
        time=float(t),
        weight=mu,
        state=u / np.sqrt(mu),
        matrix=np.outer(u, u.conj()),
    )


def jittered_element(cfg: PulseConfig, t: float) -> PovmElement:
    """Jitter-convolved operator M_D(t); equals the ideal one at sigma_d = 0."""
    if cfg.sigma_d == 0.0:
        return ideal_element(cfg, t)
    mat = jittered_matrices(cfg, t)[0]
    return PovmElement(time=float(t), weight=float(np.trace(mat).real),
                       state=None, matrix=mat)


def numeric_jitter_oracle(cfg: PulseConfig, t: float,
                          nodes: Optional[int] = None) -> PovmElement:
    """M_D(t) by composite Simpson quadrature; validation oracle only.

    Integrates ``M(t') q_D(t - t')`` over ``t' in [t - 8 w, t + 8 w]`` with
    ``w = sqrt(sigma_L^2 + sigma_d^2)``, then repeats at half the step.  If
    any entry moves by more than 1e-8 relative to the largest entry the
    quadrature is declared unconverged.

    ``nodes`` defaults to at least 2001, raised as needed to keep eight
    nodes per width of the narrowest Gaussian feature (the jitter kernel
    can be far narrower than the window when the pulse is strongly
    dispersed).
    """
    if cfg.sigma_d == 0.0:
        return ideal_element(cfg, t)
    width = 8.0 * np.hypot(dispersed_width(cfg), cfg.sigma_d)
    if nodes is None:
        finest = min(cfg.sigma_d, dispersed_width(cfg))
        nodes = max(2001, int(np.ceil(2.0 * width * 8.0 / finest)) | 1)
    if nodes < 3 or nodes % 2 == 0:
        raise ValueError("Simpson quadrature needs an odd node count >= 3")

    def integrate(n):
        tp = np.linspace(t - width, t + width, n)
        kernel = np.exp(-((t - tp) ** 2) / (2.0 * cfg.sigma_d**2))
        kernel /= np.sqrt(2.0 * np.pi) * cfg.sigma_d
        integrand = ideal_matrices(cfg, tp) * kernel[:, None, None]
        return simpson(integrand, x=tp, axis=0)

    coarse = integrate(nodes)
    fine = integrate(2 * nodes - 1)
    scale = np.max(np.abs(fine))
    if scale > 0 and np.max(np.abs(fine - coarse)) / scale > 1e-8:
        raise QuadratureNotConverged(
            f"halving the step moved an entry by more than 1e-8 relative at t={t:.3e}"
        )
    mat = hermitize(fine)
    return PovmElement(time=float(t), weight=float(np.trace(mat).real),
                       state=None, matrix=mat)


def make_time_grid(cfg: PulseConfig, k: int = 13) -> TimeGrid:
    """Uniform grid of ``k`` instants covering the detectable window.

    The span is ``[-3 sigma_eff, (d-1) tau + 3 sigma_eff]`` around the outer
    bin centers, ``sigma_eff = sqrt(sigma_L^2 + sigma_d^2)``, so it widens
    with both fiber length and jitter and captures >99% of the detection
    probability.
    """
    if k < cfg.dim**2:
        raise ValueError(f"need at least d^2 = {cfg.dim ** 2} instants, got {k}")
    reach = 3.0 * np.hypot(dispersed_width(cfg), cfg.sigma_d)
    last_center = (cfg.dim - 1) * cfg.tau
    return TimeGrid(np.linspace(-reach, last_center + reach, k))


def bloch_coordinates(element: PovmElement):
    """Pauli expectations (x, y, z) of the normalized operator, plus weight.

    Only defined for qubits.  Ideal (rank-one) elements land on the Bloch
    sphere; jitter-convolved ones fall inside the ball.
    """
    if element.dim != 2:
        raise DimensionMismatch(f"Bloch coordinates need d=2, got d={element.dim}")
    if element.weight <= WEIGHT_FLOOR:
        raise ZeroWeight(f"element at t={element.time:.3e} has weight {element.weight:.3e}")
    rho = element.matrix / np.trace(element.matrix)
    x = 2.0 * rho[1, 0].real
    y = 2.0 * rho[1, 0].imag
    z = (rho[0, 0] - rho[1, 1]).real
    return x, y, z, element.weight

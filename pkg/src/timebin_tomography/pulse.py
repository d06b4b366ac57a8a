"""Gaussian wave packets in a dispersive fiber.

A time-bin qudit is a single photon delocalized over ``dim`` Gaussian wave
packets centered ``tau`` apart.  Group-velocity dispersion turns the initial
real Gaussian into a chirped one with complex variance

    Sigma = sigma0**2 + 1j * beta * length / 2,

which keeps the amplitude in the closed family ``exp(a t**2 + b t + c)``.
That family (:class:`ComplexGaussian`) is what makes the detector-jitter
convolution downstream exact.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PulseConfig:
    """Physical parameters of the source, fiber and detector.

    All quantities are SI: seconds, meters, s^2/m.
    """

    sigma0: float = 1e-12        # initial amplitude width of one wave packet
    tau: float = 4e-12           # separation between neighbouring time bins
    beta: float = 2.3e-26        # group-velocity dispersion magnitude
    length: float = 0.0          # fiber length
    dim: int = 2                 # number of time bins (2 = qubit, 3 = qutrit)
    sigma_d: float = 0.0         # detector timing jitter (std of the Gaussian kernel)
    photons: int = 10_000        # ensemble size per tomography run

    def __post_init__(self):
        if self.sigma0 <= 0:
            raise ValueError(f"sigma0 must be positive, got {self.sigma0}")
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if self.length < 0:
            raise ValueError(f"length must be nonnegative, got {self.length}")
        if self.sigma_d < 0:
            raise ValueError(f"sigma_d must be nonnegative, got {self.sigma_d}")
        if self.photons < 1:
            raise ValueError(f"photons must be >= 1, got {self.photons}")
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim}")
        if self.tau < 2 * self.sigma0:
            warnings.warn(
                f"tau = {self.tau:.3g} s < 2*sigma0 = {2 * self.sigma0:.3g} s: "
                "time bins overlap already at the source",
                stacklevel=2,
            )

    @property
    def complex_variance(self) -> complex:
        """Sigma = sigma0^2 + i*beta*L/2, the dispersed Gaussian variance."""
        return self.sigma0**2 + 0.5j * self.beta * self.length


@dataclass(frozen=True)
class ComplexGaussian:
    """The function ``t -> exp(a t**2 + b t + c)`` with ``Re(a) < 0``."""

    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        if not self.a.real < 0:
            raise ValueError(f"Re(a) must be negative for integrability, got {self.a}")

    def __call__(self, t):
        t = np.asarray(t)
        return np.exp(self.a * t * t + self.b * t + self.c)


def convolve_gaussian(g: ComplexGaussian, sigma: float) -> ComplexGaussian:
    """Convolve ``g`` with a normalized Gaussian kernel of std ``sigma``.

    The integral ``int g(t') exp(-(t-t')^2 / (2 sigma^2)) / sqrt(2 pi sigma^2) dt'``
    is again of the form ``exp(a' t^2 + b' t + c')``:

        alpha = 1 / (2 sigma^2)
        a' = alpha a / (alpha - a)
        b' = alpha b / (alpha - a)
        c' = c + b^2 / (4 (alpha - a)) + log(alpha / (alpha - a)) / 2

    ``sigma = 0`` returns ``g`` unchanged (delta kernel).
    """
    if sigma == 0.0:
        return g
    alpha = 1.0 / (2.0 * sigma * sigma)
    denom = alpha - g.a
    return ComplexGaussian(
        a=alpha * g.a / denom,
        b=alpha * g.b / denom,
        c=g.c + g.b * g.b / (4.0 * denom) + 0.5 * np.log(alpha / denom),
    )


def _norm_prefactor(cfg: PulseConfig) -> complex:
    # (2 pi sigma0^2)^(-1/4) * (1 + i beta L / (2 sigma0^2))^(-1/2)
    chirp = 1.0 + 0.5j * cfg.beta * cfg.length / cfg.sigma0**2
    return (2.0 * math.pi * cfg.sigma0**2) ** (-0.25) * chirp ** (-0.5)


def amplitude(cfg: PulseConfig, bin_index: int, t):
    """Temporal amplitude u_j(t) of the wave packet in bin ``bin_index``.

    ``u_j(t) = (2 pi sigma0^2)^(-1/4) (1 + i beta L/(2 sigma0^2))^(-1/2)
               * exp(-(t - j tau)^2 / (4 Sigma))``

    with ``Sigma`` the complex variance.  The propagation is unitary, so
    ``int |u_j|^2 dt = 1`` for every fiber length.  Accepts scalar or array
    ``t`` and returns a matching complex result.
    """
    if not 0 <= bin_index < cfg.dim:
        raise ValueError(f"bin_index must lie in [0, {cfg.dim - 1}], got {bin_index}")
    t = np.asarray(t, dtype=float)
    shift = t - bin_index * cfg.tau
    return _norm_prefactor(cfg) * np.exp(-(shift * shift) / (4.0 * cfg.complex_variance))


def dispersed_width(cfg: PulseConfig) -> float:
    """Intensity-profile standard deviation sigma_L after the fiber.

    ``sigma_L = sigma0 * sqrt(1 + (beta L / (2 sigma0^2))^2)``; reduces to
    ``sigma0`` at L = 0 and grows monotonically with length.
    """
    stretch = cfg.beta * cfg.length / (2.0 * cfg.sigma0**2)
    return cfg.sigma0 * math.sqrt(1.0 + stretch * stretch)


def amplitude_as_gaussian(cfg: PulseConfig, bin_index: int) -> ComplexGaussian:
    """Exponent coefficients (a, b, c) with exp(a t^2 + b t + c) = u_j(t)."""
    if not 0 <= bin_index < cfg.dim:
        raise ValueError(f"bin_index must lie in [0, {cfg.dim - 1}], got {bin_index}")
    sig = cfg.complex_variance
    center = bin_index * cfg.tau
    return ComplexGaussian(
        a=-1.0 / (4.0 * sig),
        b=center / (2.0 * sig),
        c=-center * center / (4.0 * sig) + np.log(_norm_prefactor(cfg)),
    )

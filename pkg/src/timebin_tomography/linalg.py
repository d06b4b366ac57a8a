"""Dense complex Hermitian linear algebra for small dimensions.

Everything here operates on plain ``numpy`` arrays.  A density matrix is an
ordinary ``(d, d)`` complex array that happens to satisfy the three physical
invariants (Hermitian, unit trace, positive semidefinite);
:func:`validate_density` is the gatekeeper that checks them.
"""

from typing import NamedTuple

import numpy as np

from .errors import NonHermitianInput, NotHermitian, NotPSD, NotPositive, NotUnitTrace

HERMITICITY_TOL = 1e-8
DENSITY_TOL = 1e-10
PSD_CLAMP = 1e-10


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def hermitize(a: np.ndarray) -> np.ndarray:
    """Hermitian part (a + a†) / 2; absorbs round-off asymmetry."""
    return 0.5 * (a + a.conj().T)


class EigenDecomposition(NamedTuple):
    values: np.ndarray   # ascending, real
    vectors: np.ndarray  # unitary, eigenvectors in columns


def eig_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    NonHermitianInput
        If ``max|a - a†|`` exceeds ``tol``.
    """
    a = np.asarray(a, dtype=complex)
    asym = np.max(np.abs(a - a.conj().T))
    if asym > tol:
        raise NonHermitianInput(f"matrix deviates from Hermiticity by {asym:.3e} (tol {tol:.0e})")
    values, vectors = np.linalg.eigh(hermitize(a))
    return EigenDecomposition(values, vectors)


def psd_sqrt(a: np.ndarray, clamp: float = PSD_CLAMP) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in ``[-clamp, 0)`` are treated as round-off and clamped to
    zero; anything more negative raises :class:`NotPositive`.
    """
    values, vectors = eig_hermitian(a)
    if values[0] < -clamp:
        raise NotPositive(f"smallest eigenvalue {values[0]:.3e} below -{clamp:.0e}")
    root = np.sqrt(np.clip(values, 0.0, None))
    return hermitize((vectors * root) @ vectors.conj().T)


def validate_density(a: np.ndarray, tol: float = DENSITY_TOL) -> np.ndarray:
    """Check the density-matrix invariants and return the array unchanged.

    Raises
    ------
    NotHermitian / NotUnitTrace / NotPSD
        Naming the violated invariant and its magnitude.
    """
    a = np.asarray(a, dtype=complex)
    asym = np.max(np.abs(a - a.conj().T))
    if asym > tol:
        raise NotHermitian(f"non-Hermitian by {asym:.3e}")
    trace_err = abs(np.trace(a) - 1.0)
    if trace_err > tol:
        raise NotUnitTrace(f"trace is {np.trace(a).real:.12g} (off by {trace_err:.3e})")
    smallest = np.linalg.eigvalsh(hermitize(a))[0]
    if smallest < -tol:
        raise NotPSD(f"smallest eigenvalue {smallest:.3e}")
    return a

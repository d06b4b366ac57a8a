import numpy as np
import pytest

from timebin_tomography.linalg import validate_density
from timebin_tomography.samples import (
    qubit_grid,
    qubit_phase_family,
    qutrit_grid,
    qutrit_phase_family,
    random_sample,
)


def test_qubit_grid_canonical_count():
    sample = qubit_grid(21)
    assert len(sample) == 9261
    assert sample.label == "qubit-grid-9261"


def test_qubit_grid_all_valid():
    sample = qubit_grid(9)
    for rho in sample.states:
        validate_density(rho)


def test_qubit_grid_surface_is_pure():
    sample = qubit_grid(5)
    for rho, (r, _, _) in zip(sample.states, sample.params):
        if r == 1.0:
            eigs = np.sort(np.linalg.eigvalsh(rho))
            assert np.allclose(eigs, [0.0, 1.0], atol=1e-10)


def test_qutrit_grid_counts_and_slices():
    sample = qutrit_grid(21)
    assert len(sample) == 9261
    small = qutrit_grid(5)
    for rho, (p, p12, p13) in zip(small.states, small.params):
        validate_density(rho)
        if p == 0.0:
            assert np.allclose(rho, np.eye(3) / 3)
        if p == 1.0 and p12 == 0.0 and p13 == 0.0:
            ket = np.ones(3) / np.sqrt(3.0)
            assert np.allclose(rho, np.outer(ket, ket), atol=1e-12)
            assert np.linalg.matrix_rank(rho, tol=1e-10) == 1


def test_qubit_phase_family_endpoints():
    sample = qubit_phase_family(201)
    assert len(sample) == 201
    assert np.allclose(sample.states[0], 0.5 * np.ones((2, 2)))
    assert np.allclose(sample.states[100], 0.5 * np.array([[1, -1], [-1, 1]]), atol=1e-12)


def test_qubit_phase_family_on_equator():
    sample = qubit_phase_family(17)
    for rho, (phi,) in zip(sample.states, sample.params):
        x = 2 * rho[1, 0].real
        y = 2 * rho[1, 0].imag
        z = (rho[0, 0] - rho[1, 1]).real
        assert abs(z) <= 1e-12
        assert np.hypot(x, y) == pytest.approx(1.0, abs=1e-12)
        assert x == pytest.approx(np.cos(phi), abs=1e-12)


def test_qutrit_phase_family_counts_and_structure():
    sample = qutrit_phase_family(41)
    assert len(sample) == 1681
    small = qutrit_phase_family(7)
    for rho in small.states:
        validate_density(rho)
        assert np.linalg.matrix_rank(rho, tol=1e-10) == 1
    first = small.states[0]
    assert np.allclose(first, np.ones((3, 3)) / 3.0)


def test_qutrit_phase_family_matches_phase_structure():
    sample = qutrit_phase_family(5)
    for rho, (p12, p13) in zip(sample.states, sample.params):
        assert rho[1, 0] == pytest.approx(np.exp(1j * p12) / 3.0, abs=1e-12)
        assert rho[2, 0] == pytest.approx(np.exp(1j * p13) / 3.0, abs=1e-12)
        assert rho[2, 1] == pytest.approx(np.exp(1j * (p13 - p12)) / 3.0, abs=1e-12)


def test_minimum_axis_points():
    for generator in (qubit_grid, qutrit_grid, qubit_phase_family, qutrit_phase_family):
        with pytest.raises(ValueError):
            generator(1)


def test_random_sample_valid_and_seeded():
    a = random_sample(3, 10, seed=5)
    b = random_sample(3, 10, seed=5)
    for rho_a, rho_b in zip(a.states, b.states):
        validate_density(rho_a)
        assert np.array_equal(rho_a, rho_b)

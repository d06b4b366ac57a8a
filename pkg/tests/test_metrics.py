import numpy as np
import pytest

from helpers import fidelity_qubit_closed_form, random_density
from timebin_tomography.errors import DimensionMismatch, EmptySample
from timebin_tomography.metrics import (
    fidelity,
    max_trace_distance,
    min_fidelity,
    trace_distance,
)
from timebin_tomography.samples import StateSample

KET0 = np.diag([1.0, 0.0]).astype(complex)
KET1 = np.diag([0.0, 1.0]).astype(complex)
MIXED = np.eye(2, dtype=complex) / 2


def test_fidelity_with_itself():
    rho = random_density(np.random.default_rng(0), 3)
    assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-12)


def test_fidelity_orthogonal_pure_states():
    assert fidelity(KET0, KET1) == pytest.approx(0.0, abs=1e-12)


def test_fidelity_pure_versus_mixed():
    assert fidelity(MIXED, KET0) == pytest.approx(0.5, rel=1e-12)


def test_fidelity_symmetric():
    rng = np.random.default_rng(13)
    for _ in range(20):
        a, b = random_density(rng, 2), random_density(rng, 2)
        assert abs(fidelity(a, b) - fidelity(b, a)) <= 1e-9


def test_fidelity_matches_qubit_closed_form():
    rng = np.random.default_rng(77)
    for _ in range(200):
        a, b = random_density(rng, 2), random_density(rng, 2)
        assert abs(fidelity(a, b) - fidelity_qubit_closed_form(a, b)) <= 1e-9


def test_fidelity_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fidelity(KET0, np.eye(3, dtype=complex) / 3)


def test_trace_distance_basics():
    assert trace_distance(KET0, KET0) == 0.0
    assert trace_distance(KET0, KET1) == pytest.approx(1.0, rel=1e-12)
    assert trace_distance(MIXED, KET0) == pytest.approx(0.5, rel=1e-12)


def test_trace_distance_triangle_inequality():
    rng = np.random.default_rng(5)
    for _ in range(50):
        a, b, c = (random_density(rng, 3) for _ in range(3))
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12


def test_bounds_and_fuchs_van_de_graaf():
    rng = np.random.default_rng(29)
    for dim in (2, 3):
        for _ in range(50):
            a, b = random_density(rng, dim), random_density(rng, dim)
            f = fidelity(a, b)
            d = trace_distance(a, b)
            assert 0.0 <= f <= 1.0
            assert 0.0 <= d <= 1.0
            assert 1.0 - np.sqrt(f) <= d + 1e-9


def test_min_fidelity_singleton_and_identity():
    sample = StateSample([KET0], "single")
    value, index = min_fidelity(sample, lambda rho: rho)
    assert value == pytest.approx(1.0) and index == 0
    value, index = min_fidelity(sample, lambda rho: MIXED)
    assert value == pytest.approx(0.5, rel=1e-9)


def test_max_trace_distance_identity_reconstruction():
    rng = np.random.default_rng(3)
    sample = StateSample([random_density(rng, 2) for _ in range(5)], "five")
    value, _ = max_trace_distance(sample, lambda rho: rho)
    assert value <= 1e-12


def test_worst_case_bounds_every_index():
    rng = np.random.default_rng(51)
    sample = StateSample([random_density(rng, 2) for _ in range(10)], "ten")
    reconstruct = lambda rho: MIXED
    f_min, f_idx = min_fidelity(sample, reconstruct)
    d_max, d_idx = max_trace_distance(sample, reconstruct)
    for i, rho in enumerate(sample.states):
        assert f_min <= fidelity(rho, reconstruct(rho)) + 1e-12
        assert d_max >= trace_distance(rho, reconstruct(rho)) - 1e-12
    assert 0 <= f_idx < 10 and 0 <= d_idx < 10


def test_ties_break_to_lowest_index():
    sample = StateSample([KET0.copy(), KET0.copy(), KET1.copy()], "tied")
    _, f_idx = min_fidelity(sample, lambda rho: rho)
    _, d_idx = max_trace_distance(sample, lambda rho: rho)
    assert f_idx == 0
    assert d_idx == 0


def test_empty_sample_rejected():
    empty = StateSample([], "empty")
    with pytest.raises(EmptySample):
        min_fidelity(empty, lambda rho: rho)
    with pytest.raises(EmptySample):
        max_trace_distance(empty, lambda rho: rho)

import numpy as np
import pytest

from timebin_tomography.errors import DimensionMismatch, QuadratureNotConverged, ZeroWeight
from timebin_tomography.povm import (
    PovmElement,
    bloch_coordinates,
    ideal_element,
    ideal_matrices,
    jittered_element,
    jittered_matrices,
    make_time_grid,
    numeric_jitter_oracle,
)
from timebin_tomography.pulse import PulseConfig, amplitude, dispersed_width


def test_ideal_element_single_bin():
    cfg = PulseConfig(dim=1, length=0.0)
    el = ideal_element(cfg, 0.5e-12)
    density = abs(amplitude(cfg, 0, 0.5e-12)) ** 2
    assert el.matrix.shape == (1, 1)
    assert el.matrix[0, 0].real == pytest.approx(density, rel=1e-12)
    assert el.weight == pytest.approx(density, rel=1e-12)


def test_ideal_element_midpoint_symmetry():
    cfg = PulseConfig(dim=2, length=0.0)
    el = ideal_element(cfg, cfg.tau / 2)
    assert np.allclose(el.state, np.array([1.0, 1.0]) / np.sqrt(2.0))
    expected = (el.weight / 2) * np.ones((2, 2))
    assert np.allclose(el.matrix, expected, rtol=1e-12)


def test_ideal_element_matches_amplitude_products():
    cfg = PulseConfig(dim=2, length=500.0)
    t = 0.0
    el = ideal_element(cfg, t)
    u = np.array([amplitude(cfg, j, t) for j in range(2)])
    direct = np.outer(u, u.conj())
    assert np.max(np.abs(el.matrix - direct)) <= 1e-12 * np.max(np.abs(direct))
    assert el.weight == pytest.approx(float(np.sum(np.abs(u) ** 2)), rel=1e-12)
    # weight equals the trace and the matrix is rank one
    assert np.trace(el.matrix).real == pytest.approx(el.weight, rel=1e-12)
    eigs = np.linalg.eigvalsh(el.matrix)
    assert eigs[-1] == pytest.approx(el.weight, rel=1e-10)


def test_jittered_equals_ideal_without_jitter():
    cfg = PulseConfig(dim=2, length=300.0, sigma_d=0.0)
    t = 1.3e-12
    a = jittered_element(cfg, t)
    b = ideal_element(cfg, t)
    assert np.max(np.abs(a.matrix - b.matrix)) <= 1e-12 * np.max(np.abs(b.matrix))


def test_jitter_adds_variance_on_diagonal():
    cfg = PulseConfig(dim=2, length=0.0, sigma_d=1e-12)
    s_tot = np.hypot(cfg.sigma0, cfg.sigma_d)
    peak = jittered_matrices(cfg, np.array([0.0]))[0][0, 0].real
    assert peak == pytest.approx(1.0 / np.sqrt(2 * np.pi * s_tot**2), rel=1e-10)
    at_width = jittered_matrices(cfg, np.array([s_tot]))[0][0, 0].real
    assert at_width == pytest.approx(peak * np.exp(-0.5), rel=1e-10)


def test_closed_form_matches_quadrature_at_working_point():
    cfg = PulseConfig(dim=2, length=500.0, sigma_d=1e-12)
    t = cfg.tau / 2
    closed = jittered_element(cfg, t).matrix
    oracle = numeric_jitter_oracle(cfg, t).matrix
    scale = np.max(np.abs(oracle))
    assert np.max(np.abs(closed - oracle)) / scale <= 1e-6


def test_closed_form_matches_quadrature_randomized():
    rng = np.random.default_rng(2024)
    for _ in range(20):
        cfg = PulseConfig(
            dim=int(rng.integers(2, 4)),
            length=float(rng.uniform(0.0, 3000.0)),
            sigma_d=float(rng.uniform(0.2e-12, 5e-12)),
        )
        t = float(rng.uniform(-3e-12, (cfg.dim - 1) * cfg.tau + 3e-12))
        closed = jittered_element(cfg, t).matrix
        oracle = numeric_jitter_oracle(cfg, t).matrix
        scale = np.max(np.abs(oracle))
        assert np.max(np.abs(closed - oracle)) / scale <= 1e-6


def test_oracle_without_jitter_is_ideal():
    cfg = PulseConfig(dim=2, length=200.0, sigma_d=0.0)
    a = numeric_jitter_oracle(cfg, 1e-12)
    b = ideal_element(cfg, 1e-12)
    assert np.allclose(a.matrix, b.matrix)


def test_oracle_trace_nonnegative():
    cfg = PulseConfig(dim=3, length=800.0, sigma_d=2e-12)
    for t in np.linspace(-4e-12, 12e-12, 7):
        assert numeric_jitter_oracle(cfg, t).weight >= 0.0


def test_oracle_flags_unconverged_quadrature():
    cfg = PulseConfig(dim=2, length=500.0, sigma_d=1e-12)
    with pytest.raises(QuadratureNotConverged):
        numeric_jitter_oracle(cfg, cfg.tau / 2, nodes=5)


def test_oracle_rejects_even_node_count():
    cfg = PulseConfig(dim=2, sigma_d=1e-12)
    with pytest.raises(ValueError):
        numeric_jitter_oracle(cfg, 0.0, nodes=10)


def test_grid_arithmetic():
    cfg = PulseConfig(dim=2, length=0.0, sigma_d=0.0, sigma0=1e-12, tau=4e-12)
    grid = make_time_grid(cfg, 13)
    assert len(grid) == 13
    assert grid.instants[0] == pytest.approx(-3e-12, rel=1e-12)
    assert grid.instants[-1] == pytest.approx(7e-12, rel=1e-12)
    spacing = np.diff(grid.instants)
    assert np.allclose(spacing, 10e-12 / 12, rtol=1e-9)


def test_grid_widens_with_length():
    spans = []
    for length in (0.0, 200.0, 1000.0):
        grid = make_time_grid(PulseConfig(dim=2, length=length))
        spans.append(grid.instants[-1] - grid.instants[0])
    assert spans[0] < spans[1] < spans[2]


def test_grid_widens_with_jitter():
    narrow = make_time_grid(PulseConfig(dim=2, sigma_d=0.0))
    wide = make_time_grid(PulseConfig(dim=2, sigma_d=4e-12))
    assert wide.instants[-1] - wide.instants[0] > narrow.instants[-1] - narrow.instants[0]


def test_grid_requires_informational_completeness():
    with pytest.raises(ValueError):
        make_time_grid(PulseConfig(dim=3), k=8)


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("length", [0.0, 2000.0])
def test_grid_captures_most_probability(dim, length):
    cfg = PulseConfig(dim=dim, length=length)
    grid = make_time_grid(cfg)
    t = np.linspace(grid.instants[0], grid.instants[-1], 20001)
    total_density = sum(np.abs(amplitude(cfg, j, t)) ** 2 for j in range(dim)) / dim
    assert np.trapezoid(total_density, t) >= 0.99


def test_all_elements_hermitian_psd():
    rng = np.random.default_rng(5)
    for _ in range(25):
        cfg = PulseConfig(
            dim=int(rng.integers(2, 4)),
            length=float(rng.uniform(0, 2500)),
            sigma_d=float(rng.choice([0.0, 1e-12, 4e-12])),
        )
        t = float(rng.uniform(-4e-12, 12e-12))
        mat = jittered_element(cfg, t).matrix
        assert np.max(np.abs(mat - mat.conj().T)) <= 1e-10 * max(np.max(np.abs(mat)), 1e-30)
        eigs = np.linalg.eigvalsh(mat)
        if eigs[-1] > 0:
            assert eigs[0] / eigs[-1] >= -1e-10


def test_convolution_preserves_time_integral():
    cfg = PulseConfig(dim=2, length=300.0, sigma_d=2e-12)
    reach = 10 * np.hypot(dispersed_width(cfg), cfg.sigma_d)
    t = np.linspace(-reach, cfg.tau + reach, 40001)
    tr_ideal = np.trace(ideal_matrices(cfg, t), axis1=1, axis2=2).real
    tr_jitter = np.trace(jittered_matrices(cfg, t), axis1=1, axis2=2).real
    total_ideal = np.trapezoid(tr_ideal, t)
    total_jitter = np.trapezoid(tr_jitter, t)
    assert total_jitter == pytest.approx(total_ideal, rel=1e-6)


def test_bloch_poles_and_equator():
    pole = PovmElement(time=0.0, weight=1.0, state=np.array([1.0, 0.0]),
                       matrix=np.diag([1.0, 0.0]).astype(complex))
    assert bloch_coordinates(pole)[:3] == pytest.approx((0.0, 0.0, 1.0))
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    equator = PovmElement(time=0.0, weight=1.0, state=plus,
                          matrix=np.outer(plus, plus.conj()))
    assert bloch_coordinates(equator)[:3] == pytest.approx((1.0, 0.0, 0.0))


def test_bloch_norms_on_grid():
    cfg = PulseConfig(dim=2, length=400.0, sigma_d=0.0)
    grid = make_time_grid(cfg)
    for t in grid.instants:
        x, y, z, _ = bloch_coordinates(ideal_element(cfg, t))
        assert np.hypot(np.hypot(x, y), z) == pytest.approx(1.0, abs=1e-9)
    jittery = PulseConfig(dim=2, length=400.0, sigma_d=2e-12)
    for t in grid.instants:
        x, y, z, _ = bloch_coordinates(jittered_element(jittery, t))
        assert np.hypot(np.hypot(x, y), z) <= 1.0 + 1e-9


def test_bloch_rejects_qutrits_and_zero_weight():
    cfg = PulseConfig(dim=3, length=100.0)
    with pytest.raises(DimensionMismatch):
        bloch_coordinates(ideal_element(cfg, 0.0))
    empty = PovmElement(time=0.0, weight=0.0, state=None,
                        matrix=np.zeros((2, 2), dtype=complex))
    with pytest.raises(ZeroWeight):
        bloch_coordinates(empty)


def test_operators_sink_to_equator_with_length():
    # with jitter fixed, the least-equatorial operator on the grid moves
    # toward the equator as the fiber gets longer
    def min_abs_z(length):
        cfg = PulseConfig(dim=2, length=length, sigma_d=1e-12)
        grid = make_time_grid(cfg)
        return min(abs(bloch_coordinates(jittered_element(cfg, t))[2])
                   for t in grid.instants)

    assert min_abs_z(2000.0) <= min_abs_z(100.0)

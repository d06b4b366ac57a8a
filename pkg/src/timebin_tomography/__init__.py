"""Time-resolved quantum state tomography of time-bin qudits.

A single photon delocalized over 2 or 3 time bins travels through a
dispersive fiber and is detected by time-resolved single-photon counting
with Gaussian timing jitter.  This package models the dispersed wave
packets, builds the time-domain measurement operators (ideal and
jitter-convolved), simulates photon counts, reconstructs states by
likelihood or least-squares fits over a Cholesky parametrization, and
sweeps worst-case reconstruction quality against fiber length and jitter.
"""

from .counts import expected_counts, measured_counts
from .estimators import (
    EstimationResult,
    estimate,
    ls_objective,
    minimize,
    mle_objective,
    params_to_state,
)
from .linalg import eig_hermitian, psd_sqrt, validate_density
from .metrics import fidelity, max_trace_distance, min_fidelity, trace_distance
from .povm import (
    PovmElement,
    TimeGrid,
    bloch_coordinates,
    ideal_element,
    jittered_element,
    make_time_grid,
    numeric_jitter_oracle,
)
from .pulse import ComplexGaussian, PulseConfig, amplitude, amplitude_as_gaussian, dispersed_width
from .samples import (
    StateSample,
    qubit_grid,
    qubit_phase_family,
    qutrit_grid,
    qutrit_phase_family,
    random_sample,
)
from .sweep import (
    SweepConfig,
    SweepResult,
    export_bloch,
    make_sample,
    parse_config,
    run_phase_sweep,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexGaussian",
    "EstimationResult",
    "PovmElement",
    "PulseConfig",
    "StateSample",
    "SweepConfig",
    "SweepResult",
    "TimeGrid",
    "amplitude",
    "amplitude_as_gaussian",
    "bloch_coordinates",
    "dispersed_width",
    "eig_hermitian",
    "estimate",
    "expected_counts",
    "export_bloch",
    "fidelity",
    "ideal_element",
    "jittered_element",
    "ls_objective",
    "make_sample",
    "make_time_grid",
    "max_trace_distance",
    "measured_counts",
    "min_fidelity",
    "minimize",
    "mle_objective",
    "numeric_jitter_oracle",
    "params_to_state",
    "parse_config",
    "psd_sqrt",
    "qubit_grid",
    "qubit_phase_family",
    "qutrit_grid",
    "qutrit_phase_family",
    "random_sample",
    "run_phase_sweep",
    "run_sweep",
    "trace_distance",
    "validate_density",
]

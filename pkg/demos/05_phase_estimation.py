"""Demo: relative-phase estimation beats jitter given enough fiber.

Equatorial qubits differ only in a relative phase.  Dispersion converts
that phase into slow interference fringes in the arrival-time density; the
longer the fiber, the slower the fringes, and the less the detector jitter
can blur them.  Minimum fidelity over the phase family therefore climbs
toward 1 with fiber length, for any jitter.
Run:  python demos/05_phase_estimation.py          (about two minutes)
"""

import os

import numpy as np

from timebin_tomography import SweepConfig, run_phase_sweep
from timebin_tomography.svgplot import line_plot
from timebin_tomography.sweep import write_atomic

lengths = tuple(np.geomspace(100, 20000, 7))
series = []
for jitter in (1e-12, 4e-12):
    cfg = SweepConfig(
        lengths=lengths,
        jitters=(jitter,),
        methods=("MLE",),
        sample_kind="qubit-phase",
        sample_points=31,
        seed=1,
        workers=os.cpu_count() or 1,
    )
    rows = run_phase_sweep(cfg)
    print(f"\njitter = {jitter * 1e12:g} ps")
    for r in rows:
        print(f"  L = {r.length:>8.0f} m: F_min = {r.f_min:.4f}")
    series.append((f"{jitter * 1e12:g} ps", [r.length for r in rows], [r.f_min for r in rows]))

svg = line_plot(series, x_label="fiber length (m)", y_label="minimum fidelity",
                title="phase estimation vs fiber length", log_x=True)
write_atomic("demos/out_phase_estimation.svg", svg)
print("\nwrote demos/out_phase_estimation.svg")

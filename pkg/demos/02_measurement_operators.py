"""Demo: the time-resolved measurement operators and their Bloch picture.

Detection at time t implements M(t) = mu(t) |psi(t)><psi(t)|; detector
jitter convolves it into a mixed operator M_D(t) inside the Bloch ball.
Dispersion pushes the operators toward the equator (phase-sensitive),
jitter pulls them toward the poles axis (phase-blind).
Run:  python demos/02_measurement_operators.py
"""

import numpy as np

from timebin_tomography import PulseConfig, bloch_coordinates, jittered_element, make_time_grid
from timebin_tomography.svgplot import bloch_scatter
from timebin_tomography.sweep import write_atomic

for length, jitter in [(100.0, 0.0), (100.0, 4e-12), (1000.0, 4e-12)]:
    cfg = PulseConfig(dim=2, length=length, sigma_d=jitter)
    grid = make_time_grid(cfg)
    rows = []
    print(f"\nL = {length:g} m, jitter = {jitter * 1e12:g} ps")
    print(f"{'t (ps)':>8} {'x':>8} {'y':>8} {'z':>8} {'|r|':>8} {'mu (1/ps)':>12}")
    for t in grid.instants:
        x, y, z, mu = bloch_coordinates(jittered_element(cfg, t))
        rows.append((t, x, y, z, mu))
        norm = np.sqrt(x * x + y * y + z * z)
        print(f"{t * 1e12:>8.2f} {x:>8.3f} {y:>8.3f} {z:>8.3f} {norm:>8.3f} {mu * 1e-12:>12.4f}")
    name = f"demos/out_bloch_L{length:g}_sd{jitter * 1e12:g}ps.svg"
    write_atomic(name, bloch_scatter(rows, title=f"L = {length:g} m, jitter = {jitter * 1e12:g} ps"))
    print(f"wrote {name}")

"""Reconstruction-quality sweeps over fiber length, jitter and method.

For every (length, jitter, method) triple the sweep rebuilds the measurement
grid, simulates jitter-distorted counts for each input state, reconstructs
it, and aggregates the worst case: minimum fidelity and maximum trace
distance over the sample.

Parallelism is a map over independent states followed by an index-ordered
sequential reduce, and every per-state seed is derived from (seed, triple
index, state index) alone, so results are identical for any worker count.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .counts import measured_counts
from .errors import ConfigError, DimensionMismatch, ParseError
from .estimators import METHODS, _estimate_from_flat
from .metrics import fidelity, trace_distance
from .povm import bloch_coordinates, ideal_matrices, jittered_element, make_time_grid
from .pulse import PulseConfig
from .samples import (
    StateSample,
    qubit_grid,
    qubit_phase_family,
    qutrit_grid,
    qutrit_phase_family,
    random_sample,
)

SAMPLE_KINDS = (
    "qubit-grid",
    "qutrit-grid",
    "qubit-phase",
    "qutrit-phase",
    "qubit-random",
    "qutrit-random",
)
PHASE_KINDS = ("qubit-phase", "qutrit-phase")

SWEEP_CSV_HEADER = "length_m,jitter_s,method,f_min,d_max,worst_state,seconds"
BLOCH_CSV_HEADER = "t_seconds,x,y,z,mu"
COUNTS_CSV_HEADER = "t_seconds,n_expected,n_measured"


@dataclass(frozen=True)
class SweepConfig:
    """Everything a sweep needs; validated on construction."""

    base: PulseConfig = field(default_factory=PulseConfig)
    lengths: tuple = (200.0, 500.0)
    jitters: tuple = (0.0, 1e-12, 4e-12)
    methods: tuple = ("LS", "MLE")
    sample_kind: str = "qubit-grid"
    sample_points: int = 5
    grid_points: int = 13
    restarts: int = 5
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(float(v) for v in self.lengths))
        object.__setattr__(self, "jitters", tuple(float(v) for v in self.jitters))
        object.__setattr__(self, "methods", tuple(str(m).upper() for m in self.methods))
        if not self.lengths:
            raise ConfigError("lengths must not be empty", key="lengths")
        if any(v < 0 for v in self.lengths):
            raise ConfigError("lengths must be nonnegative", key="lengths")
        if not self.jitters:
            raise ConfigError("jitters must not be empty", key="jitters")
        if any(v < 0 for v in self.jitters):
            raise ConfigError("jitters must be nonnegative", key="jitters")
        if not self.methods:
            raise ConfigError("methods must not be empty", key="methods")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}", key="methods")
        if self.sample_kind not in SAMPLE_KINDS:
            raise ConfigError(f"unknown sample kind {self.sample_kind!r}", key="sample")
        if self.sample_points < 2:
            raise ConfigError("sample_points must be >= 2 (the sample would be empty or trivial)",
                              key="sample_points")
        expected_dim = 2 if self.sample_kind.startswith("qubit") else 3
        if self.base.dim != expected_dim:
            raise ConfigError(
                f"sample {self.sample_kind!r} needs dim={expected_dim}, config has {self.base.dim}",
                key="dim",
            )
        if self.grid_points < self.base.dim**2:
            raise ConfigError(f"grid_points must be >= d^2 = {self.base.dim ** 2}",
                              key="grid_points")
        if self.restarts < 1:
            raise ConfigError("restarts must be >= 1", key="restarts")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1", key="workers")


@dataclass(frozen=True)
class SweepResult:
    """Worst-case figures for one (length, jitter, method) triple."""

    length: float
    jitter: float
    method: str
    f_min: float
    d_max: float
    worst_state: tuple
    wall_time: float
    n_unconverged: int = 0


def make_sample(kind: str, n: int, seed: int = 0) -> StateSample:
    """Build the input-state sample named by ``kind`` with ``n`` points per axis."""
    if kind == "qubit-grid":
        return qubit_grid(n)
    if kind == "qutrit-grid":
        return qutrit_grid(n)
    if kind == "qubit-phase":
        return qubit_phase_family(n)
    if kind == "qutrit-phase":
        return qutrit_phase_family(n)
    if kind == "qubit-random":
        return random_sample(2, n, seed)
    if kind == "qutrit-random":
        return random_sample(3, n, seed)
    raise ConfigError(f"unknown sample kind {kind!r}", key="sample")


def _state_seed(base_seed: int, triple_index: int, state_index: int) -> int:
    seq = np.random.SeedSequence(base_seed, spawn_key=(triple_index, state_index))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def _score_chunk(args):
    """Reconstruct a chunk of states; runs inside worker processes."""
    ops_flat, photons, dim, method, restarts, tasks = args
    out = []
    for index, measured, rho_in, seed in tasks:
        result = _estimate_from_flat(ops_flat, measured, photons, dim, method, seed, restarts)
        out.append((
            index,
            fidelity(rho_in, result.rho),
            trace_distance(rho_in, result.rho),
            result.converged,
        ))
    return out


def _triples(cfg: SweepConfig):
    return sorted(
        (length, jitter, method)
        for length in cfg.lengths
        for jitter in cfg.jitters
        for method in cfg.methods
    )


def run_sweep(cfg: SweepConfig, sample: Optional[StateSample] = None) -> list:
    """Run the full sweep; rows ordered by (length, jitter, method).

    Per-state reconstructions that hit the iteration cap are counted in
    ``n_unconverged`` but still scored.  Deterministic for a fixed seed and
    independent of ``cfg.workers``.
    """
    if sample is None:
        sample = make_sample(cfg.sample_kind, cfg.sample_points, cfg.seed)
    if len(sample) == 0:
        raise ConfigError("input sample is empty", key="sample")
    states = [np.asarray(s, dtype=complex) for s in sample.states]

    executor = None
    if cfg.workers > 1:
        executor = ProcessPoolExecutor(max_workers=cfg.workers)
    try:
        results = []
        for triple_index, (length, jitter, method) in enumerate(_triples(cfg)):
            start = time.perf_counter()
            pulse = replace(cfg.base, length=length, sigma_d=jitter)
            grid = make_time_grid(pulse, cfg.grid_points)
            ops_flat = ideal_matrices(pulse, grid.instants).reshape(len(grid), -1)

            tasks = [
                (i, measured_counts(rho, grid, pulse), rho,
                 _state_seed(cfg.seed, triple_index, i))
                for i, rho in enumerate(states)
            ]
            n_chunks = max(1, min(len(tasks), cfg.workers * 4))
            bounds = np.linspace(0, len(tasks), n_chunks + 1).astype(int)
            chunks = [
                (ops_flat, pulse.photons, pulse.dim, method, cfg.restarts,
                 tasks[bounds[j]:bounds[j + 1]])
                for j in range(n_chunks)
                if bounds[j] < bounds[j + 1]
            ]
            if executor is None:
                chunk_results = [_score_chunk(c) for c in chunks]
            else:
                chunk_results = list(executor.map(_score_chunk, chunks))

            # index-ordered reduce: ties resolve to the lowest state index,
            # so the outcome cannot depend on scheduling
            scores = [None] * len(tasks)
            for chunk in chunk_results:
                for index, fid, dist, converged in chunk:
                    scores[index] = (fid, dist, converged)
            f_min, f_idx = np.inf, -1
            d_max, unconverged = -np.inf, 0
            for i, (fid, dist, converged) in enumerate(scores):
                if fid < f_min:
                    f_min, f_idx = fid, i
                if dist > d_max:
                    d_max = dist
                if not converged:
                    unconverged += 1
            worst = tuple(sample.params[f_idx]) if sample.params else ()
            results.append(SweepResult(
                length=length,
                jitter=jitter,
                method=method,
                f_min=float(f_min),
                d_max=float(d_max),
                worst_state=worst,
                wall_time=time.perf_counter() - start,
                n_unconverged=unconverged,
            ))
        return results
    finally:
        if executor is not None:
            executor.shutdown()


def run_phase_sweep(cfg: SweepConfig, sample: Optional[StateSample] = None) -> list:
    """Sweep restricted to relative-phase input families."""
    if cfg.sample_kind not in PHASE_KINDS:
        raise ConfigError(
            f"phase sweep needs a phase-family sample, got {cfg.sample_kind!r}",
            key="sample",
        )
    return run_sweep(cfg, sample)


# ---------------------------------------------------------------------------
# file output

def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def write_atomic(path, text: str):
    """Write via a temp file in the same directory, then rename."""
    path = os.fspath(path)
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def sweep_csv(results) -> str:
    lines = [SWEEP_CSV_HEADER]
    for r in results:
        worst = "(" + ", ".join(_fmt(v) for v in r.worst_state) + ")"
        lines.append(
            f"{_fmt(r.length)},{_fmt(r.jitter)},{r.method},{_fmt(r.f_min)},"
            f'{_fmt(r.d_max)},"{worst}",{_fmt(r.wall_time)}'
        )
    return "\n".join(lines) + "\n"


def counts_csv(grid, expected, measured) -> str:
    lines = [COUNTS_CSV_HEADER]
    for t, ne, nm in zip(grid.instants, expected, measured):
        lines.append(f"{_fmt(t)},{_fmt(ne)},{_fmt(nm)}")
    return "\n".join(lines) + "\n"


def bloch_rows(cfg: SweepConfig, length: float, jitter: float):
    """(t, x, y, z, mu) for every grid instant at the given working point."""
    if cfg.base.dim != 2:
        raise DimensionMismatch("Bloch export is defined for qubits only")
    pulse = replace(cfg.base, length=length, sigma_d=jitter)
    grid = make_time_grid(pulse, cfg.grid_points)
    rows = []
    for t in grid.instants:
        x, y, z, mu = bloch_coordinates(jittered_element(pulse, t))
        rows.append((float(t), x, y, z, mu))
    return rows


def export_bloch(cfg: SweepConfig, length: float, jitter: float, out_dir,
                 fmt: str = "csv") -> list:
    """Write the Bloch-coordinate table (and optionally an x-z scatter SVG).

    Returns the list of paths written.
    """
    rows = bloch_rows(cfg, length, jitter)
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if fmt in ("csv", "both"):
        lines = [BLOCH_CSV_HEADER]
        for t, x, y, z, mu in rows:
            lines.append(",".join(_fmt(v) for v in (t, x, y, z, mu)))
        path = os.path.join(out_dir, "bloch.csv")
        write_atomic(path, "\n".join(lines) + "\n")
        written.append(path)
    if fmt in ("svg", "both"):
        from .svgplot import bloch_scatter

        path = os.path.join(out_dir, "bloch.svg")
        write_atomic(path, bloch_scatter(rows, title=f"L = {length:g} m, jitter = {jitter:g} s"))
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# config files

_KNOWN_KEYS = (
    "dim", "sigma0", "tau", "beta", "sigma_d", "photons",
    "lengths", "lengths_log", "jitters", "methods",
    "sample", "sample_points", "grid_points", "restarts", "seed", "workers",
)


def parse_config(path) -> SweepConfig:
    """Read a ``key = value`` config file into a :class:`SweepConfig`.

    One pair per line; ``#`` starts a comment; unknown keys are rejected.
    Times are seconds, lengths meters; scientific notation is accepted.
    ``lengths_log = min,max,count`` generates a logarithmic length grid and
    cannot be combined with ``lengths``.
    """
    entries = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"line {line_no}: expected 'key = value', got {raw.rstrip()!r}",
                                 line=line_no)
            key, _, value = line.partition("=")
            key, value = key.strip().lower(), value.strip()
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"unknown config key {key!r} (line {line_no})", key=key)
            if key in entries:
                raise ConfigError(f"duplicate config key {key!r} (line {line_no})", key=key)
            if not value:
                raise ParseError(f"line {line_no}: empty value for {key!r}", line=line_no)
            entries[key] = (value, line_no)

    def take_float(key, default):
        if key not in entries:
            return default, None
        value, line_no = entries.pop(key)
        try:
            return float(value), line_no
        except ValueError:
            raise ParseError(f"line {line_no}: cannot parse {key} = {value!r} as a number",
                             line=line_no) from None

    def take_int(key, default):
        value, line_no = take_float(key, default)
        if value != int(value):
            raise ParseError(f"line {line_no}: {key} must be an integer", line=line_no)
        return int(value)

    def take_float_list(key):
        if key not in entries:
            return None
        value, line_no = entries.pop(key)
        try:
            return [float(v) for v in value.split(",")]
        except ValueError:
            raise ParseError(f"line {line_no}: cannot parse {key} = {value!r} as numbers",
                             line=line_no) from None

    sample_kind = "qubit-grid"
    if "sample" in entries:
        sample_kind = entries.pop("sample")[0].lower()
        if sample_kind not in SAMPLE_KINDS:
            raise ConfigError(f"unknown sample kind {sample_kind!r}", key="sample")
    inferred_dim = 2 if sample_kind.startswith("qubit") else 3
    dim = take_int("dim", inferred_dim)
    if dim != inferred_dim:
        raise ConfigError(
            f"dim = {dim} conflicts with sample {sample_kind!r} (needs {inferred_dim})",
            key="dim",
        )

    base = PulseConfig(
        sigma0=take_float("sigma0", 1e-12)[0],
        tau=take_float("tau", 4e-12)[0],
        beta=take_float("beta", 2.3e-26)[0],
        dim=dim,
        sigma_d=take_float("sigma_d", 0.0)[0],
        photons=take_int("photons", 10_000),
    )

    lengths = take_float_list("lengths")
    if "lengths_log" in entries:
        if lengths is not None:
            raise ConfigError("give either lengths or lengths_log, not both", key="lengths_log")
        value, line_no = entries.pop("lengths_log")
        parts = value.split(",")
        if len(parts) != 3:
            raise ParseError(f"line {line_no}: lengths_log needs min,max,count", line=line_no)
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"line {line_no}: cannot parse lengths_log = {value!r}",
                             line=line_no) from None
        if lo <= 0 or hi <= lo or count < 2:
            raise ConfigError("lengths_log needs 0 < min < max and count >= 2",
                              key="lengths_log")
        lengths = list(np.geomspace(lo, hi, count))
    if lengths is None:
        lengths = [200.0, 500.0]

    jitters = take_float_list("jitters")
    if jitters is None:
        jitters = [0.0, 1e-12, 4e-12]

    methods = ("LS", "MLE")
    if "methods" in entries:
        methods = tuple(m.strip().upper() for m in entries.pop("methods")[0].split(","))

    return SweepConfig(
        base=base,
        lengths=tuple(lengths),
        jitters=tuple(jitters),
        methods=methods,
        sample_kind=sample_kind,
        sample_points=take_int("sample_points", 5),
        grid_points=take_int("grid_points", 13),
        restarts=take_int("restarts", 5),
        seed=take_int("seed", 0),
        workers=take_int("workers", 1),
    )

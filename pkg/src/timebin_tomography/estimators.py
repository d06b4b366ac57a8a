"""Density-matrix reconstruction from measured counts.

The search space is the Cholesky-style parametrization

    rho(p) = W(p)† W(p) / Tr(W(p)† W(p)),

with ``W`` lower triangular, so every real parameter vector maps to a valid
state.  The vector ``p`` has length d^2: the ``d`` real diagonal entries of
``W`` followed by the strictly-lower entries as (real, imaginary) pairs in
row-major order.

Two objectives are minimized over ``p`` with a multistart Nelder-Mead
simplex: the likelihood functional

    L(p) = sum_k [ (n_k^M - n_k^E(p))^2 / n_k^E(p) + ln n_k^E(p) ]

and plain least squares ``sum_k (n_k^M - n_k^E(p))^2``, where ``n^E(p)`` are
the ideal-operator counts the candidate state would produce.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .errors import DegenerateParams, DimensionMismatch
from .povm import TimeGrid, ideal_matrices
from .pulse import PulseConfig

METHODS = ("MLE", "LS")

DEGENERACY_TOL = 1e-12
COUNT_FLOOR_SCALE = 1e-10   # expected counts floored at this fraction of N
SIMPLEX_SPREAD_TOL = 1e-10  # objective-spread stop for O(1)-scaled objectives
PARAM_SPREAD_TOL = 1e-4     # simplex-collapse stop in parameter space
INITIAL_SIMPLEX_STEP = 0.5  # per-coordinate leg of the starting simplex
GAUGE_WEIGHT = 0.1          # strength of the ||p||=1 gauge-fixing penalty
MAX_ITERATIONS = 20_000

# strictly-lower index pairs of W in row-major order, per dimension
_LOWER_INDICES = {
    2: ((1,), (0,)),
    3: ((1, 2, 2), (0, 0, 1)),
}


@dataclass(frozen=True)
class MinimizeOutcome:
    params: np.ndarray
    objective: float
    converged: bool
    restarts_used: int


@dataclass(frozen=True)
class EstimationResult:
    rho: np.ndarray
    objective: float
    method: str
    restarts_used: int
    converged: bool


def _rho_from_params(p: np.ndarray, d: int) -> np.ndarray:
    # hot path: no validation, caller guarantees shape and a nonzero vector
    w = np.zeros((d, d), dtype=complex)
    w.flat[:: d + 1] = p[:d]
    if d > 1:
        rows, cols = _LOWER_INDICES[d]
        off = p[d:]
        w[rows, cols] = off[0::2] + 1j * off[1::2]
    gram = w.conj().T @ w
    return gram / np.trace(gram).real


def params_to_state(p) -> np.ndarray:
    """Map a real parameter vector of length d^2 to a density matrix.

    Raises
    ------
    DegenerateParams
        If ``||p|| <= 1e-12`` (the zero matrix has no normalization).
    """
    p = np.asarray(p, dtype=float)
    d = int(round(np.sqrt(p.size)))
    if d * d != p.size or d < 1 or d > 3:
        raise ValueError(f"parameter vector length must be 1, 4 or 9, got {p.size}")
    norm = np.linalg.norm(p)
    if norm <= DEGENERACY_TOL:
        raise DegenerateParams(f"||p|| = {norm:.3e} cannot be normalized to a state")
    return _rho_from_params(p, d)


def _expected_from_flat(ops_flat: np.ndarray, rho: np.ndarray, photons: int) -> np.ndarray:
    return photons * np.maximum((ops_flat @ rho.T.ravel()).real, 0.0)


def _mle_value(expected: np.ndarray, measured: np.ndarray, floor: float) -> float:
    e = np.maximum(expected, floor)
    r = measured - e
    return float(np.sum(r * r / e + np.log(e)))


def _ls_value(expected: np.ndarray, measured: np.ndarray) -> float:
    r = measured - expected
    return float(np.sum(r * r))


def _objective_from_ops(ops_flat, measured, photons, method, dim):
    """Fast objective closure used by both the public API and the sweeps."""
    measured = np.asarray(measured, dtype=float)
    degenerate_sq = DEGENERACY_TOL * DEGENERACY_TOL
    if method == "MLE":
        floor = COUNT_FLOOR_SCALE * photons

        def objective(p):
            if p @ p <= degenerate_sq:
                return 1e30
            expected = _expected_from_flat(ops_flat, _rho_from_params(p, dim), photons)
            return _mle_value(expected, measured, floor)
    else:

        def objective(p):
            if p @ p <= degenerate_sq:
                return 1e30
            expected = _expected_from_flat(ops_flat, _rho_from_params(p, dim), photons)
            return _ls_value(expected, measured)

    return objective


def _ops_flat(grid: TimeGrid, cfg: PulseConfig) -> np.ndarray:
    mats = ideal_matrices(cfg, grid.instants)
    return mats.reshape(len(grid), -1)


def _check_lengths(measured, grid):
    measured = np.asarray(measured, dtype=float)
    if measured.shape != (len(grid),):
        raise DimensionMismatch(
            f"measured has shape {measured.shape}, grid has {len(grid)} instants"
        )
    return measured


def mle_objective(p, measured, grid: TimeGrid, cfg: PulseConfig) -> float:
    """Likelihood functional at parameters ``p`` given measured counts.

    Expected counts are floored at ``1e-10 * photons`` before the division
    and the logarithm, keeping the value finite at tail instants.
    """
    measured = _check_lengths(measured, grid)
    expected = _expected_from_flat(_ops_flat(grid, cfg), params_to_state(p), cfg.photons)
    return _mle_value(expected, measured, COUNT_FLOOR_SCALE * cfg.photons)


def ls_objective(p, measured, grid: TimeGrid, cfg: PulseConfig) -> float:
    """Sum of squared count residuals at parameters ``p``."""
    measured = _check_lengths(measured, grid)
    expected = _expected_from_flat(_ops_flat(grid, cfg), params_to_state(p), cfg.photons)
    return _ls_value(expected, measured)


def _start_points(dim: int, seed: int, restarts: int):
    """Maximally mixed start plus seeded uniform [-1, 1] perturbations."""
    n = dim * dim
    base = np.zeros(n)
    base[:dim] = 1.0
    rng = np.random.default_rng(seed)
    return [base] + [base + rng.uniform(-1.0, 1.0, n) for _ in range(restarts - 1)]


def minimize(objective, dim: int, seed: int, restarts: int = 5,
             max_iterations: int = MAX_ITERATIONS) -> MinimizeOutcome:
    """Multistart Nelder-Mead over the d^2 Cholesky parameters.

    The first start is the maximally mixed state (W = identity); the
    remaining ``restarts - 1`` starts perturb it by entries drawn uniformly
    from [-1, 1] with a generator seeded by ``seed``.  Each restart begins
    from a non-degenerate simplex with 0.5-sized legs and stops once the
    simplex collapses below 1e-4 in parameter space with its objective
    spread below ``1e-10 + 1e-9 |f(x0)|`` (the relative term keeps the stop
    reachable when counts put the objective at 1e13 and beyond), or at the
    iteration cap.  The best restart wins.  Deterministic for a fixed seed.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = dim * dim
    best_x = None
    best_f = np.inf
    any_converged = False
    for x0 in _start_points(dim, seed, restarts):
        simplex = np.tile(x0, (n + 1, 1))
        for i in range(n):
            simplex[i + 1, i] += INITIAL_SIMPLEX_STEP
        res = _scipy_minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": max_iterations,
                "maxfev": 2 * max_iterations,
                "fatol": SIMPLEX_SPREAD_TOL + 1e-9 * abs(objective(x0)),
                "xatol": PARAM_SPREAD_TOL,
                "initial_simplex": simplex,
            },
        )
        any_converged = any_converged or bool(res.success)
        if res.fun < best_f:
            best_x, best_f = res.x, float(res.fun)

    # polish the winner: a small simplex around it converges in tens of
    # evaluations and pushes the parameter error well below the 1e-4
    # collapse tolerance of the main passes
    simplex = np.tile(best_x, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += 10 * PARAM_SPREAD_TOL
    res = _scipy_minimize(
        objective,
        best_x,
        method="Nelder-Mead",
        options={
            "maxiter": max_iterations,
            "maxfev": 2 * max_iterations,
            "fatol": SIMPLEX_SPREAD_TOL + 1e-12 * abs(best_f),
            "xatol": PARAM_SPREAD_TOL / 100,
            "initial_simplex": simplex,
        },
    )
    if res.fun < best_f:
        best_x, best_f = res.x, float(res.fun)
    return MinimizeOutcome(
        params=np.asarray(best_x, dtype=float),
        objective=best_f,
        converged=any_converged,
        restarts_used=restarts,
    )


def _estimate_from_flat(ops_flat, measured, photons, dim, method, seed,
                        restarts) -> EstimationResult:
    objective = _objective_from_ops(ops_flat, measured, photons, method, dim)

    # The count objectives are exactly flat along rays (rho(c p) = rho(p)),
    # which stalls the simplex.  Pinning ||p|| = 1 with a penalty scaled to
    # the mixed-state start removes the flat direction without moving any
    # minimizer's state; the reported objective excludes the penalty.
    base = np.zeros(dim * dim)
    base[:dim] = 1.0
    weight = GAUGE_WEIGHT * abs(objective(base))

    def penalized(p):
        r = p @ p - 1.0
        return objective(p) + weight * r * r

    outcome = minimize(penalized, dim, seed, restarts)
    return EstimationResult(
        rho=params_to_state(outcome.params),
        objective=float(objective(outcome.params)),
        method=method,
        restarts_used=outcome.restarts_used,
        converged=outcome.converged,
    )


def estimate(measured, grid: TimeGrid, cfg: PulseConfig, method: str,
             seed: int, restarts: int = 5) -> EstimationResult:
    """Reconstruct the state behind ``measured`` counts.

    ``method`` selects the objective: "MLE" (likelihood) or "LS" (least
    squares).  The reconstruction assumes ideal (jitter-free) operators, so
    jitter in the data shows up as reconstruction error.
    """
    method = method.upper()
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    measured = _check_lengths(measured, grid)
    return _estimate_from_flat(_ops_flat(grid, cfg), measured, cfg.photons,
                               cfg.dim, method, seed, restarts)

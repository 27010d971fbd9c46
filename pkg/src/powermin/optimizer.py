"""Singularity-safe local descent and seeded multi-start global minimization.

The local method is steepest descent with Armijo backtracking.  For singular
kernels the step is capped so that no particle travels more than a fixed
fraction of half the current minimum gap, which makes collisions unreachable.
Near the floating-point floor, where energy differences are no longer
resolvable, a gradient-norm descent phase takes over so the iterate can still
reach tight stationarity tolerances.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import (
    CoincidentPointsError,
    Configuration,
    Potential,
    PotentialClass,
    _energy_terms,
    _gradient_raw,
    canonicalize,
    classify_potential,
    eval_energy,
)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Energy ties between restarts below this margin are broken by restart index.
_TIE_MARGIN = 1e-12

_MAX_BACKTRACKS = 60


class InitStrategy(enum.Enum):
    UNIFORM_BOX = "uniform-box"
    PERTURBED_GRID = "perturbed-grid"


@dataclass(frozen=True)
class OptimizerOptions:
    """Knobs for one local descent run."""

    tol_grad: float = 1e-9
    max_iter: int = 50000
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5
    initial_step: float = 1.0
    gap_guard: float = 0.5

    def __post_init__(self):
        if not self.tol_grad > 0.0:
            raise ValueError("tol_grad must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")
        if not 0.0 < self.armijo_c < 1.0:
            raise ValueError("armijo_c must lie in (0, 1)")
        if not 0.0 < self.backtrack_factor < 1.0:
            raise ValueError("backtrack_factor must lie in (0, 1)")
        if not self.initial_step > 0.0:
            raise ValueError("initial_step must be positive")
        if not 0.0 < self.gap_guard < 1.0:
            raise ValueError("gap_guard must lie in (0, 1)")


@dataclass(frozen=True)
class GlobalOptions:
    """Multi-start configuration: restart count, master seed, init strategy."""

    restarts: int = 16
    seed: int = 0
    init_strategy: InitStrategy = InitStrategy.UNIFORM_BOX
    optimizer: OptimizerOptions = field(default_factory=OptimizerOptions)

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class MinimizeResult:
    """Outcome of one minimization: canonical configuration plus diagnostics."""

    config: Configuration
    energy: float
    grad_inf_norm: float
    iterations: int
    restarts_used: int
    converged: bool

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "energy": self.energy,
            "grad_inf_norm": self.grad_inf_norm,
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
        }


def mix_seed(seed: int, index: int) -> int:
    """Per-restart seed: splitmix64 finalizer on seed + (index+1)*golden."""
    z = (seed + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def default_strategy(p: Potential, dim: int) -> InitStrategy:
    """Perturbed grid for singular 1D problems (min_gap >= 0.5 by build),
    uniform box otherwise."""
    if p.singular and dim == 1:
        return InitStrategy.PERTURBED_GRID
    return InitStrategy.UNIFORM_BOX


def init_configuration(
    p: Potential, n: int, dim: int, seed: int, strategy: InitStrategy
) -> Configuration:
    """Seeded starting configuration; identical seed gives identical output."""
    if n < 1 or dim < 1:
        raise ValueError("n and dim must be positive")
    if n == 1:
        return Configuration(np.zeros((1, dim)))
    rng = np.random.default_rng(seed)
    if strategy is InitStrategy.PERTURBED_GRID:
        # Spacing-1 grid along the first axis, +-0.25 jitter everywhere:
        # adjacent points stay >= 0.5 apart along that axis.
        coords = rng.uniform(-0.25, 0.25, size=(n, dim))
        coords[:, 0] += np.arange(n) - (n - 1) / 2.0
        return Configuration(coords)
    if classify_potential(p) is PotentialClass.BOTH_POSITIVE:
        from .analysis import bound_diameter_case1

        half = min(bound_diameter_case1(n, p), float(n))
    else:
        half = float(n)
    return Configuration(rng.uniform(-half, half, size=(n, dim)))


def _grad_norms(grad: np.ndarray):
    ginf = float(np.abs(grad).max()) if grad.size else 0.0
    gsq = float(np.einsum("ij,ij->", grad, grad))
    row_max = float(np.sqrt(np.einsum("ij,ij->i", grad, grad).max())) if grad.size else 0.0
    return ginf, gsq, row_max


def local_minimize(
    p: Potential,
    start: Configuration,
    opts: OptimizerOptions = OptimizerOptions(),
    callback: Optional[Callable[[int, float, float, np.ndarray], None]] = None,
) -> MinimizeResult:
    """Armijo-backtracked steepest descent on E_n from a given start.

    Accepted energies are non-increasing.  For singular kernels no particle
    ever moves more than gap_guard * min_gap / 2 in one step, so no collision
    can be crossed.  Returns the canonicalized final iterate; converged means
    the gradient infinity norm fell below opts.tol_grad.

    callback, if given, observes every accepted iterate as
    (iteration, energy, grad_inf_norm, coords copy).
    """
    x = np.array(start.coords, dtype=np.float64)
    # raises CoincidentPointsError on bad singular starts
    energy, term_scale = _energy_terms(p, x)
    grad, gap = _gradient_raw(p, x)
    ginf, gsq, row_max = _grad_norms(grad)

    iterations = 0
    t_prev = opts.initial_step
    while ginf >= opts.tol_grad and iterations < opts.max_iter:
        t0 = min(opts.initial_step, t_prev / opts.backtrack_factor)
        if p.singular and row_max > 0.0:
            t0 = min(t0, opts.gap_guard * gap / (2.0 * row_max))

        # Sufficient decrease must stay resolvable above summation rounding,
        # otherwise Armijo accepts pure noise and the iterate random-walks.
        noise_floor = 32.0 * np.finfo(np.float64).eps * term_scale

        accepted = False
        t = t0
        for _ in range(_MAX_BACKTRACKS):
            trial = x - t * grad
            e_trial, s_trial = _energy_terms(p, trial)
            if e_trial <= energy - max(opts.armijo_c * t * gsq, noise_floor):
                accepted = True
                break
            if opts.armijo_c * t * gsq < noise_floor:
                break  # decrease no longer resolvable; shrinking t cannot help
            t *= opts.backtrack_factor

        if accepted:
            x, energy, term_scale = trial, e_trial, s_trial
            grad, gap = _gradient_raw(p, x)
            ginf, gsq, row_max = _grad_norms(grad)
            t_prev = t
        else:
            # Energy differences are below float resolution; descend on the
            # gradient norm instead, never letting the measured energy
            # increase.  Progress must be a real contraction of |grad|^2.
            t = min(t_prev, t0)
            for _ in range(25):
                trial = x - t * grad
                e_trial, s_trial = _energy_terms(p, trial)
                if e_trial <= energy:
                    g_trial, gap_trial = _gradient_raw(p, trial)
                    ginf_t, gsq_t, row_max_t = _grad_norms(g_trial)
                    if gsq_t < gsq * (1.0 - 1e-6):
                        x, energy, term_scale = trial, e_trial, s_trial
                        grad, gap = g_trial, gap_trial
                        ginf, gsq, row_max = ginf_t, gsq_t, row_max_t
                        accepted = True
                        t_prev = t
                        break
                t *= opts.backtrack_factor
            if not accepted:
                break  # stationarity at the float64 resolution of E_n

        iterations += 1
        if callback is not None:
            callback(iterations, energy, ginf, x.copy())

    config = canonicalize(Configuration(x))
    final_grad, _ = _gradient_raw(p, config.coords)
    final_ginf = float(np.abs(final_grad).max()) if final_grad.size else 0.0
    return MinimizeResult(
        config=config,
        energy=eval_energy(p, config).total,
        grad_inf_norm=final_ginf,
        iterations=iterations,
        restarts_used=1,
        converged=final_ginf < opts.tol_grad,
    )


def global_minimize(
    p: Potential,
    n: int,
    dim: int,
    g: GlobalOptions = GlobalOptions(),
    max_workers: Optional[int] = None,
) -> MinimizeResult:
    """Best of `restarts` independent seeded descents, canonicalized.

    Per-restart seeds derive from g.seed via a fixed integer hash, and the
    argmin scans restarts in index order, so the result does not depend on
    execution order or parallel scheduling.
    """
    if n < 1 or dim < 1:
        raise ValueError("n and dim must be positive")
    if n == 1:
        config = Configuration(np.zeros((1, dim)))
        return MinimizeResult(
            config=config,
            energy=0.0,
            grad_inf_norm=0.0,
            iterations=0,
            restarts_used=0,
            converged=True,
        )

    def run(index: int) -> MinimizeResult:
        start = init_configuration(p, n, dim, mix_seed(g.seed, index), g.init_strategy)
        return local_minimize(p, start, g.optimizer)

    if max_workers is not None and max_workers > 1 and g.restarts > 1:
        with ThreadPoolExecutor(max_workers=min(max_workers, g.restarts)) as pool:
            results = list(pool.map(run, range(g.restarts)))
    else:
        results = [run(i) for i in range(g.restarts)]

    best = results[0]
    for candidate in results[1:]:
        if candidate.energy < best.energy - _TIE_MARGIN:
            best = candidate
    return MinimizeResult(
        config=best.config,
        energy=best.energy,
        grad_inf_norm=best.grad_inf_norm,
        iterations=best.iterations,
        restarts_used=g.restarts,
        converged=best.converged,
    )

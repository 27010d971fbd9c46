"""Named verification suites: desk-scale checks of the confinement,
spreading, uniqueness, and closed-form results.

Each suite runs a fixed recipe (seeds, restart counts, and tolerances are
pinned here, not exposed as flags) and returns a VerifyReport.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import (
    bound_diameter_case1,
    fit_power_law,
    spreading_lower_bound,
    wasserstein1_to_uniform,
)
from .core import (
    Configuration,
    Potential,
    diameter,
    eval_energy,
    eval_gradient,
)
from .optimizer import (
    GlobalOptions,
    InitStrategy,
    OptimizerOptions,
    global_minimize,
    init_configuration,
    local_minimize,
    mix_seed,
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    observed: object
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class VerifyReport:
    suite_name: str
    checks: list

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite_name": self.suite_name,
            "checks": [c.to_dict() for c in self.checks],
            "overall_pass": self.overall_pass,
        }


_SUITE_SEED = 42


def _close(name: str, expected: float, observed: float, tol: float) -> Check:
    return Check(name, expected, observed, tol, abs(observed - expected) <= tol)


def _at_most(name: str, observed: float, limit: float, tol: float = 0.0) -> Check:
    return Check(name, f"<= {limit}", observed, tol, observed <= limit + tol)


def _at_least(name: str, observed: float, limit: float, tol: float = 0.0) -> Check:
    return Check(name, f">= {limit}", observed, tol, observed >= limit - tol)


def suite_quadratic_newtonian() -> VerifyReport:
    """Evenly spaced closed form: spacing 2/n and W1 distance 1/(2n)."""
    p = Potential(gamma=2.0, alpha=1.0)
    checks = []
    for n in (2, 4, 8, 16, 32, 64):
        opts = GlobalOptions(restarts=4, seed=mix_seed(_SUITE_SEED, n))
        result = global_minimize(p, n, 1, opts)
        xs = np.sort(result.config.coords[:, 0])
        spacing_dev = float(np.abs(np.diff(xs) - 2.0 / n).max()) if n > 1 else 0.0
        checks.append(_close(f"n={n} neighbor spacing = 2/n", 0.0, spacing_dev, 1e-7))
        w1 = wasserstein1_to_uniform(result.config, 1.0)
        checks.append(_close(f"n={n} W1 to uniform[-1,1] = 1/(2n)", 1.0 / (2 * n), w1, 1e-8))
    return VerifyReport("quadratic-newtonian", checks)


_UNIQUENESS_POTENTIAL = Potential(gamma=3.0, alpha=0.5)
_UNIQUENESS_N = 20


def _uniqueness_runs(count: int = 20):
    p = _UNIQUENESS_POTENTIAL
    runs = []
    for k in range(count):
        start = init_configuration(
            p, _UNIQUENESS_N, 1, mix_seed(_SUITE_SEED, 1000 + k), InitStrategy.UNIFORM_BOX
        )
        runs.append(local_minimize(p, start, OptimizerOptions()))
    return runs


def suite_uniqueness() -> VerifyReport:
    """All restarts land on the same canonical configuration."""
    runs = _uniqueness_runs()
    coords = [r.config.coords[:, 0] for r in runs]
    spread = max(
        float(np.abs(a - b).max()) for idx, a in enumerate(coords) for b in coords[idx + 1 :]
    )
    checks = [_close("20 restarts: max pairwise canonical deviation", 0.0, spread, 1e-6)]
    return VerifyReport("uniqueness", checks)


def suite_symmetry() -> VerifyReport:
    """The minimizer is symmetric about its center of mass: x_i = -x_{n+1-i}."""
    p = _UNIQUENESS_POTENTIAL
    opts = GlobalOptions(restarts=8, seed=_SUITE_SEED)
    result = global_minimize(p, _UNIQUENESS_N, 1, opts)
    xs = np.sort(result.config.coords[:, 0])
    asymmetry = float(np.abs(xs + xs[::-1]).max())
    return VerifyReport(
        "symmetry", [_close("max |x_i + x_{n+1-i}|", 0.0, asymmetry, 1e-6)]
    )


def suite_confinement() -> VerifyReport:
    """Diameter of minimizers stays bounded as n grows (gamma=3, alpha=1.5)."""
    p = Potential(gamma=3.0, alpha=1.5)
    opts = OptimizerOptions(tol_grad=1e-5, max_iter=4000)
    checks = []
    for dim in (1, 2):
        diams = {}
        for n in (16, 32, 64, 128):
            g = GlobalOptions(
                restarts=4, seed=mix_seed(_SUITE_SEED, 10 * dim + n), optimizer=opts
            )
            diams[n] = diameter(global_minimize(p, n, dim, g).config)
        rel_change = abs(diams[128] - diams[64]) / diams[64]
        checks.append(_at_most(f"d={dim} |diam(128)-diam(64)|/diam(64)", rel_change, 0.05))
        ratio = max(diams.values()) / min(diams.values())
        checks.append(_at_most(f"d={dim} max/min diameter over n", ratio, 1.5))
    return VerifyReport("confinement", checks)


def _spreading_diameters(p: Potential, ns, max_iter: int) -> dict:
    # Interior redistribution of a 1D chain is diffusion-limited, so the
    # largest n may stop at the iteration cap; its diameter then overshoots
    # the minimizer from above, which none of the spreading checks mind.
    opts = OptimizerOptions(tol_grad=1e-4, max_iter=max_iter)
    diams = {}
    for n in ns:
        g = GlobalOptions(
            restarts=2,
            seed=mix_seed(_SUITE_SEED, n),
            init_strategy=InitStrategy.PERTURBED_GRID,
            optimizer=opts,
        )
        diams[n] = diameter(global_minimize(p, n, 1, g).config)
    return diams


def suite_spreading() -> VerifyReport:
    """Very repulsive kernels spread: diameter grows with n and dominates
    the (n-1) a_n gap bound."""
    ns = (8, 16, 32, 64, 128)
    p_strong = Potential(gamma=-0.5, alpha=-2.5)
    diams = _spreading_diameters(p_strong, ns, max_iter=40000)
    checks = [
        Check(
            "alpha=-2.5: diameter strictly increasing in n",
            "strictly increasing",
            [diams[n] for n in ns],
            0.0,
            all(diams[a] < diams[b] for a, b in zip(ns, ns[1:])),
        )
    ]
    for n in ns:
        checks.append(
            _at_least(f"alpha=-2.5, n={n}: diameter >= (n-1) a_n",
                      diams[n], spreading_lower_bound(n, p_strong))
        )
    fit = fit_power_law([(n, diams[n]) for n in ns])
    checks.append(_at_least("alpha=-2.5: fitted log-log exponent", fit.exponent, 1.0 + 2.0 / -2.5))
    p_mild = Potential(gamma=-0.5, alpha=-1.5)
    diams_mild = _spreading_diameters(p_mild, ns, max_iter=40000)
    checks.append(
        Check(
            "alpha=-1.5: diameter strictly increasing in n",
            "strictly increasing",
            [diams_mild[n] for n in ns],
            0.0,
            all(diams_mild[a] < diams_mild[b] for a, b in zip(ns, ns[1:])),
        )
    )
    return VerifyReport("spreading", checks)


def suite_case1_bounds() -> VerifyReport:
    """For 0 < alpha < gamma: n^2 (1/gamma - 1/alpha) <= I_n < 0 and the
    minimizer diameter obeys the case-1 bound."""
    p = Potential(gamma=2.0, alpha=1.0)
    checks = []
    for n in (3, 5, 9):
        g = GlobalOptions(restarts=8, seed=mix_seed(_SUITE_SEED, n))
        result = global_minimize(p, n, 1, g)
        lower = n * n * (1.0 / p.gamma - 1.0 / p.alpha)
        checks.append(_at_least(f"n={n}: energy >= n^2(1/gamma - 1/alpha)", result.energy, lower))
        checks.append(Check(f"n={n}: energy < 0", "< 0", result.energy, 0.0, result.energy < 0.0))
        checks.append(
            _at_most(f"n={n}: diameter <= case-1 bound",
                     diameter(result.config), bound_diameter_case1(n, p))
        )
    return VerifyReport("case1-bounds", checks)


_FD_POTENTIALS = (
    Potential(2.0, 1.0),
    Potential(3.0, 1.5),
    Potential(1.0, 0.0),
    Potential(-0.5, -2.5),
)


def random_separated_configuration(rng: np.random.Generator, n: int, dim: int,
                                   min_separation: float = 0.3) -> Configuration:
    """Uniform random points rejected until all gaps exceed min_separation."""
    for _ in range(1000):
        coords = rng.uniform(-3.0, 3.0, size=(n, dim))
        i, j = np.triu_indices(n, k=1)
        gaps = np.sqrt(((coords[i] - coords[j]) ** 2).sum(axis=1))
        if gaps.min() > min_separation:
            return Configuration(coords)
    raise RuntimeError("could not draw a well-separated configuration")


def finite_difference_gradient(p: Potential, c: Configuration) -> np.ndarray:
    """Central finite differences of E_n, step 1e-6 * max(1, |coordinate|)."""
    coords = np.array(c.coords, dtype=np.float64)
    grad = np.zeros_like(coords)
    for k in range(coords.shape[0]):
        for a in range(coords.shape[1]):
            h = 1e-6 * max(1.0, abs(coords[k, a]))
            plus = coords.copy()
            plus[k, a] += h
            minus = coords.copy()
            minus[k, a] -= h
            e_plus = eval_energy(p, Configuration(plus)).total
            e_minus = eval_energy(p, Configuration(minus)).total
            grad[k, a] = (e_plus - e_minus) / (2.0 * h)
    return grad


def suite_gradient_fd() -> VerifyReport:
    """Analytic gradient vs central differences on seeded random configurations."""
    checks = []
    for p in _FD_POTENTIALS:
        worst_rel = 0.0
        worst_sum = 0.0
        for case in range(10):
            dim = (1, 2, 3)[case % 3]
            rng = np.random.default_rng(mix_seed(_SUITE_SEED, 7000 + 31 * case))
            c = random_separated_configuration(rng, n=8, dim=dim)
            analytic = eval_gradient(p, c)
            numeric = finite_difference_gradient(p, c)
            scale = max(1.0, float(np.abs(analytic).max()))
            # Component-relative error with a floor at 1e-3 of the gradient
            # scale, so near-zero components do not amplify FD rounding noise.
            denom = np.maximum(np.abs(analytic), 1e-3 * scale)
            worst_rel = max(worst_rel, float((np.abs(numeric - analytic) / denom).max()))
            worst_sum = max(worst_sum, float(np.abs(analytic.sum(axis=0)).max()) / scale)
        label = f"gamma={p.gamma:g}, alpha={p.alpha:g}"
        checks.append(_at_most(f"{label}: max relative FD error", worst_rel, 1e-6))
        checks.append(_at_most(f"{label}: summed gradient / scale", worst_sum, 1e-10))
    return VerifyReport("gradient-fd", checks)


SUITES = {
    "uniqueness": suite_uniqueness,
    "symmetry": suite_symmetry,
    "confinement": suite_confinement,
    "spreading": suite_spreading,
    "quadratic-newtonian": suite_quadratic_newtonian,
    "case1-bounds": suite_case1_bounds,
    "gradient-fd": suite_gradient_fd,
}


def run_suite(name: str) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name]()

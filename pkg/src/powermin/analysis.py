"""Closed forms and analytic bounds for minimizer diagnostics.

Covers the case-1 diameter bound, the small-gap root a_n for doubly-negative
exponents, the quadratic-attraction/Newtonian-repulsion closed-form minimizer,
the exact 1D order-1 Wasserstein distance to a uniform interval, and log-log
power-law fitting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Configuration, Potential, PotentialClass, classify_potential, eval_w


class WrongPotentialClassError(ValueError):
    """The operation is only defined for a different sign class of exponents."""


class BracketFailureError(RuntimeError):
    """The bisection bracket did not enclose a root; indicates a broken precondition."""


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit of value = prefactor * n^exponent in log-log space."""

    exponent: float
    prefactor: float
    r_squared: float
    sample_count: int


def bound_diameter_case1(n: int, p: Potential) -> float:
    """Diameter bound (n^2 gamma / alpha)^(1/(gamma-alpha)) for 0 < alpha < gamma.

    Any configuration with negative energy, minimizers included, fits in this
    diameter.
    """
    if classify_potential(p) is not PotentialClass.BOTH_POSITIVE:
        raise WrongPotentialClassError("diameter bound requires 0 < alpha < gamma")
    if n < 2:
        raise ValueError("n must be >= 2")
    return float((n * n * p.gamma / p.alpha) ** (1.0 / (p.gamma - p.alpha)))


def solve_min_gap(n: int, p: Potential) -> float:
    """The unique a_n in (0, 1) with w(a_n) = (1/alpha - 1/gamma) n^2.

    Defined for alpha < gamma < 0, where w is strictly decreasing on (0, 1)
    from +inf down to w(1) < 0, so bisection on (1e-16, 1) is safe.  Every
    inter-particle gap of a minimizer is at least a_n.
    """
    if classify_potential(p) is not PotentialClass.BOTH_NEGATIVE:
        raise WrongPotentialClassError("min-gap root requires alpha < gamma < 0")
    if n < 2:
        raise ValueError("n must be >= 2")
    c = 1.0 / p.alpha - 1.0 / p.gamma
    target = c * n * n
    lo, hi = 1e-16, 1.0
    if not (eval_w(p, lo) > target > eval_w(p, hi)):
        raise BracketFailureError(f"w does not bracket {target} on ({lo}, {hi})")
    for _ in range(200):
        if hi - lo <= 5e-14 * lo:
            break
        mid = 0.5 * (lo + hi)
        if eval_w(p, mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def spreading_lower_bound(n: int, p: Potential) -> float:
    """(n-1) a_n: every 1D minimizer's diameter is at least this."""
    return (n - 1) * solve_min_gap(n, p)


def quadratic_newtonian_minimizer(n: int) -> Configuration:
    """Closed-form 1D minimizer for quadratic attraction with Newtonian
    repulsion: x_k = (2k - n - 1)/n, evenly spaced by 2/n around zero."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(1, n + 1, dtype=np.float64)
    return Configuration(((2.0 * k - n - 1.0) / n).reshape(-1, 1))


def wasserstein1_to_uniform(c: Configuration, half_width: float, center: float = 0.0) -> float:
    """Exact order-1 Wasserstein distance between the empirical measure of a
    1D configuration and the uniform density on [center - h, center + h].

    Integrates |quantile difference| in closed form on each mass cell
    ((i-1)/n, i/n): the uniform quantile is linear there, so each cell is a
    triangle-area formula, with no quadrature error beyond rounding.
    """
    if c.dim != 1:
        raise ValueError("Wasserstein distance to a 1D interval requires dim = 1")
    if not half_width > 0.0:
        raise ValueError("half_width must be positive")
    xs = np.sort(c.coords[:, 0])
    n = xs.size
    h = float(half_width)
    u = np.arange(n + 1, dtype=np.float64) / n
    # phi(u) = x_i - (center - h + 2 h u), linear on each cell
    phi_lo = xs - center + h - 2.0 * h * u[:-1]
    phi_hi = xs - center + h - 2.0 * h * u[1:]
    crossing = (phi_lo > 0.0) & (phi_hi < 0.0)
    cells = np.where(
        crossing,
        (phi_lo * phi_lo + phi_hi * phi_hi) / (4.0 * h),
        np.abs(phi_lo + phi_hi) / (2.0 * n),
    )
    return float(cells.sum())


def fit_power_law(samples) -> PowerLawFit:
    """Ordinary least squares on (log n, log value).

    Requires at least two samples with distinct positive n and positive
    values; exact power-law inputs give r_squared = 1 to rounding.
    """
    pairs = [(int(n), float(v)) for n, v in samples]
    if len(pairs) < 2:
        raise ValueError("power-law fit needs at least two samples")
    ns = np.array([n for n, _ in pairs], dtype=np.float64)
    vals = np.array([v for _, v in pairs], dtype=np.float64)
    if np.any(ns <= 0):
        raise ValueError("sample sizes must be positive")
    if len(set(int(n) for n in ns)) != len(ns):
        raise ValueError("sample sizes must be distinct")
    if np.any(vals <= 0.0):
        raise ValueError("sample values must be positive")
    log_n = np.log(ns)
    log_v = np.log(vals)
    xm = log_n.mean()
    ym = log_v.mean()
    sxx = float(((log_n - xm) ** 2).sum())
    sxy = float(((log_n - xm) * (log_v - ym)).sum())
    slope = sxy / sxx
    intercept = ym - slope * xm
    residuals = log_v - (slope * log_n + intercept)
    ss_res = float((residuals**2).sum())
    ss_tot = float(((log_v - ym) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return PowerLawFit(
        exponent=slope,
        prefactor=float(np.exp(intercept)),
        r_squared=r_squared,
        sample_count=len(pairs),
    )

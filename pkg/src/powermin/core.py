"""Power-law pair potentials and particle configurations.

The radial kernel is w(r) = r^gamma/gamma - r^alpha/alpha with gamma > alpha,
where a zero exponent means the term degenerates to log(r).  A configuration
of n points in R^d carries the empirical measure (1/n) sum of point masses,
and its interaction energy sums w over all ordered pairs i != j.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class CoincidentPointsError(ValueError):
    """Two particles coincide under a singular kernel, so the energy is +inf."""


class PotentialClass(enum.Enum):
    """Sign pattern of the exponent pair, which fixes the shape of w."""

    BOTH_POSITIVE = "both-positive"   # 0 < alpha < gamma
    MIXED = "mixed"                   # alpha <= 0 <= gamma
    BOTH_NEGATIVE = "both-negative"   # alpha < gamma < 0


@dataclass(frozen=True)
class Potential:
    """Exponent pair (gamma, alpha) of the repulsive-attractive kernel.

    gamma > alpha is required; either exponent may be zero, in which case
    its power term is read as log(r).
    """

    gamma: float
    alpha: float

    def __post_init__(self):
        gamma = float(self.gamma)
        alpha = float(self.alpha)
        if not (math.isfinite(gamma) and math.isfinite(alpha)):
            raise ValueError("exponents must be finite")
        if not gamma > alpha:
            raise ValueError(f"gamma must exceed alpha, got gamma={gamma}, alpha={alpha}")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "alpha", alpha)

    @property
    def singular(self) -> bool:
        """True when w(0) = +inf, i.e. alpha <= 0."""
        return self.alpha <= 0.0


def classify_potential(p: Potential) -> PotentialClass:
    """Classify the exponent pair; total for every valid potential."""
    if p.alpha > 0.0:
        return PotentialClass.BOTH_POSITIVE
    if p.gamma < 0.0:
        return PotentialClass.BOTH_NEGATIVE
    return PotentialClass.MIXED


@dataclass(frozen=True)
class Configuration:
    """n points in R^d, stored as a read-only (n, d) float64 array."""

    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=np.float64, order="C")
        if coords.ndim == 1:
            coords = coords.reshape(-1, 1)
        if coords.ndim != 2 or coords.shape[0] < 1 or coords.shape[1] < 1:
            raise ValueError(f"coords must be a non-empty (n, d) array, got shape {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise ValueError("all coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def to_dict(self) -> dict:
        """JSON interchange form: {"dim": d, "points": [[...], ...]}."""
        return {"dim": self.dim, "points": [list(row) for row in self.coords]}

    @classmethod
    def from_dict(cls, data: dict) -> "Configuration":
        dim = int(data["dim"])
        points = np.array(data["points"], dtype=np.float64)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2 or points.shape[1] != dim:
            raise ValueError(f"points do not match dim={dim}")
        return cls(points)


@dataclass(frozen=True)
class EnergyBreakdown:
    """Ordered-pair energy split into its gamma and alpha contributions."""

    total: float
    attractive_part: float   # sum over i != j of r^gamma/gamma
    repulsive_part: float    # minus sum over i != j of r^alpha/alpha


def _power_term(eta: float, r):
    """r^eta/eta, degenerating to log(r) at eta = 0.  Works on arrays."""
    if eta == 0.0:
        return np.log(r)
    with np.errstate(over="ignore", divide="ignore"):
        return np.power(r, eta) / eta


@lru_cache(maxsize=64)
def _pair_indices(n: int):
    """Upper-triangle index pair (i, j with i < j), cached per n."""
    return np.triu_indices(n, k=1)


def _pair_distances(coords: np.ndarray) -> np.ndarray:
    """Condensed vector of the n(n-1)/2 pairwise Euclidean distances."""
    n = coords.shape[0]
    if n < 2:
        return np.empty(0, dtype=np.float64)
    i, j = _pair_indices(n)
    diff = coords[i] - coords[j]
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def eval_w(p: Potential, r: float) -> float:
    """Radial kernel value w(r); +inf sentinel at r = 0 for singular kernels."""
    r = float(r)
    if r < 0.0:
        raise ValueError("r must be nonnegative")
    if r == 0.0:
        if p.singular:
            return math.inf
        return 0.0
    with np.errstate(invalid="ignore"):
        return float(_power_term(p.gamma, r) - _power_term(p.alpha, r))


def eval_w_prime(p: Potential, r: float) -> float:
    """Radial derivative w'(r) = r^(gamma-1) - r^(alpha-1).

    No special case is needed for a zero exponent: d(log r)/dr = r^(-1).
    """
    r = float(r)
    if r <= 0.0:
        raise ValueError("r must be positive")
    with np.errstate(over="ignore"):
        return float(np.power(r, p.gamma - 1.0) - np.power(r, p.alpha - 1.0))


def _energy_terms(p: Potential, coords: np.ndarray):
    """Fast path: (E_n, sum of |w| terms).  The second value is the scale
    against which float64 energy differences are resolvable."""
    r = _pair_distances(coords)
    if r.size == 0:
        return 0.0, 0.0
    if p.singular and r.min() == 0.0:
        raise CoincidentPointsError("coincident points under a singular kernel: energy is +inf")
    with np.errstate(invalid="ignore"):
        w = _power_term(p.gamma, r) - _power_term(p.alpha, r)
    return 2.0 * float(np.sum(w)), 2.0 * float(np.sum(np.abs(w)))


def _energy_total(p: Potential, coords: np.ndarray) -> float:
    """E_n over ordered pairs, without the breakdown."""
    return _energy_terms(p, coords)[0]


def eval_energy(p: Potential, c: Configuration) -> EnergyBreakdown:
    """Discrete interaction energy E_n over ordered pairs i != j.

    Each unordered pair contributes twice; self-interaction is always
    excluded.  Raises CoincidentPointsError for coincident points under a
    singular kernel (the energy would be +inf).
    """
    r = _pair_distances(c.coords)
    if r.size == 0:
        return EnergyBreakdown(total=0.0, attractive_part=0.0, repulsive_part=0.0)
    if p.singular and r.min() == 0.0:
        raise CoincidentPointsError("coincident points under a singular kernel: energy is +inf")
    attractive = 2.0 * float(np.sum(_power_term(p.gamma, r)))
    repulsive = -2.0 * float(np.sum(_power_term(p.alpha, r)))
    return EnergyBreakdown(
        total=attractive + repulsive,
        attractive_part=attractive,
        repulsive_part=repulsive,
    )


def eval_energy_continuum(p: Potential, c: Configuration) -> float:
    """Continuum-normalized energy E_n / (2 n^2) of the empirical measure."""
    return eval_energy(p, c).total / (2.0 * c.n * c.n)


def _gradient_raw(p: Potential, coords: np.ndarray):
    """Gradient of E_n and the minimum pair distance, in one pass.

    Pairs at exactly zero distance under a non-singular kernel contribute
    zero (any subgradient is admissible there; zero is the symmetric choice).
    """
    n, d = coords.shape
    grad = np.zeros_like(coords)
    if n < 2:
        return grad, math.inf
    i, j = _pair_indices(n)
    diff = coords[i] - coords[j]
    r = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    r_min = float(r.min())
    if r_min == 0.0:
        if p.singular:
            raise CoincidentPointsError(
                "coincident points under a singular kernel: gradient undefined"
            )
        safe_r = np.where(r == 0.0, 1.0, r)
    else:
        safe_r = r
    with np.errstate(over="ignore"):
        coef = np.power(safe_r, p.gamma - 2.0) - np.power(safe_r, p.alpha - 2.0)
    if r_min == 0.0:
        coef = np.where(r == 0.0, 0.0, coef)
    pair_force = 2.0 * coef[:, None] * diff
    for k in range(d):
        grad[:, k] = np.bincount(i, weights=pair_force[:, k], minlength=n)
        grad[:, k] -= np.bincount(j, weights=pair_force[:, k], minlength=n)
    return grad, r_min


def eval_gradient(p: Potential, c: Configuration) -> np.ndarray:
    """Gradient of E_n: row k is 2 sum_{j != k} (r^(g-2) - r^(a-2)) (x_k - x_j).

    The factor 2 comes from the ordered-pair sum; it vanishes exactly at
    stationary configurations.
    """
    grad, _ = _gradient_raw(p, c.coords)
    return grad


def diameter(c: Configuration) -> float:
    """Maximum pairwise distance; 0 for a single point."""
    r = _pair_distances(c.coords)
    if r.size == 0:
        return 0.0
    return float(r.max())


def min_gap(c: Configuration) -> float:
    """Minimum pairwise distance; requires n >= 2."""
    if c.n < 2:
        raise ValueError("min_gap requires at least two points")
    return float(_pair_distances(c.coords).min())


def sorted_distances(c: Configuration) -> np.ndarray:
    """Sorted multiset of pairwise distances, the isometry-equality key in d > 1."""
    return np.sort(_pair_distances(c.coords))


def _center(coords: np.ndarray) -> np.ndarray:
    """Subtract the centroid, treating a mean within summation rounding of
    zero as already centered (an exact zero mean is not reachable in floats,
    and demanding it admits rounding 2-cycles)."""
    x = coords
    for _ in range(4):
        m = x.mean(axis=0)
        scale = float(np.abs(x).max())
        if float(np.abs(m).max()) <= 64.0 * np.finfo(np.float64).eps * scale:
            break
        x = x - m
    return x


def _canonical_pass(coords: np.ndarray) -> np.ndarray:
    x = _center(coords)
    if coords.shape[1] != 1:
        return x
    xs = np.sort(x[:, 0])
    reflected = -xs[::-1]
    differs = np.nonzero(xs != reflected)[0]
    if differs.size and reflected[differs[0]] < xs[differs[0]]:
        xs = reflected
    return xs.reshape(-1, 1)


def canonicalize(c: Configuration) -> Configuration:
    """Canonical representative: centroid at the origin, and in 1D sorted
    ascending with the lexicographically smaller of the sequence and its
    reflected-reversed image.  Iterates until a full pass is a no-op, so
    re-canonicalizing returns the identical array.
    """
    x = np.array(c.coords, dtype=np.float64)
    for _ in range(100):
        nxt = _canonical_pass(x)
        if np.array_equal(nxt, x):
            break
        x = nxt
    return Configuration(x)

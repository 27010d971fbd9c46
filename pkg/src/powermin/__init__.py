"""Global minimization of repulsive-attractive power-law interaction energies."""

from .analysis import (
    BracketFailureError,
    PowerLawFit,
    WrongPotentialClassError,
    bound_diameter_case1,
    fit_power_law,
    quadratic_newtonian_minimizer,
    solve_min_gap,
    spreading_lower_bound,
    wasserstein1_to_uniform,
)
from .core import (
    CoincidentPointsError,
    Configuration,
    EnergyBreakdown,
    Potential,
    PotentialClass,
    canonicalize,
    classify_potential,
    diameter,
    eval_energy,
    eval_energy_continuum,
    eval_gradient,
    eval_w,
    eval_w_prime,
    min_gap,
    sorted_distances,
)
from .optimizer import (
    GlobalOptions,
    InitStrategy,
    MinimizeResult,
    OptimizerOptions,
    default_strategy,
    global_minimize,
    init_configuration,
    local_minimize,
)

__version__ = "0.1.0"

__all__ = [
    "BracketFailureError",
    "CoincidentPointsError",
    "Configuration",
    "EnergyBreakdown",
    "GlobalOptions",
    "InitStrategy",
    "MinimizeResult",
    "OptimizerOptions",
    "Potential",
    "PotentialClass",
    "PowerLawFit",
    "WrongPotentialClassError",
    "bound_diameter_case1",
    "canonicalize",
    "classify_potential",
    "default_strategy",
    "diameter",
    "eval_energy",
    "eval_energy_continuum",
    "eval_gradient",
    "eval_w",
    "eval_w_prime",
    "fit_power_law",
    "global_minimize",
    "init_configuration",
    "local_minimize",
    "min_gap",
    "quadratic_newtonian_minimizer",
    "solve_min_gap",
    "sorted_distances",
    "spreading_lower_bound",
    "wasserstein1_to_uniform",
]

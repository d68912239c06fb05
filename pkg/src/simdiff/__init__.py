"""Verified similarity solutions of the diffusion equation.

Closed-form scaling functions for the classical Gaussian family and for the
power-law-tailed families built on the Dawson function and confluent
hypergeometric series, their three-dimensional radial counterpart for
solvent motion in a gel, an independent Crank-Nicolson oracle, and a
verification suite with machine-checkable reports.
"""

from .gel3d import (
    GelParams,
    RadialField,
    density_deviation,
    displacement,
    incompressibility_residual,
    injection_ic,
    matched_amplitude,
    radial_ode_residual,
    radial_profile,
    radial_profile_prime,
)
from .oracle import (
    EvolveSpec,
    Grid1D,
    default_domain,
    evolve_1d,
    evolve_radial,
    pde_residual,
)
from .similarity1d import (
    DiffusionParams,
    FamilyKind,
    IllConditionedError,
    Profile,
    SolutionFamily,
    antisymmetric_family,
    dawson_family,
    first_integral_residual,
    gaussian_family,
    gel_family,
    hermite_project,
    profile_ode_residual,
    reconstruct,
    scaling_function,
    similarity_residual,
    similarity_solution,
    symmetric_family,
    tail_asymptote,
    tail_coefficient,
)
from .specfun import Accuracy, ConvergenceError, dawson, erf, gaussian_deriv, kummer_1f1
from .verify import CheckRecord, available_checks, build_report, run_checks

__version__ = "0.1.0"

__all__ = [
    "Accuracy",
    "CheckRecord",
    "ConvergenceError",
    "DiffusionParams",
    "EvolveSpec",
    "FamilyKind",
    "GelParams",
    "Grid1D",
    "IllConditionedError",
    "Profile",
    "RadialField",
    "SolutionFamily",
    "__version__",
    "antisymmetric_family",
    "available_checks",
    "build_report",
    "dawson",
    "dawson_family",
    "default_domain",
    "density_deviation",
    "displacement",
    "erf",
    "evolve_1d",
    "evolve_radial",
    "first_integral_residual",
    "gaussian_deriv",
    "gaussian_family",
    "gel_family",
    "hermite_project",
    "incompressibility_residual",
    "injection_ic",
    "kummer_1f1",
    "matched_amplitude",
    "pde_residual",
    "profile_ode_residual",
    "radial_ode_residual",
    "radial_profile",
    "radial_profile_prime",
    "reconstruct",
    "run_checks",
    "scaling_function",
    "similarity_residual",
    "similarity_solution",
    "symmetric_family",
    "tail_asymptote",
    "tail_coefficient",
]

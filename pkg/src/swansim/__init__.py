"""Metriplectic phase-space and Gaussian wave-packet dynamics for the Swanson oscillator.

The library pairs closed-form solutions of the non-Hermitian oscillator with
a generic numerical engine for quadratic models, exact Gaussian quantum
propagation, and divergence classification of initial conditions.
"""

from .closed_form import (
    ComplexState,
    DoubledFlow,
    Metric,
    RealState,
    closed_series,
    complex_trajectory,
    doubled_flow,
    metric_closed,
    metric_eigen,
    real_trajectory,
    stretch_factor,
    survival_closed,
)
from .errors import (
    DegeneratePlaneError,
    DivergenceError,
    MobiusPoleError,
    NonNormalizableError,
    SwansimError,
)
from .gaussian import (
    ComplexSymplectic,
    GaussianState,
    b_from_metric,
    blowup_detected,
    complex_symplectic_flow,
    eta_action,
    evaluate_wavefunction,
    evolve_b,
    evolve_phase,
    evolve_state,
    fourier_action,
    gaussian_norm,
    is_normalizable,
    mapped_dynamics,
    metric_from_b,
    project_expectations,
    riccati_direct,
)
from .geometry import (
    HyperboloidPoint,
    RegionLabel,
    classify_b,
    classify_metric,
    plane_slope,
    region_grid,
    xyz_from_metric,
    xyz_rhs,
)
from .model import (
    QuadraticHamiltonian,
    SpectralData,
    SwansonParams,
    doubled_generator,
    eigenvalue,
    normalize_swanson,
    spectral_data,
    swanson_hamiltonian,
)
from .ode import (
    MetriplecticState,
    Trajectory,
    integrate,
    integrate_doubled,
    rhs_metric,
    rhs_norm,
    rhs_state,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexState",
    "ComplexSymplectic",
    "DegeneratePlaneError",
    "DivergenceError",
    "DoubledFlow",
    "GaussianState",
    "HyperboloidPoint",
    "Metric",
    "MetriplecticState",
    "MobiusPoleError",
    "NonNormalizableError",
    "QuadraticHamiltonian",
    "RealState",
    "RegionLabel",
    "SpectralData",
    "SwansimError",
    "SwansonParams",
    "Trajectory",
    "b_from_metric",
    "blowup_detected",
    "classify_b",
    "classify_metric",
    "closed_series",
    "complex_symplectic_flow",
    "complex_trajectory",
    "doubled_flow",
    "doubled_generator",
    "eigenvalue",
    "eta_action",
    "evaluate_wavefunction",
    "evolve_b",
    "evolve_phase",
    "evolve_state",
    "fourier_action",
    "gaussian_norm",
    "integrate",
    "integrate_doubled",
    "is_normalizable",
    "mapped_dynamics",
    "metric_closed",
    "metric_eigen",
    "metric_from_b",
    "normalize_swanson",
    "plane_slope",
    "project_expectations",
    "real_trajectory",
    "region_grid",
    "rhs_metric",
    "rhs_norm",
    "rhs_state",
    "riccati_direct",
    "spectral_data",
    "stretch_factor",
    "survival_closed",
    "swanson_hamiltonian",
    "xyz_from_metric",
    "xyz_rhs",
]

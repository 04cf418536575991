"""Ballistic diffusion toolkit: closed-form packet dispersion and two-slit
interference fields, a finite-difference solver with a time-growing
diffusion coefficient, and velocity-field trajectory integration."""

from .core import (
    Grid,
    ParameterError,
    PhysicalParams,
    ScalarField,
    SlitSource,
    StabilityReport,
    check_stability,
    uncertainty_norm,
)
from .analytic import (
    KinematicSample,
    closed_form_diffusivity,
    gaussian_density,
    kink_time,
    osmotic_velocity,
    phase,
    phase_space_density,
    sample_kinematics,
    sigma_at,
    total_acceleration,
    total_velocity,
    trajectory_position,
)
from .interference import (
    DoubleSlitSystem,
    InterferenceGrid,
    PhaseShifterSchedule,
    entangling_current,
    field_velocity,
    intensity_grid,
    phase_difference,
    total_current,
    total_density,
)
from .fdm import (
    DiffusivityField,
    NormDriftError,
    SolveResult,
    SolverConfig,
    StabilityError,
    diffusivity_recursion,
    explicit_step,
    implicit_step,
    solve,
)
from .trajectories import (
    Seed,
    TrajectorySet,
    analytic_velocity,
    double_slit_trajectories,
    emergent_velocity,
    gridded_velocity,
    integrate,
    seed_positions,
    single_slit_trajectories,
)

__version__ = "0.1.0"

__all__ = [
    "Grid",
    "ParameterError",
    "PhysicalParams",
    "ScalarField",
    "SlitSource",
    "StabilityReport",
    "check_stability",
    "uncertainty_norm",
    "KinematicSample",
    "closed_form_diffusivity",
    "gaussian_density",
    "kink_time",
    "osmotic_velocity",
    "phase",
    "phase_space_density",
    "sample_kinematics",
    "sigma_at",
    "total_acceleration",
    "total_velocity",
    "trajectory_position",
    "DoubleSlitSystem",
    "InterferenceGrid",
    "PhaseShifterSchedule",
    "entangling_current",
    "field_velocity",
    "intensity_grid",
    "phase_difference",
    "total_current",
    "total_density",
    "DiffusivityField",
    "NormDriftError",
    "SolveResult",
    "SolverConfig",
    "StabilityError",
    "diffusivity_recursion",
    "explicit_step",
    "implicit_step",
    "solve",
    "Seed",
    "TrajectorySet",
    "analytic_velocity",
    "double_slit_trajectories",
    "emergent_velocity",
    "gridded_velocity",
    "integrate",
    "seed_positions",
    "single_slit_trajectories",
    "__version__",
]

"""Conservative thermodynamics of the Lotka-Volterra predator-prey system.

Orbit construction and per-orbit state variables, the extended conservation
relation dh = theta dlnA - F_alpha dalpha, equation-of-state tables, exact
and diffusion-limit stochastic simulation, the averaged energy diffusion, and
entropy-conservation verification.
"""

from ._backend import BACKEND
from .core import (DEFAULT_TOL, ModelParams, Orbit, Trajectory, hamiltonian,
                   integrate, orbit_from_energy, scalar_factor, seed_point,
                   vector_field)
from .eos import (EosRecord, HelmholtzResidual, area_invariant, dA_dalpha,
                  dA_dh, eos_grid, f_alpha_fn, helmholtz_residual, theta_fn)
from .errors import (BoundaryState, DomainLeakWarning, EnergyBelowMinimum,
                     FixedPointNotFound, LvError, PeriodNotFound,
                     SingularCoefficient, StepRejectionLimit,
                     StepSizeUnderflow)
from .hdiffusion import (HDiffusionTable, averaged_coefficients,
                         default_h_grid, h_path_extract, pss_curve)
from .entropy import (DensityField, boltzmann_entropy_density,
                      relative_entropy_at_time, stationary_divergence)
from .orbits import (OrbitSummary, area_invariant_direct, orbit_extents,
                     orbit_integrals, summarize, time_average)
from .stochastic import (DiscreteState, JumpPath, SdePath,
                         decomposition_drift, find_drift_fixed_point,
                         fixed_point_eigenvalues,
                         master_stationarity_residual, path_rng, ssa_rates,
                         ssa_simulate, sde_simulate)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

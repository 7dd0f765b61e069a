"""Large-time-step TVD finite-volume schemes for 1D conservation laws.

Explicit (2k+1)-point schemes run at Courant numbers well above 1: Roe and
Lax-Friedrichs endpoints of the TVD viscosity envelope, the RoeLxF(beta)
blend, the Roe* entropy fix (Harten smoothing plus randomized time stepping),
and the Godunov scheme built from exact scalar Riemann fans.  Includes the
coefficient algebra (viscosity <-> fluctuation forms, TVD certification,
envelope bounds, modified-equation diffusion), the 1D Euler extension through
the Roe linearization, and benchmark cases with exact references.
"""

from .cases import CASE_NAMES, CaseDefinition, build_case
from .coefficients import (BoundsReport, FluctuationSet, TvdReport, ViscositySet,
                           a_to_q, check_bounds, check_tvd, diffusion_D, q_to_a)
from .driver import (BoundaryCondition, Diagnostics, Grid1D, run, select_timestep,
                     step, total_variation)
from .euler import (EulerState, ExactRiemannSolution, GasModel, RoeLinearization,
                    exact_riemann, field_to_primitives, primitives_to_field,
                    roe_linearize, split_eigenvalue, system_fluctuations)
from .rng import XorShift64Star
from .scalar_flux import (AdvectionModel, BurgersModel, FluxModel, local_courant,
                          max_wavespeed, osher_extremum)
from .schemes import (GODUNOV, LXF, ROE, ROELXF, ROESTAR, InterfaceFluctuations,
                      SchemeSpec, courant_coefficients, godunov_fluctuations,
                      godunov_viscosities, interface_fluctuations)

__version__ = "0.1.0"

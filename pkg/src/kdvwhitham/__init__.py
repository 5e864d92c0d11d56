"""Small-dispersion KdV versus one-phase Whitham asymptotics.

The package solves u_t + 6 u u_x + eps^2 u_xxx = 0 pseudospectrally for
single-hump decaying data, solves the one-phase Whitham modulation system by
inverting Tsarev's hodograph transform, reconstructs the modulated elliptic
(theta-function) approximation, and measures how the two differ as eps
shrinks.
"""

from .asymptotic import AsymptoticSample, CompositeSolution, envelope, u_elliptic, u_theta
from .chebyshev import ChebSeries, ResolutionError, cheb_fit, cheb_nodes, fit_function, integral_cheb_weight, integral_endpoint_sqrt
from .compare import DiffField, ErrorMetrics, ScalingFit, build_diff, error_metrics, linreg, resample, zone_boundary
from .elliptic import EllipticPair, ThetaConvergenceError, dn_sq_grid, elliptic_KE, jacobi_sncndn, theta3, theta3_with_derivatives
from .hopf import HopfSample, solve_at, solve_branch
from .kdv import BlowUpError, EnergyTrace, SpectralField, energy, evolve, init, step
from .profile import CriticalPoint, NumericProfile, Profile, Sech2Profile, make_profile
from .simplex import SimplexResult, simplex_minimize, solve_least_squares
from .whitham import EdgePoint, HumpCrossing, PhaseFunction, WhithamSolver, WhithamTriple, edge_asymptotics, speeds

__version__ = "0.1.0"

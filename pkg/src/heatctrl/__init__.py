"""Boundary controls for the half-plane heat equation with point-wise
Neumann actuation: radial profile algebra, a self-inverse Hankel-type
transform, Laguerre expansion, staircase control synthesis, and end-state
verification with analytic error budgets.
"""

from .basis import BasisContext, CoefficientVector, deviation_bound, expand, phi_n, phi_n_l, psi_hat_n, psi_n, reconstruct
from .control import (
    Control,
    MomentSequence,
    control_moments,
    entire_bound,
    entire_eval,
    gamma_moments,
    mollified_delta_derivative,
    moment_gap_coefficient,
    necessary_condition,
    omega_moments,
    synthesize,
    synthesize_from_coefficients,
    verify_against_target,
    zero_control,
)
from .errors import HeatctrlError, PreconditionError, QuadratureError
from .heat import (
    EndStateReport,
    ErrorBudget,
    bounded_growth_check,
    controlled_term,
    end_state,
    error_budget,
    free_evolution,
    report,
    residual_norm,
)
from .radial import (
    ExpMixture,
    PlaneFieldRadial,
    PolyExpMixture,
    RadialProfile,
    Sampled,
    l2_norm_halfline,
    profile_from_json,
    profile_to_json,
    psi_forward,
    psi_inverse,
    sample_profile,
)
from .transform import phi, phi_quadrature_reference

__version__ = "0.1.0"

__all__ = [
    "BasisContext",
    "CoefficientVector",
    "Control",
    "EndStateReport",
    "ErrorBudget",
    "ExpMixture",
    "HeatctrlError",
    "MomentSequence",
    "PlaneFieldRadial",
    "PolyExpMixture",
    "PreconditionError",
    "QuadratureError",
    "RadialProfile",
    "Sampled",
    "bounded_growth_check",
    "control_moments",
    "controlled_term",
    "deviation_bound",
    "end_state",
    "entire_bound",
    "entire_eval",
    "error_budget",
    "expand",
    "free_evolution",
    "gamma_moments",
    "l2_norm_halfline",
    "mollified_delta_derivative",
    "moment_gap_coefficient",
    "necessary_condition",
    "omega_moments",
    "phi",
    "phi_n",
    "phi_n_l",
    "phi_quadrature_reference",
    "profile_from_json",
    "profile_to_json",
    "psi_forward",
    "psi_hat_n",
    "psi_inverse",
    "psi_n",
    "reconstruct",
    "report",
    "residual_norm",
    "sample_profile",
    "synthesize",
    "synthesize_from_coefficients",
    "verify_against_target",
    "zero_control",
]

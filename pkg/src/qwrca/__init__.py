"""One-dimensional two-state quantum walks and their reversible cellular automaton."""

from .coin_and_state import (
    AmplitudeRow,
    InitialTriple,
    Qubit,
    UnitaryCoin,
    make_qubit,
    make_theta_coin,
    validate_unitary,
)
from .qw_engine import (
    QwState,
    chirality_limits,
    chirality_norms,
    qw_distribution,
    qw_evolve,
    qw_step,
    qw_to_rca_triple,
)
from .rca_engine import (
    RcaCoefficients,
    RcaState,
    closed_moments,
    first_moment,
    rca_evolve,
    rca_step_back,
    rca_step_general,
    rca_step_theta,
    small_n_norms,
    squared_norm,
)
from .spectral import closed_form_norm, h_n_value, norm_limit, parseval_norm
from .state_classes import (
    check_corollary4,
    check_theorem2,
    check_theorem3,
    in_phi_perp,
    in_phi_star,
)
from .verification import run_suite

__version__ = "0.1.0"

__all__ = [
    "AmplitudeRow",
    "InitialTriple",
    "Qubit",
    "QwState",
    "RcaCoefficients",
    "RcaState",
    "UnitaryCoin",
    "check_corollary4",
    "check_theorem2",
    "check_theorem3",
    "chirality_limits",
    "chirality_norms",
    "closed_form_norm",
    "closed_moments",
    "first_moment",
    "h_n_value",
    "in_phi_perp",
    "in_phi_star",
    "make_qubit",
    "make_theta_coin",
    "norm_limit",
    "parseval_norm",
    "qw_distribution",
    "qw_evolve",
    "qw_step",
    "qw_to_rca_triple",
    "rca_evolve",
    "rca_step_back",
    "rca_step_general",
    "rca_step_theta",
    "run_suite",
    "small_n_norms",
    "squared_norm",
    "validate_unitary",
]

"""Radial models of curvature flows around totally geodesic submanifolds of
hyperbolic manifolds."""

__version__ = "0.1.0"

from .symfun import HARMONIC, SpeedExpr, eval_elementary, eval_speed, grad_speed, parse_speed
from .tube import TubeConfig, TubeState, area_factor, principal_curvatures, tube_state
from .radial_flow import FlowProblem, Trajectory, hmcf_closed_form, integrate
from .classify import classify_lifetime, exact_exponent, lifetime_quadrature

__all__ = [
    "FlowProblem",
    "HARMONIC",
    "SpeedExpr",
    "Trajectory",
    "TubeConfig",
    "TubeState",
    "area_factor",
    "classify_lifetime",
    "eval_elementary",
    "eval_speed",
    "exact_exponent",
    "grad_speed",
    "hmcf_closed_form",
    "integrate",
    "lifetime_quadrature",
    "parse_speed",
    "principal_curvatures",
    "tube_state",
]

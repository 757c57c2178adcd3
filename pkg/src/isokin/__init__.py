"""Isoline calculus for unsteady planar scalar fields.

Closed-form characteristics of moving isolines (front velocity and
acceleration, density and its growth rates, curvature, frame rotation
rates), first-order shift laws, reading derivatives of a moving robot, a
gradient-rotation envelope over space-time boxes, and the limit-definition
oracles that cross-verify all of them.
"""

from .characteristics import (CharSet, FrenetFrame, ShiftKind, char_set,
                              frenet, identity_residuals, shift_predict)
from .domain import (RotationBoundReport, SpaceTimeBox, gradient_rotation,
                     gradient_rotation_tracking, rotation_bound)
from .errors import (ContractViolationError, DegeneratePointError,
                     DegenerateRegionError, IsokinError, NoIntersectionError,
                     OracleUnstableError)
from .fields import (AcceleratingRamp, FieldJet2, FieldSpec, GaussianTerm,
                     LinearDrift, MovingGaussianSum, Point2, RadialParaboloid,
                     RotatingAnisotropicGaussian, RotatingLinear, eval_jet2,
                     fd_jet2, regularity)
from .kinematics import (ReadingRates, RobotState, SteeringProgram,
                         Trajectory, deviation_bound_ceil,
                         deviation_bound_cosine, empirical_max_deviation,
                         fd_reading_rates, integrate, reading_rates)
from .oracles import (OracleSettings, front_displacement, oracle_alpha,
                      oracle_kappa, oracle_lambda, oracle_nrho, oracle_omega,
                      oracle_omega_grad, oracle_rho, oracle_taurho,
                      oracle_vrho)
from .suites import VerifyReport, VerifySettings, run_suites

__version__ = "0.1.0"

__all__ = [
    "AcceleratingRamp", "CharSet", "ContractViolationError",
    "DegeneratePointError", "DegenerateRegionError", "FieldJet2", "FieldSpec",
    "FrenetFrame", "GaussianTerm", "IsokinError", "LinearDrift",
    "MovingGaussianSum", "NoIntersectionError", "OracleSettings",
    "OracleUnstableError", "Point2", "RadialParaboloid", "ReadingRates",
    "RobotState", "RotatingAnisotropicGaussian", "RotatingLinear",
    "RotationBoundReport", "ShiftKind", "SpaceTimeBox", "SteeringProgram",
    "Trajectory", "VerifyReport", "VerifySettings", "char_set",
    "deviation_bound_ceil", "deviation_bound_cosine",
    "empirical_max_deviation", "eval_jet2", "fd_jet2", "fd_reading_rates",
    "frenet", "front_displacement", "gradient_rotation",
    "gradient_rotation_tracking", "identity_residuals", "integrate",
    "oracle_alpha", "oracle_kappa", "oracle_lambda", "oracle_nrho",
    "oracle_omega", "oracle_omega_grad", "oracle_rho", "oracle_taurho",
    "oracle_vrho", "reading_rates", "regularity", "rotation_bound",
    "run_suites", "shift_predict",
]

"""Contact angles for nonlocal capillarity and the supporting planar energies."""

from .angle_solver import AngleSolution, solve_theta
from .asymptotics import Regime, expand_at_one, expand_at_zero
from .quadrature import DomainError, QuadratureError, QuadratureSpec

__version__ = "0.1.0"

__all__ = [
    "AngleSolution",
    "DomainError",
    "QuadratureError",
    "QuadratureSpec",
    "Regime",
    "expand_at_one",
    "expand_at_zero",
    "solve_theta",
]

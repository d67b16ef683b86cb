"""Hitting-time laws of radial Dunkl processes in dihedral wedges.

Closed forms, series and integral representations for the first hitting
time of the wedge boundary, planar Brownian exit laws, and a Monte Carlo
oracle that cross-checks them.
"""

from .errors import (
    ConfigError,
    DomainError,
    DunklWedgeError,
    LiftingError,
    NonConvergenceError,
    QuadratureError,
)
from .model import (
    DEFAULT_CONTROL,
    Curve,
    SeriesControl,
    StartPoint,
    WedgeModel,
    t_from_v,
    v_from_t,
    validate_model,
    validate_start,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Curve",
    "DEFAULT_CONTROL",
    "DomainError",
    "DunklWedgeError",
    "LiftingError",
    "NonConvergenceError",
    "QuadratureError",
    "SeriesControl",
    "StartPoint",
    "WedgeModel",
    "t_from_v",
    "v_from_t",
    "validate_model",
    "validate_start",
]

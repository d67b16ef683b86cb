"""Monte Carlo oracle: hitting times of the flipped process and planar Brownian winding."""

from .api import (
    HittingSample,
    HittingSamples,
    McConfig,
    WindingSample,
    WindingSamples,
    estimate_cf,
    estimate_tail,
    estimate_wp_indicator,
    estimate_wp_mean,
    simulate_bm_winding,
    simulate_hitting,
)
from .backend import backend_name, use_numba

__all__ = [
    "HittingSample",
    "HittingSamples",
    "McConfig",
    "WindingSample",
    "WindingSamples",
    "backend_name",
    "estimate_cf",
    "estimate_tail",
    "estimate_wp_indicator",
    "estimate_wp_mean",
    "simulate_bm_winding",
    "simulate_hitting",
    "use_numba",
]

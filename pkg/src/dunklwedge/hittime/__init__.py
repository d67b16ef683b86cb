"""Analytic laws of the first hitting time of the wedge boundary."""

from .laplace import laplace_moment_numeric, laplace_moment_pi8
from .normalize import NormalizationCache, clear_cache, integrate_half_line, normalize_density, normalized_density
from .tail import (
    TailCoefficients,
    coeff_F,
    jacobi_integral,
    tail_coefficients,
    tail_density_v,
    tail_hitting,
    tail_hitting_normalized,
    tail_series_v,
)
from .v0density import (
    density_series_equal_k,
    density_v0_bessel,
    density_v0_integral,
    density_v0_z2z2,
    lemma1_lhs,
    lemma1_rhs,
    log_lower_gamma,
    tail_z2z2,
)

__all__ = [
    "NormalizationCache",
    "TailCoefficients",
    "clear_cache",
    "coeff_F",
    "density_series_equal_k",
    "density_v0_bessel",
    "density_v0_integral",
    "density_v0_z2z2",
    "integrate_half_line",
    "jacobi_integral",
    "laplace_moment_numeric",
    "laplace_moment_pi8",
    "lemma1_lhs",
    "lemma1_rhs",
    "log_lower_gamma",
    "normalize_density",
    "normalized_density",
    "tail_coefficients",
    "tail_density_v",
    "tail_hitting",
    "tail_hitting_normalized",
    "tail_series_v",
    "tail_z2z2",
]

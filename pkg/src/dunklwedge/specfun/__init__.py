"""Special-function kernel: Gamma, hypergeometric, Bessel, orthogonal polynomials, quadrature."""

from .bessel import bessel_i, bessel_i_normalized, log_bessel_i, log_bessel_i_normalized
from .gamma import gamma_ratio, log_gamma, log_pochhammer, pochhammer
from .hypergeom import hyp_1f1, hyp_1f1_euler, hyp_2f1, hyp_2f1_euler, log_hyp_1f1
from .identities import erdelyi_multiplication_check, hyp_1f1_series, xu_identity_check
from .orthopoly import (
    chebyshev_u,
    chebyshev_u_all,
    gegenbauer_c,
    gegenbauer_c_all,
    jacobi_orthonormal,
    jacobi_p,
    jacobi_p_all,
    jacobi_sq_norm,
    log_jacobi_sq_norm,
)
from .quadrature import QuadratureRule, beta_rule, gauss_jacobi, gauss_jacobi_rule, refine

__all__ = [
    "QuadratureRule",
    "bessel_i",
    "bessel_i_normalized",
    "beta_rule",
    "chebyshev_u",
    "chebyshev_u_all",
    "erdelyi_multiplication_check",
    "gamma_ratio",
    "gauss_jacobi",
    "gauss_jacobi_rule",
    "gegenbauer_c",
    "gegenbauer_c_all",
    "hyp_1f1",
    "hyp_1f1_euler",
    "hyp_1f1_series",
    "hyp_2f1",
    "hyp_2f1_euler",
    "jacobi_orthonormal",
    "jacobi_p",
    "jacobi_p_all",
    "jacobi_sq_norm",
    "log_bessel_i",
    "log_bessel_i_normalized",
    "log_gamma",
    "log_hyp_1f1",
    "log_jacobi_sq_norm",
    "log_pochhammer",
    "pochhammer",
    "refine",
    "xu_identity_check",
]

"""Residuals of classical special-function identities.

Each function returns a non-negative residual (relative unless noted) so the
identities can be asserted in tests and in the ``check identities`` suite.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, NonConvergenceError
from ..model import DEFAULT_CONTROL, SeriesControl
from .bessel import bessel_i, bessel_i_normalized
from .gamma import log_gamma, log_pochhammer, pochhammer
from .hypergeom import hyp_1f1, hyp_2f1, log_hyp_1f1
from .orthopoly import gegenbauer_c, gegenbauer_c_all, jacobi_p, jacobi_p_all, log_jacobi_sq_norm
from .quadrature import gauss_jacobi, gauss_jacobi_rule, refine


def _rel(lhs, rhs):
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def hyp_1f1_series(a: float, b: float, z: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Plain power series of 1F1 with no Kummer mapping (signed terms).

    Only an independent route for moderate ``|z|``; cancellation grows like
    ``exp(2|z|)`` for negative arguments.
    """
    s = t = 1.0
    small = 0
    for m in range(ctrl.max_terms + 4 * int(abs(z)) + 8):
        t *= (a + m) / (b + m) * z / (m + 1)
        s += t
        if t == 0:
            return s
        if abs(t) <= ctrl.rel_tol * abs(s) and abs((a + m + 1) * z) < abs((b + m + 1) * (m + 2)):
            small += 1
            if small >= ctrl.consec_small:
                return s
        else:
            small = 0
    raise NonConvergenceError("plain 1F1 series did not converge", partial=s)


def legendre_duplication_residual(x: float) -> float:
    """``sqrt(pi) Gamma(2x+1)`` against ``2^(2x) Gamma(x+1/2) Gamma(x+1)``."""
    lhs = 0.5 * math.log(math.pi) + log_gamma(2 * x + 1)
    rhs = 2 * x * math.log(2.0) + log_gamma(x + 0.5) + log_gamma(x + 1)
    return abs(math.expm1(lhs - rhs))


def kummer_first_residual(a: float, b: float, z: float, ctrl=DEFAULT_CONTROL) -> float:
    """``exp(-z) 1F1(a, b; z)`` against the plain series of ``1F1(b-a, b; -z)``."""
    lhs = math.exp(-z) * hyp_1f1(a, b, z, ctrl)
    rhs = hyp_1f1_series(b - a, b, -z, ctrl)
    return _rel(lhs, rhs)


def kummer_second_residual(a: float, x: float, ctrl=DEFAULT_CONTROL) -> float:
    """``1F1(a, 2a+1; x)`` against its Bessel form, for ``x < 0``."""
    if not x < 0:
        raise DomainError("the Bessel form is stated for x < 0")
    lhs = hyp_1f1(a, 2 * a + 1, x, ctrl)
    h = -x / 2.0
    scaled = bessel_i(a - 0.5, h, scaled=True) + bessel_i(a + 0.5, h, scaled=True)
    # exp(x/2) * I(-x/2) = exp(-h) I(h): fold the exponentials
    log_pref = (2 * a - 1) * math.log(2.0) + log_gamma(a + 0.5) + (0.5 - a) * math.log(-x)
    rhs = math.exp(log_pref) * scaled
    return _rel(lhs, rhs)


def quadratic_transformation_residual(a: float, b: float, u: float, ctrl=DEFAULT_CONTROL) -> float:
    """``2F1(a, b; 2a; u)`` against its quadratic transform."""
    lhs = hyp_2f1(a, b, 2 * a, u, ctrl)
    w = u * u / (2 - u) ** 2
    rhs = (1 - u / 2) ** (-b) * hyp_2f1(b / 2, (b + 1) / 2, a + 0.5, w, ctrl)
    return _rel(lhs, rhs)


def poisson_residual(kappa: float, u: float, ctrl=DEFAULT_CONTROL) -> float:
    """``i_{kappa-1/2}(u)`` against ``int exp(z u) mu^kappa(dz)`` by quadrature."""
    lhs = bessel_i_normalized(kappa - 0.5, u, ctrl)

    def evaluate(n):
        rule = gauss_jacobi_rule(kappa, n)
        return rule.integrate(np.exp(rule.nodes * u))

    rhs = refine(evaluate, ctrl.quad_nodes // 4)
    return _rel(lhs, rhs)


def differentiation_residual(j: int, a: float, b: float, u: float, h: float = 1e-5) -> float:
    """Central difference of ``P_{j+1}^{(a-1,b-1)}`` against ``(j+a+b)/2 P_j^{(a,b)}``.

    Scaled by the sup-norm of the right-hand side (attained at an endpoint).
    """
    fd = (jacobi_p(j + 1, a - 1, b - 1, u + h) - jacobi_p(j + 1, a - 1, b - 1, u - h)) / (2 * h)
    rhs = 0.5 * (j + a + b) * jacobi_p(j, a, b, u)
    ends = jacobi_p(j, a, b, np.array([-1.0, 1.0]))
    scale = 0.5 * abs(j + a + b) * max(np.max(np.abs(ends)), 1.0)
    return abs(fd - rhs) / scale


def special_values_residual(j: int, a: float, b: float) -> float:
    """Recurrence values at +-1 against the closed Pochhammer forms."""
    vals = jacobi_p(j, a, b, np.array([1.0, -1.0]))
    top = math.exp(log_pochhammer(a + 1, j) - math.lgamma(j + 1))
    bottom = (-1) ** j * math.exp(log_pochhammer(b + 1, j) - math.lgamma(j + 1))
    return max(_rel(vals[0], top), _rel(vals[1], bottom))


def orthonormality_residual(n_max: int, a: float, b: float, literal_norm: bool = False) -> float:
    """``max |G - I|`` for the Gram matrix of orthonormal Jacobi polynomials."""
    x, w = gauss_jacobi(n_max + 2, a, b)
    mass = math.exp((a + b + 1) * math.log(2.0) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))
    logh = log_jacobi_sq_norm(np.arange(n_max + 1), a, b)
    norm = np.exp(logh if literal_norm else 0.5 * logh)
    p = jacobi_p_all(n_max, a, b, x) / norm[:, None]
    gram = (p * (w * mass)) @ p.T
    return float(np.max(np.abs(gram - np.eye(n_max + 1))))


def euler_1f1_residual(a: float, b: float, z: float, ctrl=DEFAULT_CONTROL) -> float:
    from .hypergeom import hyp_1f1_euler

    return _rel(hyp_1f1(a, b, z, ctrl), hyp_1f1_euler(a, b, z, ctrl))


def euler_2f1_residual(c: float, d: float, e: float, u: float, ctrl=DEFAULT_CONTROL) -> float:
    from .hypergeom import hyp_2f1_euler

    return _rel(hyp_2f1(c, d, e, u, ctrl), hyp_2f1_euler(c, d, e, u, ctrl))


def erdelyi_multiplication_check(a, b, c, y, z, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Relative residual of the multiplication theorem for 1F1.

    ``1F1(a, c; yz) = sum_j (-z)^j Gamma(b+j) (a)_j / (Gamma(b+2j) j!)
    2F1(-j, j+b; c; y) 1F1(a+j, b+1+2j; z)``.
    """
    if not (a > 0 and b > 0 and c > 0 and abs(y) < 1 and z >= 0):
        raise DomainError("need a, b, c > 0, |y| < 1 and z >= 0")
    lhs = hyp_1f1(a, c, y * z, ctrl)
    if z == 0:
        return _rel(lhs, 1.0)
    total = 0.0
    small = 0
    for j in range(ctrl.max_terms):
        log_coef = (
            j * math.log(z)
            + math.lgamma(b + j)
            - math.lgamma(b + 2 * j)
            + (log_pochhammer(a, j) if j else 0.0)
            - math.lgamma(j + 1)
        )
        lf, sf = log_hyp_1f1(a + j, b + 1 + 2 * j, z, ctrl)
        poly = hyp_2f1(-j, j + b, c, y, ctrl)
        term = (-1) ** j * poly * float(sf) * math.exp(log_coef + float(lf))
        total += term
        if abs(term) <= ctrl.rel_tol * abs(total):
            small += 1
            if small >= ctrl.consec_small and j > z:
                return _rel(lhs, total)
        else:
            small = 0
    raise NonConvergenceError("multiplication-theorem series did not converge", partial=total, terms=ctrl.max_terms)


def xu_identity_check(j: int, k: float, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``C_j^{(k)}(2x^2-1)`` against ``int C_{2j}^{(2k)}(u x) mu^k(du)``.

    The residual is relative to ``C_j^{(k)}(1)``, the sup-norm on [-1, 1].
    """
    if not (k > 0 and -1 <= x <= 1):
        raise DomainError("need k > 0 and x in [-1, 1]")
    lhs = gegenbauer_c(j, k, 2 * x * x - 1)
    rule = gauss_jacobi_rule(k, max(ctrl.quad_nodes, j + 2))
    rhs = rule.integrate(gegenbauer_c(2 * j, 2 * k, rule.nodes * x))
    scale = pochhammer(2 * k, j) / math.factorial(j) if j < 170 else abs(lhs)
    return abs(lhs - rhs) / max(scale, 1e-300)

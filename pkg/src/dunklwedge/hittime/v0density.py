"""Density of ``V0 = rho^2 / (2 T0)`` for equal multiplicities.

Four routes, all unnormalised:

* ``density_series_equal_k``: even-index part of the Gegenbauer series, any p;
* ``density_v0_integral``: integral of two 1F1 against the symmetric Beta
  measure ``mu^(nu+1/2)`` (p = 2);
* ``density_v0_bessel``: finite-interval integral of normalised Bessel
  functions, for ``nu`` in (1/4, 1/2] (p = 2);
* ``density_v0_z2z2``: the quadrant p = 1, where ``T0`` is the minimum of two
  independent inverse-Gamma times.

Here ``nu = k - 1/2`` lies in (0, 1/2].
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..model import DEFAULT_CONTROL, SeriesControl
from ..specfun.bessel import log_bessel_i_normalized
from ..specfun.hypergeom import log_hyp_1f1
from ..specfun.orthopoly import gegenbauer_c_all
from ..specfun.quadrature import beta_rule, gauss_jacobi_rule, refine
from ._series import sum_series


def _vec(v):
    return np.atleast_1d(np.asarray(v, dtype=float))


def _out(arr, like):
    return float(arr[0]) if np.ndim(like) == 0 else arr


def _check_nu(nu, lo=0.0, lo_open=True):
    ok = (nu > lo if lo_open else nu >= lo) and nu <= 0.5
    if not ok:
        raise DomainError(f"nu = {nu} outside ({lo}, 1/2]")


def _check_phi(phi, upper):
    if not 0 < phi < upper:
        raise DomainError(f"phi = {phi} outside (0, {upper})")


def density_series_equal_k(v, p: int, k: float, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Even-index part of the Gegenbauer density series.

    ``sin^{2nu}(2p phi) e^{-v} sum_{j even} Gamma(a_j)/Gamma(b_j)
    v^{p(j+2nu)-1} 1F1(a_j, b_j+1; v) C_j^{(k)}(cos 2p phi)`` with
    ``a_j = p(j+1)`` and ``b_j = p(2j+2nu+1)``.
    """
    if not (0.5 < k <= 1):
        raise DomainError(f"k = {k} outside (1/2, 1]")
    _check_phi(phi, math.pi / (2 * p))
    nu = k - 0.5
    v_arr = _vec(v)
    if np.any(v_arr <= 0):
        raise DomainError("v must be > 0")
    geg = gegenbauer_c_all(2 * ctrl.max_terms, k, math.cos(2 * p * phi))
    logv = np.log(v_arr)

    def term(i, idx):
        j = 2 * i
        a, b = p * (j + 1.0), p * (2.0 * j + 2 * nu + 1.0)
        vv = v_arr[idx]
        lf, sf = log_hyp_1f1(a, b + 1, vv, ctrl)
        log_env = math.lgamma(a) - math.lgamma(b) + (p * (j + 2 * nu) - 1) * logv[idx] + lf - vv
        return log_env, geg[j] * sf

    total = sum_series(term, v_arr.size, ctrl, "density series")
    return _out(math.sin(2 * p * phi) ** (2 * nu) * total, v)


def lemma1_lhs(v, k: float, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """``sum_j Gamma(2j+2)/Gamma(4j+4k) v^{2j} 1F1(2j+2, 4j+4k+1; v) C_j^{(k)}(cos 4 phi)``."""
    if not k > 0:
        raise DomainError("k must be > 0")
    v_arr = _vec(v)
    if np.any(v_arr < 0):
        raise DomainError("v must be >= 0")
    geg = gegenbauer_c_all(ctrl.max_terms, k, math.cos(4 * phi))
    with np.errstate(divide="ignore"):
        logv = np.log(v_arr)

    def term(j, idx):
        vv = v_arr[idx]
        lf, sf = log_hyp_1f1(2 * j + 2, 4 * j + 4 * k + 1, vv, ctrl)
        pw = 0.0 if j == 0 else 2 * j * logv[idx]
        log_env = math.lgamma(2 * j + 2) - math.lgamma(4 * j + 4 * k) + pw + lf
        return log_env, geg[j] * sf

    return _out(sum_series(term, v_arr.size, ctrl, "lemma series"), v)


def _mu_average(log_integrand, kappa, ctrl):
    """``int exp(log_integrand(u)) mu^kappa(du)`` with node doubling; vector over v."""

    def evaluate(n):
        rule = gauss_jacobi_rule(kappa, n)
        return np.exp(log_integrand(rule.nodes)) @ rule.weights

    return refine(evaluate, max(ctrl.quad_nodes // 2, 8))


def lemma1_rhs(v, k: float, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """``Gamma(4k)^{-1} int 1F1(2, 2k+1/2; v(1 - u cos 2phi)/2) mu^k(du)``."""
    if not k > 0:
        raise DomainError("k must be > 0")
    v_arr = _vec(v)
    if np.any(v_arr < 0):
        raise DomainError("v must be >= 0")
    c2 = math.cos(2 * phi)

    def log_integrand(u):
        z = np.multiply.outer(v_arr, 1 - c2 * u) / 2
        return log_hyp_1f1(2.0, 2 * k + 0.5, z, ctrl)[0]

    out = _mu_average(log_integrand, k, ctrl) / math.gamma(4 * k)
    return _out(np.atleast_1d(out), v)


def density_v0_integral(v, nu: float, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Integral form of the ``V0`` density in the pi/4 wedge (unnormalised).

    ``sin^{2nu}(4phi) e^{-v} v^{4nu-1} int [1F1(2, 2nu+3/2; v(1-u cos2phi)/2)
    + 1F1(2, 2nu+3/2; v(1-u sin2phi)/2)] mu^{nu+1/2}(du)``.
    """
    _check_nu(nu)
    _check_phi(phi, math.pi / 4)
    v_arr = _vec(v)
    if np.any(v_arr <= 0):
        raise DomainError("v must be > 0")
    c2, s2 = math.cos(2 * phi), math.sin(2 * phi)
    b = 2 * nu + 1.5

    def log_integrand(u):
        out = []
        for w in (c2, s2):
            z = np.multiply.outer(v_arr, 1 - w * u) / 2
            out.append(log_hyp_1f1(2.0, b, z, ctrl)[0] - v_arr[:, None])
        return np.logaddexp(out[0], out[1])

    integral = np.atleast_1d(_mu_average(log_integrand, nu + 0.5, ctrl))
    pref = math.sin(4 * phi) ** (2 * nu) * v_arr ** (4 * nu - 1)
    return _out(pref * integral, v)


def density_v0_bessel(v, nu: float, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Bessel form of the ``V0`` density for ``nu`` in (1/4, 1/2] (unnormalised).

    ``sin^{2nu}(4phi) e^{-v/2} v^{2nu-3/2} int_0^v e^{-y/2} y^{2nu-3/2} (v-y)
    [i_nu(cos2phi (v-y)/2) + i_nu(sin2phi (v-y)/2)] dy``.  After ``y = v s`` the
    endpoint factor ``s^{2nu-3/2}(1-s)`` becomes the weight of a Gauss-Jacobi
    rule.
    """
    if not (0.25 < nu <= 0.5):
        raise DomainError(f"nu = {nu} outside (1/4, 1/2]")
    _check_phi(phi, math.pi / 4)
    v_arr = _vec(v)
    if np.any(v_arr <= 0):
        raise DomainError("v must be > 0")
    alpha = 2 * nu - 1.5
    c2, s2 = math.cos(2 * phi), math.sin(2 * phi)
    beta_const = math.exp(math.lgamma(alpha + 1) + math.lgamma(2) - math.lgamma(alpha + 3))

    def evaluate(n):
        s, w = beta_rule(n, alpha + 1, 2.0)
        rest = np.multiply.outer(v_arr, 1 - s) / 2  # (v - y)/2
        damp = -np.multiply.outer(v_arr, 1 + s) / 2  # -(v + y)/2
        terms = np.logaddexp(log_bessel_i_normalized(nu, c2 * rest), log_bessel_i_normalized(nu, s2 * rest))
        return np.exp(terms + damp) @ w

    integral = np.atleast_1d(refine(evaluate, max(ctrl.quad_nodes // 2, 8)))
    # v^{2nu-3/2} from the prefactor, v^{alpha+2} from the substitution
    pref = math.sin(4 * phi) ** (2 * nu) * v_arr ** (4 * nu - 1) * beta_const
    return _out(pref * integral, v)


def log_lower_gamma(nu: float, x):
    """``log int_0^x e^{-u} u^{nu-1} du`` via ``(x^nu/nu) e^{-x} 1F1(1, nu+1; x)``."""
    x = np.asarray(x, dtype=float)
    lf, _ = log_hyp_1f1(1.0, nu + 1.0, x)
    with np.errstate(divide="ignore"):
        return nu * np.log(x) - math.log(nu) - x + lf


def density_v0_z2z2(v, nu: float, phi: float, nu1: float | None = None):
    """``V0`` density in the quadrant (unnormalised).

    ``sin^{2nu}(phi) v^{nu-1} e^{-v sin^2 phi} gamma(nu1, v cos^2 phi)`` plus the
    mirrored term, with ``gamma`` the lower incomplete Gamma integral.  ``nu1``
    (defaulting to ``nu``) is the index of the wall ``theta = pi/2``; the
    normalising constant is ``1/(Gamma(nu) Gamma(nu1))``.
    """
    nu0 = nu
    nu1 = nu if nu1 is None else nu1
    if not (0 < nu0 <= 0.5 and 0 < nu1 <= 0.5):
        raise DomainError("indices must lie in (0, 1/2]")
    _check_phi(phi, math.pi / 2)
    v_arr = _vec(v)
    if np.any(v_arr <= 0):
        raise DomainError("v must be > 0")
    s2, c2 = math.sin(phi) ** 2, math.cos(phi) ** 2
    lv = np.log(v_arr)
    first = nu0 * math.log(s2) + (nu0 - 1) * lv - v_arr * s2 + log_lower_gamma(nu1, v_arr * c2)
    second = nu1 * math.log(c2) + (nu1 - 1) * lv - v_arr * c2 + log_lower_gamma(nu0, v_arr * s2)
    return _out(np.exp(first) + np.exp(second), v)


def tail_z2z2(v, nu0: float, nu1: float, phi: float):
    """Exact quadrant tail ``P(T0 > t) = P(G0 < v sin^2 phi) P(G1 < v cos^2 phi)``.

    ``G0 ~ Gamma(nu0)`` and ``G1 ~ Gamma(nu1)``; a zero index gives a factor 1.
    """
    v_arr = _vec(v)
    out = np.ones(v_arr.size)
    for nu, w in ((nu0, math.sin(phi) ** 2), (nu1, math.cos(phi) ** 2)):
        if nu > 0:
            out *= np.exp(log_lower_gamma(nu, v_arr * w) - math.lgamma(nu))
    return _out(out, v)

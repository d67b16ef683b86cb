"""Tail of the first hitting time of the wedge boundary, general multiplicities.

With ``v = rho^2/(2t)``, ``x = cos(2 p phi)``, ``a_j = p(j+1)``,
``b_j = p(2j + nu0 + nu1 + 1)`` and ``c_j = b_j - a_j = p(j + nu0 + nu1)``::

    P(T0 > t) = c * sin^{2 nu0}(p phi) cos^{2 nu1}(p phi) * exp(-v)
                * sum_j F(j) v^{c_j} 1F1(a_j + 1, b_j + 1; v) p_j(x)

where ``p_j`` is the orthonormal Jacobi polynomial with weight
``(1-x)^nu0 (1+x)^nu1``.  The weight exponent ``nu0`` sits at ``x = 1``,
which is the wall ``theta = 0`` carrying ``k0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..model import DEFAULT_CONTROL, SeriesControl, StartPoint, WedgeModel, v_from_t, validate_model, validate_start
from ..specfun.gamma import log_pochhammer
from ..specfun.hypergeom import log_hyp_1f1
from ..specfun.orthopoly import jacobi_p, jacobi_p_all, log_jacobi_sq_norm
from ..specfun.quadrature import gauss_jacobi
from ._series import sum_series


@dataclass(frozen=True)
class TailCoefficients:
    """First ``n`` series parameters of the tail for one model."""

    p: int
    nu0: float
    nu1: float
    a: np.ndarray
    b: np.ndarray
    F: np.ndarray

    @property
    def c(self) -> np.ndarray:
        return self.b - self.a


def _exponents(j, model: WedgeModel):
    p = model.p
    a = p * (j + 1.0)
    b = p * (2.0 * j + model.nu0 + model.nu1 + 1.0)
    return a, b


def jacobi_integral(j: int, alpha: float, beta: float) -> float:
    """``int_{-1}^{1} P_j^{(alpha,beta)}(s) ds`` in closed form.

    Uses the derivative rule to write it as a difference of the end-point
    values of ``P_{j+1}^{(alpha-1,beta-1)}``, which are Pochhammer ratios.
    """
    if j == 0:
        return 2.0
    lf = math.lgamma(j + 2)
    top = math.exp(log_pochhammer(alpha, j + 1) - lf) if alpha > 0 else 0.0
    bottom = math.exp(log_pochhammer(beta, j + 1) - lf) if beta > 0 else 0.0
    # P(-1) = (-1)^(j+1) (beta)_{j+1}/(j+1)!
    diff = top - (-1) ** (j + 1) * bottom
    if alpha == beta:
        diff = top * (1 + (-1) ** j)
    return 2.0 / (j + alpha + beta) * diff


def jacobi_integral_quadrature(j: int, alpha: float, beta: float) -> float:
    """Same integral by Gauss-Legendre quadrature (exact for this degree)."""
    x, w = gauss_jacobi(j // 2 + 2, 0.0, 0.0)
    return 2.0 * float(np.dot(w, jacobi_p(j, alpha, beta, x)))


def _norm_divisor(j, model: WedgeModel, literal_norm: bool):
    logh = log_jacobi_sq_norm(j, model.nu0, model.nu1)
    return np.exp(logh if literal_norm else 0.5 * logh)


def coeff_F(j: int, model: WedgeModel, ctrl: SeriesControl = DEFAULT_CONTROL,
            literal_norm: bool = False, quadrature: bool = False) -> float:
    """Coefficient ``F(j) = Gamma(a_j+1)/Gamma(b_j+1) * int p_j``.

    ``quadrature=True`` integrates the polynomial numerically instead of
    using the end-point formula.
    """
    validate_model(model)
    a, b = _exponents(j, model)
    integ = (jacobi_integral_quadrature if quadrature else jacobi_integral)(j, model.nu0, model.nu1)
    ratio = math.exp(math.lgamma(a + 1) - math.lgamma(b + 1))
    return ratio * integ / float(_norm_divisor(j, model, literal_norm))


def tail_coefficients(model: WedgeModel, n: int, literal_norm: bool = False) -> TailCoefficients:
    j = np.arange(n)
    a, b = _exponents(j, model)
    F = np.array([coeff_F(i, model, literal_norm=literal_norm) for i in range(n)])
    return TailCoefficients(model.p, model.nu0, model.nu1, a, b, F)


def _angular_prefactor(model: WedgeModel, phi: float) -> float:
    s = math.sin(model.p * phi)
    c = math.cos(model.p * phi)
    return s ** (2 * model.nu0) * c ** (2 * model.nu1)


class _TailTerms:
    """Per-index pieces shared by the tail and its v-derivative."""

    def __init__(self, model, phi, ctrl, literal_norm):
        self.model = model
        n = ctrl.max_terms
        x = math.cos(2 * model.p * phi)
        self.poly = jacobi_p_all(n - 1, model.nu0, model.nu1, x)
        self.integ = np.array([jacobi_integral(j, model.nu0, model.nu1) for j in range(n)])
        self.divisor = _norm_divisor(np.arange(n), model, literal_norm)
        # p_j enters twice: inside F(j) and evaluated at x
        self.factor = self.integ * self.poly / self.divisor**2
        self.ctrl = ctrl


def _log_v(v, power):
    with np.errstate(divide="ignore"):
        return np.where(power == 0, 0.0, power * np.log(v))


def tail_series_v(v, model: WedgeModel, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL,
                  literal_norm: bool = False) -> np.ndarray:
    """Unnormalised tail as a function of ``v = rho^2/(2t)`` (array in, array out)."""
    v = np.atleast_1d(np.asarray(v, dtype=float))
    terms = _TailTerms(model, phi, ctrl, literal_norm)

    def term(j, idx):
        a, b = _exponents(j, model)
        vv = v[idx]
        lf, sf = log_hyp_1f1(a + 1, b + 1, vv, ctrl)
        log_env = math.lgamma(a + 1) - math.lgamma(b + 1) + _log_v(vv, b - a) + lf - vv
        return log_env, terms.factor[j] * sf

    return _angular_prefactor(model, phi) * sum_series(term, v.size, ctrl, "tail series")


def tail_density_v(v, model: WedgeModel, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL,
                   literal_norm: bool = False) -> np.ndarray:
    """Term-by-term ``d/dv`` of :func:`tail_series_v`: unnormalised density of ``V0``.

    Uses ``d/dv [exp(-v) v^c 1F1(a+1, b+1; v)] = c v^(c-1) exp(-v) 1F1(a, b+1; v)``.
    """
    v = np.atleast_1d(np.asarray(v, dtype=float))
    terms = _TailTerms(model, phi, ctrl, literal_norm)

    def term(j, idx):
        a, b = _exponents(j, model)
        c = b - a
        vv = v[idx]
        lf, sf = log_hyp_1f1(a, b + 1, vv, ctrl)
        log_env = math.lgamma(a + 1) - math.lgamma(b + 1) + math.log(c) + _log_v(vv, c - 1) + lf - vv
        return log_env, terms.factor[j] * sf

    return _angular_prefactor(model, phi) * sum_series(term, v.size, ctrl, "tail density series")


def _scalar_or_array(out, like):
    return float(out[0]) if np.ndim(like) == 0 else out


def tail_hitting(t, model: WedgeModel, start: StartPoint, ctrl: SeriesControl = DEFAULT_CONTROL,
                 literal_norm: bool = False):
    """Unnormalised ``P(T0 > t)`` (the series without its constant)."""
    validate_model(model)
    validate_start(model, start)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr <= 0):
        from ..errors import DomainError

        raise DomainError("t must be > 0")
    out = tail_series_v(v_from_t(t_arr, start.rho), model, start.phi, ctrl, literal_norm)
    return _scalar_or_array(out, t)


def tail_hitting_normalized(t, model: WedgeModel, start: StartPoint, ctrl: SeriesControl = DEFAULT_CONTROL,
                            literal_norm: bool = False):
    """``P(T0 > t)`` with the constant fixed by normalising the density of ``V0``."""
    from .normalize import normalize_density

    tag = "tail-literal" if literal_norm else "tail"
    const = normalize_density(tag, model, ctrl=ctrl).constant
    return const * tail_hitting(t, model, start, ctrl, literal_norm)

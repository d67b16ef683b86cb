"""Exit time of planar Brownian motion from the wedge ``0 < theta < pi/(2p)``.

Two deterministic routes to ``P(T0 > t)``:

* a series of modified Bessel functions of half-odd orders;
* the Fourier series of the square wave ``W_p(x) = sgn(sin 2px)`` averaged
  against Spitzer's characteristic function of the winding angle.

Both are summed over odd harmonics ``n = 2j+1``, ``j >= 0`` (the sum over all
integers folds to twice this since ``sin(n y)/n`` is even in ``n``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .hittime._series import sum_series
from .model import DEFAULT_CONTROL, SeriesControl
from .specfun.bessel import log_bessel_i

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class SquareWaveSpec:
    """``W_p``: period ``pi/p``, amplitude one, jumps on ``(pi/(2p)) Z``."""

    p: int

    def __call__(self, x):
        return square_wave(self.p, x)


@dataclass(frozen=True)
class WindingLaw:
    """Law of the winding angle at time ``t`` from radius ``rho`` (start angle 0)."""

    rho: float
    t: float

    def __post_init__(self):
        if not (self.rho > 0 and self.t > 0):
            raise DomainError("rho and t must be > 0")

    @property
    def x(self) -> float:
        return self.rho**2 / (4 * self.t)

    def cf(self, lam):
        return spitzer_cf(lam, self.rho, self.t)


def square_wave(p: int, x):
    """``sgn(sin(2 p x))`` with the value 0 on the jump lattice ``(pi/(2p)) Z``.

    The lattice test is done on ``q = 2 p x / pi`` with a relative tolerance of a
    few ulps, so that ``x = pi/3`` for ``p = 3`` returns 0 despite rounding.
    """
    x_arr = np.asarray(x, dtype=float)
    q = x_arr * (2 * p / math.pi)
    on_lattice = np.abs(q - np.round(q)) <= 8 * np.finfo(float).eps * np.maximum(1.0, np.abs(q))
    # sign of sin(pi q) from the parity of floor(q) avoids sin round-off
    sgn = np.where(np.floor(q) % 2 == 0, 1, -1)
    out = np.where(on_lattice, 0, sgn).astype(np.int64)
    return int(out) if out.ndim == 0 else out


def square_wave_fourier(p: int, x, n_terms: int):
    """Partial sum ``(4/pi) sum_{j<n_terms} sin(2(2j+1)px)/(2j+1)`` of the square wave."""
    x_arr = np.asarray(x, dtype=float)
    n = 2 * np.arange(n_terms) + 1
    out = (4 / math.pi) * np.sum(np.sin(2 * p * np.multiply.outer(x_arr, n)) / n, axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def _log_bessel_pair_scaled(order_lo, x):
    """``log(exp(-x) [I_{order_lo}(x) + I_{order_lo+1}(x)])``."""
    return np.logaddexp(log_bessel_i(order_lo, x), log_bessel_i(order_lo + 1, x)) - x


def spitzer_cf(lam, rho: float, t: float):
    """``E[exp(i lam Theta_t)]`` for the winding angle of planar BM started at angle 0.

    ``(sqrt(pi)/2) sqrt(2x) exp(-x) [I_{(|lam|-1)/2}(x) + I_{(|lam|+1)/2}(x)]`` with
    ``x = rho^2/(4t)``, evaluated with exponentially scaled Bessel values.
    """
    if not (rho > 0 and t > 0):
        raise DomainError("rho and t must be > 0")
    lam_arr = np.abs(np.asarray(lam, dtype=float))
    x = rho * rho / (4.0 * t)
    lo = (lam_arr - 1.0) / 2.0
    logv = _log_bessel_pair_scaled(lo, np.full(lo.shape, x))
    out = 0.5 * _SQRT_PI * math.sqrt(2 * x) * np.exp(logv)
    return float(out) if out.ndim == 0 else out


def coeff_S(j: int) -> float:
    """``int_0^pi sin((j+1) y) dy``: ``2/(j+1)`` for even ``j``, 0 for odd ``j``."""
    if j < 0:
        raise DomainError("j must be >= 0")
    return 2.0 / (j + 1) if j % 2 == 0 else 0.0


def _check(t, p, rho, phi):
    if isinstance(p, bool) or int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p!r}")
    if not rho > 0:
        raise DomainError("rho must be > 0")
    if not 0 < phi < math.pi / (2 * p):
        raise DomainError(f"phi = {phi} outside (0, {math.pi / (2 * p)})")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr <= 0):
        raise DomainError("t must be > 0")
    return t_arr


def bm_tail_bessel(t, p: int, rho: float, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Exit-time tail as a Bessel series.

    ``pi^{-1/2} exp(-x) sqrt(2x) sum_{n odd in Z} [I_{|n|p-1/2}(x) + I_{|n|p+1/2}(x)]
    sin(2 n p phi)/n`` with ``x = rho^2/(4t)``.
    """
    t_arr = _check(t, p, rho, phi)
    x = rho * rho / (4.0 * t_arr)

    def term(j, idx):
        n = 2 * j + 1
        xx = x[idx]
        log_env = _log_bessel_pair_scaled(np.full(xx.shape, n * p - 0.5), xx)
        return log_env, math.sin(2 * n * p * phi) / n

    total = sum_series(term, x.size, ctrl, "Bessel tail series")
    # factor 2 folds the negative harmonics
    out = 2.0 / _SQRT_PI * np.sqrt(2 * x) * total
    return float(out[0]) if np.ndim(t) == 0 else out


def bm_tail_squarewave(t, p: int, rho: float, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Exit-time tail as ``E[W_p(Theta_t + phi)]`` through the Fourier series of ``W_p``.

    ``(4/pi) sum_{j>=0} cf(2(2j+1)p) sin(2(2j+1)p phi)/(2j+1)`` with ``cf`` the
    Spitzer characteristic function.
    """
    t_arr = _check(t, p, rho, phi)

    def term(j, idx):
        n = 2 * j + 1
        cf = np.array([spitzer_cf(2 * n * p, rho, tt) for tt in t_arr[idx]])
        with np.errstate(divide="ignore"):
            return np.log(cf), (4 / math.pi) * math.sin(2 * n * p * phi) / n

    out = sum_series(term, t_arr.size, ctrl, "square-wave series")
    return float(out[0]) if np.ndim(t) == 0 else out


def wp_expectation_truncated(t, p: int, rho: float, phi: float, n_terms: int):
    """Truncated Fourier evaluation of ``E[W_p(Theta_t + phi)]`` with ``n_terms`` harmonics."""
    t_arr = _check(t, p, rho, phi)
    out = np.zeros(t_arr.size)
    for j in range(n_terms):
        n = 2 * j + 1
        cf = np.array([spitzer_cf(2 * n * p, rho, tt) for tt in t_arr])
        out += (4 / math.pi) * cf * math.sin(2 * n * p * phi) / n
    return float(out[0]) if np.ndim(t) == 0 else out

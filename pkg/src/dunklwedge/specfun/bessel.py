"""Modified Bessel function of the first kind and its normalised variant.

``I_k(u) = (u/2)^k / Gamma(k+1) * 0F1(; k+1; u^2/4)``.  The 0F1 series has
positive terms and is summed with rescaling, so it is accurate well past the
overflow point of ``I_k`` itself.  For ``u >= 50`` with moderate order the
Hankel expansion of ``exp(-u) I_k(u)`` is used instead; the two regimes agree
to rounding where they overlap.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, NonConvergenceError
from ..model import DEFAULT_CONTROL, SeriesControl

_RESCALE = 1e250
_LOG_RESCALE = math.log(_RESCALE)
_HANKEL_MIN = 50.0
_LOG_MAX = math.log(np.finfo(float).max)


def _log_0f1(b, x, ctrl: SeriesControl):
    """``log 0F1(; b; x)`` for ``b > 0`` and ``x >= 0`` (flat arrays)."""
    s = np.ones(x.size)
    t = np.ones(x.size)
    logscale = np.zeros(x.size)
    count = np.zeros(x.size, dtype=np.int64)
    active = np.flatnonzero(x > 0)
    cap = ctrl.max_terms + 2 * int(math.ceil(math.sqrt(float(x.max(initial=0.0)))))
    m = 0
    while active.size:
        if m >= cap:
            raise NonConvergenceError(
                f"0F1 series did not converge in {cap} terms", partial=s[active[0]], terms=m
            )
        bb, xx = b[active], x[active]
        tt = t[active] * (xx / ((bb + m) * (m + 1)))
        ss = s[active] + tt
        big = ss > _RESCALE
        if np.any(big):
            ss[big] /= _RESCALE
            tt[big] /= _RESCALE
            logscale[active[big]] += _LOG_RESCALE
        t[active] = tt
        s[active] = ss
        nxt = xx < (bb + m + 1) * (m + 2)
        small = (tt <= ctrl.rel_tol * ss) & nxt
        cnt = np.where(small, count[active] + 1, 0)
        count[active] = cnt
        active = active[cnt < ctrl.consec_small]
        m += 1
    return np.log(s) + logscale


def _hankel_log_scaled(kappa, u):
    """``log(exp(-u) I_kappa(u))`` by the large-argument expansion."""
    mu = 4.0 * kappa * kappa
    total = np.ones(u.size)
    term = np.ones(u.size)
    live = np.ones(u.size, dtype=bool)
    for k in range(1, 60):
        nxt = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * u)
        # asymptotic series: stop before terms start growing
        live &= np.abs(nxt) < np.abs(term)
        nxt = np.where(live, nxt, 0.0)
        total += nxt
        term = nxt
        if not np.any(np.abs(term) > 1e-17 * np.abs(total)):
            break
    return np.log(total) - 0.5 * np.log(2.0 * math.pi * u)


def _use_hankel(kappa, u):
    return (u >= _HANKEL_MIN) & (kappa * kappa <= u / 4.0)


def log_bessel_i(kappa, u, ctrl: SeriesControl = DEFAULT_CONTROL):
    """``log I_kappa(u)`` for ``kappa > -1`` and ``u > 0`` (broadcasting)."""
    kappa, u = np.broadcast_arrays(np.asarray(kappa, dtype=float), np.asarray(u, dtype=float))
    if np.any(kappa <= -1):
        raise DomainError("Bessel order must exceed -1")
    if np.any(u <= 0):
        raise DomainError("log_bessel_i needs u > 0")
    shape = u.shape
    k, x = kappa.ravel(), u.ravel()
    out = np.empty(x.size)
    hank = _use_hankel(k, x)
    if np.any(hank):
        out[hank] = _hankel_log_scaled(k[hank], x[hank]) + x[hank]
    ser = ~hank
    if np.any(ser):
        kk, xx = k[ser], x[ser]
        lg = np.array([math.lgamma(v + 1.0) for v in kk])
        out[ser] = kk * np.log(xx / 2.0) - lg + _log_0f1(kk + 1.0, xx * xx / 4.0, ctrl)
    return out.reshape(shape)


def bessel_i(kappa, u, scaled: bool = False, ctrl: SeriesControl = DEFAULT_CONTROL):
    """``I_kappa(u)`` for ``u >= 0``; ``scaled=True`` returns ``exp(-u) I_kappa(u)``.

    Raises ``OverflowError`` when the unscaled value is not representable.
    """
    kappa, u = np.broadcast_arrays(np.asarray(kappa, dtype=float), np.asarray(u, dtype=float))
    if np.any(u < 0):
        raise DomainError("bessel_i needs u >= 0")
    out = np.empty(u.shape)
    pos = u > 0
    if np.any(pos):
        lg = log_bessel_i(kappa[pos], u[pos], ctrl)
        if scaled:
            lg = lg - u[pos]
        elif np.any(lg > _LOG_MAX):
            raise OverflowError("I_kappa(u) exceeds the floating range; use scaled=True")
        out[pos] = np.exp(lg)
    zero = ~pos
    if np.any(zero):
        kz = kappa[zero]
        out[zero] = np.where(kz == 0, 1.0, np.where(kz > 0, 0.0, np.inf))
    return float(out) if out.ndim == 0 else out


def log_bessel_i_normalized(kappa, u, ctrl: SeriesControl = DEFAULT_CONTROL):
    """``log i_kappa(u)`` where ``i_kappa(u) = (2/u)^kappa Gamma(kappa+1) I_kappa(u)``."""
    kappa, u = np.broadcast_arrays(np.asarray(kappa, dtype=float), np.asarray(u, dtype=float))
    if np.any(kappa <= -1):
        raise DomainError("Bessel order must exceed -1")
    shape = u.shape
    k, x = kappa.ravel(), np.abs(u.ravel())
    out = np.zeros(x.size)
    hank = _use_hankel(k, x)
    if np.any(hank):
        kh, xh = k[hank], x[hank]
        lg = np.array([math.lgamma(v + 1.0) for v in kh])
        out[hank] = _hankel_log_scaled(kh, xh) + xh + kh * np.log(2.0 / xh) + lg
    ser = ~hank
    if np.any(ser):
        out[ser] = _log_0f1(k[ser] + 1.0, x[ser] * x[ser] / 4.0, ctrl)
    return out.reshape(shape)


def bessel_i_normalized(kappa, u, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Normalised Bessel function ``i_kappa``; even in ``u`` with ``i_kappa(0) = 1``."""
    out = np.exp(log_bessel_i_normalized(kappa, u, ctrl))
    return float(out) if out.ndim == 0 else out

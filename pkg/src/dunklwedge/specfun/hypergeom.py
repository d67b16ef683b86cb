"""Confluent (1F1) and Gauss (2F1) hypergeometric functions.

1F1 is summed as a power series for non-negative argument only; a negative
argument is mapped through Kummer's first relation
``1F1(a, b; z) = e^z 1F1(b - a, b; -z)`` so the summed terms never alternate
for the parameter ranges used in this package.  All parameters broadcast.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, NonConvergenceError
from ..model import DEFAULT_CONTROL, SeriesControl
from .quadrature import beta_rule, refine

_RESCALE = 1e250
_LOG_RESCALE = math.log(_RESCALE)


def _check_lower(b):
    b = np.asarray(b, dtype=float)
    bad = (b <= 0) & (b == np.round(b))
    if np.any(bad):
        raise DomainError("lower parameter must not be a non-positive integer")


def _log_1f1_nonneg(a, b, z, ctrl: SeriesControl):
    """``(log|F|, sign F)`` of 1F1(a, b; z) for z >= 0, flattened inputs."""
    n = z.size
    s = np.ones(n)
    t = np.ones(n)
    logscale = np.zeros(n)
    count = np.zeros(n, dtype=np.int64)
    active = np.flatnonzero(z != 0)
    # the term peak sits near m ~ z, so the cap counts from there
    cap = ctrl.max_terms + 2 * int(math.ceil(float(z.max(initial=0.0))))
    m = 0
    while active.size:
        if m >= cap:
            raise NonConvergenceError(
                f"1F1 series did not converge in {cap} terms",
                partial=s[active[0]] * math.exp(logscale[active[0]]),
                terms=m,
                last_term=abs(t[active[0]]),
            )
        aa, bb, zz = a[active], b[active], z[active]
        tt = t[active] * ((aa + m) / (bb + m) * zz / (m + 1))
        ss = s[active] + tt
        big = np.abs(ss) > _RESCALE
        if np.any(big):
            ss[big] /= _RESCALE
            tt[big] /= _RESCALE
            logscale[active[big]] += _LOG_RESCALE
        t[active] = tt
        s[active] = ss
        nxt = np.abs((aa + m + 1) * zz) < np.abs((bb + m + 1) * (m + 2))
        small = (np.abs(tt) <= ctrl.rel_tol * np.abs(ss)) & nxt
        cnt = np.where(small, count[active] + 1, 0)
        count[active] = cnt
        done = (cnt >= ctrl.consec_small) | (tt == 0)
        active = active[~done]
        m += 1
    return np.log(np.abs(s)) + logscale, np.sign(s)


def log_hyp_1f1(a, b, z, ctrl: SeriesControl = DEFAULT_CONTROL):
    """``(log|1F1(a, b; z)|, sign)`` with broadcasting; safe far beyond exp range."""
    _check_lower(b)
    a, b, z = np.broadcast_arrays(
        np.asarray(a, dtype=float), np.asarray(b, dtype=float), np.asarray(z, dtype=float)
    )
    shape = z.shape
    a, b, z = a.ravel(), b.ravel(), z.ravel()
    neg = z < 0
    aa = np.where(neg, b - a, a)
    za = np.abs(z)
    logf, sign = _log_1f1_nonneg(aa, b, za, ctrl)
    logf = np.where(neg, logf + z, logf)
    return logf.reshape(shape), sign.reshape(shape)


def hyp_1f1(a, b, z, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Confluent hypergeometric function ``1F1(a, b; z)``."""
    logf, sign = log_hyp_1f1(a, b, z, ctrl)
    out = sign * np.exp(logf)
    return float(out) if out.ndim == 0 else out


def hyp_1f1_euler(a: float, b: float, z, ctrl: SeriesControl = DEFAULT_CONTROL):
    """1F1 through its Euler integral; requires ``b > a > 0``.

    The integral is an expectation of ``exp(z U)`` for ``U ~ Beta(a, b - a)``.
    """
    if not (a > 0 and b > a):
        raise DomainError(f"Euler integral needs b > a > 0, got a={a}, b={b}")
    z = np.asarray(z, dtype=float)

    def evaluate(n):
        x, w = beta_rule(n, a, b - a)
        return np.exp(np.multiply.outer(z, x)) @ w

    out = refine(evaluate, ctrl.quad_nodes)
    return float(out) if np.ndim(out) == 0 else out


def hyp_2f1(c, d, e, u, ctrl: SeriesControl = DEFAULT_CONTROL):
    """Gauss series ``2F1(c, d; e; u)`` for ``|u| < 1``."""
    _check_lower(e)
    c, d, e, u = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (c, d, e, u)))
    if np.any(np.abs(u) >= 1):
        raise DomainError("2F1 series requires |u| < 1")
    shape = u.shape
    c, d, e, u = c.ravel(), d.ravel(), e.ravel(), u.ravel()
    s = np.ones(u.size)
    t = np.ones(u.size)
    count = np.zeros(u.size, dtype=np.int64)
    active = np.flatnonzero(u != 0)
    m = 0
    while active.size:
        if m >= ctrl.max_terms:
            i = active[0]
            raise NonConvergenceError(
                f"2F1 series did not converge in {ctrl.max_terms} terms (u={u[i]})",
                partial=s[i],
                terms=m,
                last_term=abs(t[i]),
            )
        cc, dd, ee, uu = c[active], d[active], e[active], u[active]
        tt = t[active] * ((cc + m) * (dd + m) / ((ee + m) * (m + 1)) * uu)
        ss = s[active] + tt
        t[active] = tt
        s[active] = ss
        nxt = np.abs((cc + m + 1) * (dd + m + 1) * uu) < np.abs((ee + m + 1) * (m + 2))
        small = (np.abs(tt) <= ctrl.rel_tol * np.abs(ss)) & nxt
        cnt = np.where(small, count[active] + 1, 0)
        count[active] = cnt
        done = (cnt >= ctrl.consec_small) | (tt == 0)
        active = active[~done]
        m += 1
    out = s.reshape(shape)
    return float(out) if out.ndim == 0 else out


def hyp_2f1_euler(c: float, d: float, e: float, u, ctrl: SeriesControl = DEFAULT_CONTROL):
    """2F1 through the Euler integral; requires ``e > d > 0`` and ``|u| < 1``.

    Expectation of ``(1 - u Z)^(-c)`` under ``Z ~ Beta(d, e - d)``.
    """
    if not (d > 0 and e > d):
        raise DomainError(f"Euler integral needs e > d > 0, got d={d}, e={e}")
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(u) >= 1):
        raise DomainError("Euler integral requires |u| < 1")

    def evaluate(n):
        x, w = beta_rule(n, d, e - d)
        return (1.0 - np.multiply.outer(u, x)) ** (-c) @ w

    out = refine(evaluate, ctrl.quad_nodes)
    return float(out) if np.ndim(out) == 0 else out

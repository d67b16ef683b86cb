"""Gamma function machinery: log-gamma, ratios and Pochhammer symbols."""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

from ..errors import DomainError


def log_gamma(x):
    """``ln Gamma(x)`` for ``x > 0`` (scalar or array)."""
    if np.ndim(x) == 0:
        xf = float(x)
        if not xf > 0:
            raise DomainError(f"log_gamma requires x > 0, got {xf}")
        return math.lgamma(xf)
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("log_gamma requires x > 0")
    return _sp.gammaln(arr)


def gamma_ratio(x, y):
    """``Gamma(x) / Gamma(y)`` through log-gamma differences (x, y > 0)."""
    return np.exp(log_gamma(x) - log_gamma(y))


def pochhammer(a: float, k: int) -> float:
    """Rising factorial ``(a)_k``; ``(0)_0 = 1`` and ``(0)_k = 0`` for k >= 1.

    Negative integers terminate: ``(-n)_k = 0`` for ``k > n``.
    """
    k = int(k)
    if k < 0:
        raise DomainError("pochhammer requires k >= 0")
    if k == 0:
        return 1.0
    if a == int(a) and a <= 0 and k > -int(a):
        return 0.0
    if a > 0 and k > 60:
        return math.exp(math.lgamma(a + k) - math.lgamma(a))
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def log_pochhammer(a: float, k):
    """``ln (a)_k`` for ``a > 0``."""
    return log_gamma(np.asarray(a + k, dtype=float)) - math.lgamma(a)

"""Jacobi, Gegenbauer and Chebyshev-U polynomials by three-term recurrence.

Jacobi polynomials use the standard normalisation
``P_j^{(a,b)}(1) = (a+1)_j / j!`` and orthogonality weight
``(1-x)^a (1+x)^b`` on [-1, 1].
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError


def _check_jacobi(a, b):
    if not (a > -1 and b > -1):
        raise DomainError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")


def jacobi_p_all(n_max: int, a: float, b: float, x) -> np.ndarray:
    """``P_0 .. P_{n_max}`` at ``x``; result has shape ``(n_max+1,) + shape(x)``."""
    _check_jacobi(a, b)
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    ab = a + b
    d = a * a - b * b
    for n in range(2, n_max + 1):
        c = 2 * n + ab
        lead = 2.0 * n * (n + ab) * (c - 2)
        mid = (c - 1) * (c * (c - 2) * x + d)
        back = 2.0 * (n + a - 1) * (n + b - 1) * c
        out[n] = (mid * out[n - 1] - back * out[n - 2]) / lead
    return out


def jacobi_p(j: int, a: float, b: float, x):
    out = jacobi_p_all(int(j), a, b, x)[int(j)]
    return float(out) if out.ndim == 0 else out


def log_jacobi_sq_norm(j, a: float, b: float):
    """Log of ``int (P_j^{(a,b)})^2 (1-x)^a (1+x)^b dx``; ``j`` may be an array."""
    _check_jacobi(a, b)
    j = np.asarray(j, dtype=float)
    lg = np.vectorize(math.lgamma, otypes=[float])
    head = (a + b + 1) * math.log(2.0) + lg(j + a + 1) + lg(j + b + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        general = head - np.log(2 * j + a + b + 1) - lg(np.where(j > 0, j + a + b + 1, 1.0)) - lg(j + 1)
    # (a+b+1) Gamma(a+b+1) = Gamma(a+b+2) removes the 0 * inf at j = 0, a+b = -1
    zero = head - math.lgamma(a + b + 2)
    out = np.where(j == 0, zero, general)
    return float(out) if out.ndim == 0 else out


def jacobi_sq_norm(j: int, a: float, b: float) -> float:
    return float(np.exp(log_jacobi_sq_norm(int(j), a, b)))


def jacobi_orthonormal(j: int, a: float, b: float, x, literal_norm: bool = False):
    """``P_j / sqrt(h_j)`` with ``h_j`` the squared L2 norm.

    ``literal_norm=True`` divides by ``h_j`` itself instead, which is the
    alternative reading kept for sensitivity checks.
    """
    p = jacobi_p(j, a, b, x)
    h = jacobi_sq_norm(j, a, b)
    return p / (h if literal_norm else math.sqrt(h))


def gegenbauer_c_all(n_max: int, nu: float, x) -> np.ndarray:
    """``C_0^{(nu)} .. C_{n_max}^{(nu)}``; parity ``C_j(-x) = (-1)^j C_j(x)`` is exact."""
    if not nu > -0.5:
        raise DomainError(f"Gegenbauer parameter must exceed -1/2, got {nu}")
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = 2.0 * nu * x
    for n in range(2, n_max + 1):
        out[n] = (2.0 * (n + nu - 1) * x * out[n - 1] - (n + 2 * nu - 2) * out[n - 2]) / n
    return out


def gegenbauer_c(j: int, nu: float, x):
    out = gegenbauer_c_all(int(j), nu, x)[int(j)]
    return float(out) if out.ndim == 0 else out


def chebyshev_u_all(n_max: int, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = 2.0 * x
    for n in range(2, n_max + 1):
        out[n] = 2.0 * x * out[n - 1] - out[n - 2]
    return out


def chebyshev_u(j: int, x):
    out = chebyshev_u_all(int(j), x)[int(j)]
    return float(out) if out.ndim == 0 else out

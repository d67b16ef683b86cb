"""Weighted Laplace transform of ``V0`` at the bisector of the pi/4 wedge.

``E[V0^{3/2-2nu} exp(-y V0)]`` up to a constant, once in closed form and once
by integrating the integral-form density against ``v^{3/2-2nu} e^{-yv}``.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..model import DEFAULT_CONTROL, SeriesControl
from ..specfun.hypergeom import hyp_2f1
from .normalize import integrate_half_line
from .v0density import density_v0_integral

BISECTOR = math.pi / 8


def _check(y, nu):
    if not (0 < nu <= 0.5):
        raise DomainError(f"nu = {nu} outside (0, 1/2]")
    if np.any(np.asarray(y) < 0):
        raise DomainError("y must be >= 0")


def laplace_moment_pi8(y, nu: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """``(1+y)^{1/2-2nu} (1+2y)^{-2} 2F1(1, 3/2; nu+1; 1/(2(1+2y)^2))``."""
    _check(y, nu)
    y = np.asarray(y, dtype=float)
    w = 1 + 2 * y
    out = (1 + y) ** (0.5 - 2 * nu) / w**2 * hyp_2f1(1.0, 1.5, nu + 1.0, 1 / (2 * w**2), ctrl)
    return float(out) if np.ndim(out) == 0 else out


def laplace_moment_numeric(y, nu: float, ctrl: SeriesControl = DEFAULT_CONTROL, tol: float = 1e-9):
    """``int_0^inf v^{3/2-2nu} e^{-yv} f(v) dv`` with ``f`` the integral-form density at pi/8."""
    _check(y, nu)
    rate0 = math.sin(BISECTOR) ** 2
    out = []
    for yy in np.atleast_1d(np.asarray(y, dtype=float)):
        def f(v, yy=yy):
            return v ** (1.5 - 2 * nu) * np.exp(-yy * v) * density_v0_integral(v, nu, BISECTOR, ctrl)

        val, _ = integrate_half_line(f, 0.5 + 2 * nu, rate0 + yy, tol=tol)
        out.append(val)
    return out[0] if np.ndim(y) == 0 else np.array(out)

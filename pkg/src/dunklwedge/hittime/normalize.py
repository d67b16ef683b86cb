"""Numeric normalising constants for the unnormalised ``V0`` densities.

The constant for a formula depends on ``(p, nu0, nu1)`` only; the angular
dependence is explicit in every formula.  Constants are computed at the
wedge bisector and memoised.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import DomainError, QuadratureError
from ..model import DEFAULT_CONTROL, SeriesControl, WedgeModel, validate_model
from ..specfun.quadrature import gauss_jacobi

TAGS = ("tail", "tail-literal", "series", "integral", "bessel", "z2z2")


@dataclass(frozen=True)
class NormalizationCache:
    """One memoised constant ``c`` with ``int c f(v) dv = 1``."""

    key: tuple
    constant: float
    quadrature_error: float


_CACHE: dict = {}
_LOCK = threading.Lock()


def integrate_half_line(f: Callable, alpha: float, rate: float, n0: int = 16,
                        tol: float = 1e-10, n_max: int = 256) -> tuple[float, float]:
    """``int_0^inf f(v) dv`` for ``f ~ v^alpha`` at 0 and ``f ~ exp(-rate v)`` at infinity.

    The first panel uses a Gauss-Jacobi rule that absorbs ``v^alpha``; then
    geometrically growing panels up to ``8/rate`` and uniform panels up to
    ``48/rate``.  Nodes per panel double until two passes agree to ``tol``.
    Returns ``(value, error estimate)``.
    """
    if not alpha > -1:
        raise DomainError("leading exponent must exceed -1")
    if not rate > 0:
        raise DomainError("decay rate must be > 0")
    scale = 1.0 / rate
    h0 = min(0.5, 0.25 * scale)
    edges = [0.0, h0]
    while edges[-1] < 8 * scale:
        edges.append(min(2 * edges[-1], 8 * scale))
    while edges[-1] < 48 * scale:
        edges.append(edges[-1] + 8 * scale)
    edges = np.array(edges)

    def evaluate(n):
        xj, wj = gauss_jacobi(n, 0.0, alpha)  # weight (1+x)^alpha, probability-normalised
        mass = 2.0 ** (alpha + 1) / (alpha + 1)
        x0 = h0 * (1 + xj) / 2
        # int_0^h0 v^alpha g(v) dv with g = f / v^alpha
        first = (h0 / 2) ** (alpha + 1) * mass * np.dot(wj, f(x0) / x0 ** alpha)
        xl, wl = gauss_jacobi(n, 0.0, 0.0)
        lo, hi = edges[1:-1], edges[2:]
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        pts = (mid[:, None] + half[:, None] * xl[None, :]).ravel()
        vals = f(pts).reshape(lo.size, n)
        rest = np.sum(2 * half * (vals @ wl))
        return first + rest

    n = n0
    prev = evaluate(n)
    while n < n_max:
        n *= 2
        cur = evaluate(n)
        err = abs(cur - prev)
        if err <= tol * abs(cur):
            return float(cur), float(err)
        prev = cur
    raise QuadratureError(f"half-line quadrature did not settle at {n} nodes", estimate=float(prev), error=float(err))


def _formula(tag: str, model: WedgeModel, phi: float, ctrl: SeriesControl):
    """``(density callable, leading exponent at v = 0)`` for a tag."""
    from .tail import tail_density_v
    from .v0density import density_series_equal_k, density_v0_bessel, density_v0_integral, density_v0_z2z2

    p, nu0, nu1 = model.p, model.nu0, model.nu1
    if tag in ("tail", "tail-literal"):
        lit = tag == "tail-literal"
        return (lambda v: tail_density_v(v, model, phi, ctrl, literal_norm=lit)), p * (nu0 + nu1) - 1
    if not model.equal_multiplicities:
        raise DomainError(f"formula {tag!r} needs equal multiplicities")
    nu = nu0
    if tag == "series":
        return (lambda v: density_series_equal_k(v, p, model.k0, phi, ctrl)), 2 * p * nu - 1
    if tag == "z2z2":
        if p != 1:
            raise DomainError("the quadrant formula needs p = 1")
        return (lambda v: density_v0_z2z2(v, nu, phi)), 2 * nu - 1
    if p != 2:
        raise DomainError(f"formula {tag!r} is stated for p = 2")
    if tag == "integral":
        return (lambda v: density_v0_integral(v, nu, phi, ctrl)), 4 * nu - 1
    if tag == "bessel":
        return (lambda v: density_v0_bessel(v, nu, phi, ctrl)), 4 * nu - 1
    raise DomainError(f"unknown formula tag {tag!r}; expected one of {TAGS}")


def normalize_density(tag: str, model: WedgeModel, phi: float | None = None,
                      ctrl: SeriesControl = DEFAULT_CONTROL, use_cache: bool = True,
                      tol: float = 1e-10) -> NormalizationCache:
    """Constant making the ``tag`` density integrate to one.

    ``phi`` defaults to the bisector.  Only bisector results are cached; an
    explicit off-bisector ``phi`` is always recomputed, which is what the
    angle-independence check relies on.
    """
    validate_model(model)
    if tag not in TAGS:
        raise DomainError(f"unknown formula tag {tag!r}; expected one of {TAGS}")
    at_bisector = phi is None or phi == model.bisector
    phi = model.bisector if phi is None else phi
    if not 0 < phi < model.wedge_angle:
        raise DomainError(f"phi = {phi} outside the wedge")
    key = (model.p, model.nu0, model.nu1, tag)
    if use_cache and at_bisector:
        hit = _CACHE.get(key)
        if hit is not None:
            return hit
    f, alpha = _formula(tag, model, phi, ctrl)
    rate = min(math.sin(phi), math.sin(model.wedge_angle - phi)) ** 2
    mass, err = integrate_half_line(f, alpha, rate, tol=tol)
    if not mass > 0:
        raise QuadratureError(f"non-positive mass {mass} for {tag!r}", estimate=mass, error=err)
    entry = NormalizationCache(key, 1.0 / mass, err / mass)
    if use_cache and at_bisector:
        with _LOCK:
            entry = _CACHE.setdefault(key, entry)
    return entry


def clear_cache() -> None:
    with _LOCK:
        _CACHE.clear()


def normalized_density(tag: str, v, model: WedgeModel, phi: float, ctrl: SeriesControl = DEFAULT_CONTROL):
    """``c * f(v)`` for the ``tag`` density at angle ``phi``."""
    f, _ = _formula(tag, model, phi, ctrl)
    v_arr = np.atleast_1d(np.asarray(v, dtype=float))
    out = normalize_density(tag, model, ctrl=ctrl).constant * np.atleast_1d(f(v_arr))
    return float(out[0]) if np.ndim(v) == 0 else out

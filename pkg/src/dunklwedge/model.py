"""Wedge geometry, multiplicities and evaluation controls.

The wedge of the even dihedral group of order ``4p`` is the open sector
``0 < theta < pi/(2p)``.  ``p = 1`` is the abelian case Z2 x Z2 (the quadrant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class WedgeModel:
    """Dihedral order ``p`` and the multiplicities of the two root orbits.

    ``k0`` weighs the wall ``theta = 0`` and ``k1`` the wall
    ``theta = pi/(2p)``.  Hitting-time laws are for the process with the
    flipped multiplicities ``1 - k0``, ``1 - k1``.
    """

    p: int
    k0: float
    k1: float

    @property
    def nu0(self) -> float:
        return self.k0 - 0.5

    @property
    def nu1(self) -> float:
        return self.k1 - 0.5

    @property
    def gamma(self) -> float:
        return self.p * (self.k0 + self.k1)

    @property
    def wedge_angle(self) -> float:
        return math.pi / (2 * self.p)

    @property
    def bisector(self) -> float:
        return math.pi / (4 * self.p)

    @property
    def flipped(self) -> tuple[float, float]:
        """Multiplicities of the simulated (boundary-hitting) process."""
        return 1.0 - self.k0, 1.0 - self.k1

    @property
    def equal_multiplicities(self) -> bool:
        return self.k0 == self.k1

    @classmethod
    def equal(cls, p: int, k: float) -> "WedgeModel":
        return cls(p, k, k)


@dataclass(frozen=True)
class StartPoint:
    """Polar starting point ``x = rho * exp(i phi)``."""

    rho: float
    phi: float


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy shared by every series and quadrature.

    A series stops once ``consec_small`` successive increments are below
    ``rel_tol`` times the running sum.  Quadratures start at ``quad_nodes``
    nodes and double.
    """

    rel_tol: float = 1e-12
    max_terms: int = 500
    quad_nodes: int = 64
    consec_small: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.max_terms < 8:
            raise DomainError(f"max_terms must be >= 8, got {self.max_terms}")
        if self.quad_nodes < 4:
            raise DomainError(f"quad_nodes must be >= 4, got {self.quad_nodes}")
        if self.consec_small < 1:
            raise DomainError(f"consec_small must be >= 1, got {self.consec_small}")


DEFAULT_CONTROL = SeriesControl()


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Curve:
    """Values on an increasing grid, with optional Monte Carlo standard errors."""

    abscissae: np.ndarray
    values: np.ndarray
    std_errors: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        x = _readonly(self.abscissae)
        y = _readonly(self.values)
        if x.ndim != 1 or y.shape != x.shape:
            raise DomainError("abscissae and values must be 1-d of equal length")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise DomainError("abscissae must be strictly increasing")
        object.__setattr__(self, "abscissae", x)
        object.__setattr__(self, "values", y)
        if self.std_errors is not None:
            se = _readonly(self.std_errors)
            if se.shape != x.shape:
                raise DomainError("std_errors must match abscissae in length")
            object.__setattr__(self, "std_errors", se)

    def __len__(self):
        return self.abscissae.size


def validate_model(model: WedgeModel) -> WedgeModel:
    """Return ``model`` unchanged if it is in the boundary-hitting regime."""
    if isinstance(model.p, bool) or int(model.p) != model.p or model.p < 1:
        raise DomainError(f"p must be a positive integer, got {model.p!r}")
    for name, k in (("k0", model.k0), ("k1", model.k1)):
        if not (0.5 <= k <= 1.0):
            raise DomainError(f"{name} out of [1/2, 1]: {k}")
    if not (model.k0 > 0.5 or model.k1 > 0.5):
        raise DomainError(
            "k0 = k1 = 1/2: the flipped process does not hit the boundary a.s."
        )
    return model


def validate_start(model: WedgeModel, start: StartPoint) -> StartPoint:
    """Return ``start`` if it lies strictly inside the wedge of ``model``."""
    if not start.rho > 0:
        raise DomainError(f"rho must be > 0, got {start.rho}")
    if not (0.0 < start.phi < model.wedge_angle):
        raise DomainError(
            f"phi = {start.phi} not in the open wedge (0, {model.wedge_angle})"
        )
    return start


def v_from_t(t, rho: float):
    """``v = rho^2 / (2 t)``; decreasing bijection of (0, inf)."""
    return rho * rho / (2.0 * np.asarray(t, dtype=float))


def t_from_v(v, rho: float):
    return rho * rho / (2.0 * np.asarray(v, dtype=float))


def parse_grid(spec: str) -> np.ndarray:
    """``'start:stop:count'`` -> linearly spaced grid (count >= 1)."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must be start:stop:count, got {spec!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise DomainError("grid count must be >= 1")
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)


def as_grid(values: Sequence[float]) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DomainError("grid must be one-dimensional")
    return arr

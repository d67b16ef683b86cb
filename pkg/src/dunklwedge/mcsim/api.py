"""Monte Carlo oracle for hitting times and Brownian winding.

Two simulators:

* ``simulate_hitting``: Euler-Maruyama on the polar SDE of the radial Dunkl
  process with flipped multiplicities ``k' = 1 - k``::

      dr     = (2 gamma' + 1) / (2 r) dt + dB1
      dtheta = p (k0' cot(p theta) - k1' tan(p theta)) / r^2 dt + dB2 / r

  with the step shrunk near the boundary and absorption at angular distance
  ``eps_boundary``.
* ``simulate_bm_winding``: exact Gaussian increments of planar Brownian motion
  with a continuously lifted argument and first-exit detection.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, DomainError, LiftingError
from ..model import Curve, StartPoint, WedgeModel, validate_model, validate_start
from ..planarbm import square_wave
from .backend import backend_name, configure_threads
from .rng import path_keys

log = logging.getLogger(__name__)

HIT, CENSORED, RADIAL, LIFTING = 0, 1, 2, 3

ANGULAR_STEP = 0.03  # dt <= c (r * angular distance)^2
RADIAL_STEP = 0.01   # dt <= c r^2
WINDING_STEP = 0.01  # dt <= c |z|^2 keeps argument increments far below pi
LIFT_LIMIT = math.pi / 2
MAX_HALVINGS = 30   # in-place refinements of one ambiguous step
DT_FLOOR = 1e-8     # relative to dt0


@dataclass(frozen=True)
class McConfig:
    """Simulation controls.  ``master_seed`` fixes every path's stream."""

    n_paths: int = 100_000
    dt0: float = 1e-3
    eps_boundary: float = 1e-8
    t_max: float = 2.0
    master_seed: int = 20240601

    def __post_init__(self):
        if isinstance(self.n_paths, bool) or int(self.n_paths) != self.n_paths or self.n_paths < 1:
            raise ConfigError(f"n_paths must be an integer >= 1, got {self.n_paths!r}")
        if not (self.dt0 > 0 and math.isfinite(self.dt0)):
            raise ConfigError(f"dt0 must be > 0, got {self.dt0}")
        if not self.eps_boundary > 0:
            raise ConfigError(f"eps_boundary must be > 0, got {self.eps_boundary}")
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise ConfigError(f"t_max must be finite and > 0, got {self.t_max}")
        if not (0 <= int(self.master_seed) < 2**64):
            raise ConfigError("master_seed must fit in 64 unsigned bits")

    def check_for(self, model: WedgeModel, start: StartPoint) -> None:
        if not self.eps_boundary < model.wedge_angle / 100:
            raise ConfigError(
                f"eps_boundary {self.eps_boundary} must be below (pi/(2p))/100 = {model.wedge_angle / 100}"
            )
        if min(start.phi, model.wedge_angle - start.phi) <= self.eps_boundary:
            raise ConfigError("start lies within eps_boundary of the wall")
        if self.dt0 > 1e-3 * start.rho**2:
            log.info("dt0 = %g exceeds the recommended 1e-3 rho^2", self.dt0)


@dataclass(frozen=True)
class HittingSample:
    t0: float
    censored: bool
    path_index: int
    radial: bool = False


@dataclass(frozen=True)
class HittingSamples:
    """Arrays of hitting times; censored paths carry ``t0 = t_max``."""

    t0: np.ndarray
    status: np.ndarray
    steps: np.ndarray
    t_max: float
    backend: str

    @property
    def censored(self) -> np.ndarray:
        return self.status == CENSORED

    @property
    def radial(self) -> np.ndarray:
        return self.status == RADIAL

    @property
    def path_index(self) -> np.ndarray:
        return np.arange(self.t0.size)

    def __len__(self):
        return self.t0.size

    def __getitem__(self, i) -> HittingSample:
        return HittingSample(float(self.t0[i]), bool(self.status[i] == CENSORED), int(i), bool(self.status[i] == RADIAL))

    def __iter__(self):
        return (self[i] for i in range(len(self)))


@dataclass(frozen=True)
class WindingSample:
    theta_t: float
    exited_before_t: bool
    t0: float
    path_index: int


@dataclass(frozen=True)
class WindingSamples:
    """Lifted argument at the horizon and first exit time (``inf`` if none)."""

    theta_t: np.ndarray
    t0: np.ndarray
    exited_before_t: np.ndarray
    horizon: float
    start: StartPoint
    p: int
    dt0: float
    backend: str

    def __len__(self):
        return self.theta_t.size

    def __getitem__(self, i) -> WindingSample:
        return WindingSample(float(self.theta_t[i]), bool(self.exited_before_t[i]), float(self.t0[i]), int(i))

    def __iter__(self):
        return (self[i] for i in range(len(self)))


def _keys(cfg: McConfig) -> np.ndarray:
    return path_keys(int(cfg.master_seed), np.arange(cfg.n_paths, dtype=np.uint64))


def simulate_hitting(model: WedgeModel, start: StartPoint, cfg: McConfig, backend: str | None = None) -> HittingSamples:
    """``n_paths`` samples of the first hitting time of the wedge boundary.

    Path ``i`` depends only on ``(master_seed, i)``.  Reaching the corner
    (radius below ``eps_boundary``) counts as a boundary hit and is flagged.
    """
    validate_model(model)
    validate_start(model, start)
    cfg.check_for(model, start)
    k0f, k1f = model.flipped
    keys = _keys(cfg)
    name = backend_name(backend)
    args = (int(model.p), float(k0f), float(k1f), float(start.rho), float(start.phi), float(cfg.dt0),
            float(cfg.eps_boundary), float(cfg.t_max), ANGULAR_STEP, RADIAL_STEP)
    if name == "numba":
        from .kernels import hitting_kernel

        configure_threads()
        t0 = np.empty(cfg.n_paths)
        status = np.empty(cfg.n_paths, dtype=np.int64)
        steps = np.empty(cfg.n_paths, dtype=np.int64)
        hitting_kernel(keys, *args, t0, status, steps)
    else:
        from .fallback import hitting_numpy

        t0, status, steps = hitting_numpy(keys, *args)
    n_rad = int(np.sum(status == RADIAL))
    if n_rad:
        log.warning("%d paths reached the corner (radius < eps_boundary)", n_rad)
    return HittingSamples(t0, status, steps, float(cfg.t_max), name)


def simulate_bm_winding(
    start: StartPoint, t: float, p: int, cfg: McConfig, backend: str | None = None, bridge: bool = True
) -> WindingSamples:
    """Planar BM from ``start`` up to time ``t``: lifted argument and first exit.

    ``start.phi`` may lie outside the wedge (e.g. 0 for winding-law checks),
    in which case every path counts as exited at time 0.  The step is
    ``min(dt0, 0.01 |z|^2)``, floored at ``dt0 * 1e-8`` so that paths diving
    towards the origin still advance in time.  A step whose argument
    increment exceeds ``pi/2`` is refined in place by Brownian-bridge
    halving, at most ``MAX_HALVINGS`` times; :class:`LiftingError` is raised
    if that does not resolve it.

    ``bridge=False`` turns off the between-grid exit correction and leaves
    pure grid detection.
    """
    if not (start.rho > 0 and t > 0):
        raise DomainError("rho and t must be > 0")
    if isinstance(p, bool) or int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p!r}")
    keys = _keys(cfg)
    name = backend_name(backend)
    x0, y0 = start.rho * math.cos(start.phi), start.rho * math.sin(start.phi)
    dt0 = float(cfg.dt0)
    args = (int(p), x0, y0, float(t), dt0, dt0 * DT_FLOOR, WINDING_STEP, LIFT_LIMIT, MAX_HALVINGS, bool(bridge))
    if name == "numba":
        from .kernels import winding_kernel

        configure_threads()
        theta = np.empty(cfg.n_paths)
        t0 = np.empty(cfg.n_paths)
        status = np.empty(cfg.n_paths, dtype=np.int64)
        winding_kernel(keys, *args, theta, t0, status)
    else:
        from .fallback import winding_numpy

        theta, t0, status = winding_numpy(keys, *args)
    n_bad = int(np.sum(status == LIFTING))
    if n_bad:
        raise LiftingError(f"{n_bad} paths kept argument increments above pi/2 after {MAX_HALVINGS} halvings")
    exited = status == HIT
    t0 = np.where(exited, t0, np.inf)
    # the winding angle is reported from the actual start angle
    theta = theta - math.atan2(y0, x0) + start.phi
    return WindingSamples(theta, t0, exited, float(t), start, int(p), dt0, name)


def _binomial_curve(alive: np.ndarray, times: np.ndarray) -> Curve:
    n = alive.shape[1]
    phat = alive.mean(axis=1)
    se = np.sqrt(phat * (1 - phat) / n)
    return Curve(times, phat, se)


def estimate_tail(samples, times) -> Curve:
    """Empirical survival ``P(T0 > t)`` with binomial standard errors.

    Works for hitting samples (grid must lie below ``t_max``) and for winding
    samples (grid must not exceed the horizon).
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if len(samples) == 0:
        raise DomainError("no samples")
    if isinstance(samples, WindingSamples):
        if np.any(times > samples.horizon):
            raise DomainError("tail grid exceeds the simulation horizon")
        t0 = samples.t0
    else:
        if np.any(times >= samples.t_max):
            raise DomainError(f"tail grid must stay below t_max = {samples.t_max}")
        t0 = np.where(samples.censored, np.inf, samples.t0)
    alive = t0[None, :] > times[:, None]
    return _binomial_curve(alive, times)


def _mean_se(values: np.ndarray) -> tuple[float, float]:
    n = values.size
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0


def estimate_cf(samples: WindingSamples, lam: float) -> tuple[float, float, float, float]:
    """Empirical ``E[cos(lam W)]``, ``E[sin(lam W)]`` and SEs for the winding ``W = Theta_t - phi``."""
    w = samples.theta_t - samples.start.phi
    c, c_se = _mean_se(np.cos(lam * w))
    s, s_se = _mean_se(np.sin(lam * w))
    return c, c_se, s, s_se


def estimate_wp_mean(samples: WindingSamples, p: int) -> tuple[float, float]:
    """Empirical ``E[W_p(Theta_t)]`` with its standard error."""
    return _mean_se(square_wave(p, samples.theta_t).astype(float))


def estimate_wp_indicator(samples: WindingSamples, p: int, phi: float) -> tuple[float, float]:
    """Empirical ``E[W_p(Theta_t) 1{T0 < t}]`` with its standard error.

    ``samples`` must come from start angle ``phi``.
    """
    if not math.isclose(samples.start.phi, phi, rel_tol=0, abs_tol=1e-12):
        raise DomainError(f"samples start at angle {samples.start.phi}, not {phi}")
    vals = square_wave(p, samples.theta_t).astype(float) * samples.exited_before_t
    return _mean_se(vals)

"""Named verification suites, shared by the ``check`` subcommand and the tests.

Each suite returns a list of :class:`CheckRow`; a suite passes iff every row
does.  Suites map one-to-one onto the package's acceptance criteria:

=============  ==============================================================
identities     special-function identities on random parameter draws
lemma1         series against quadrature form of the ``1F1`` expansion
routes         the three ``V0`` density routes for ``p = 2`` are proportional
corollaries    Laplace-type moment, numeric against closed form
z2z2           quadrant density against the max-of-two-Gammas construction
spitzer        planar-BM exit tail: Bessel, square-wave and ``k = 1`` routes
mc-cross       Monte Carlo cross-validation of the analytic laws
structural     odd coefficients, angle-free constants, monotone tails
=============  ==============================================================
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import hittime, planarbm
from .model import DEFAULT_CONTROL, StartPoint, WedgeModel
from .specfun import identities as ident

SUITE_NAMES = ("identities", "lemma1", "routes", "corollaries", "z2z2", "spitzer", "mc-cross", "structural")
IDENTITY_SEED = 20240601


@dataclass
class CheckRow:
    suite: str
    name: str
    value: float
    tolerance: float
    passed: bool
    note: str = ""
    seconds: float = field(default=0.0)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.note})" if self.note else ""
        return f"{flag}  {self.suite:<12} {self.name:<40} {self.value:<12.3e} tol {self.tolerance:.1e}{extra}"


def _row(suite, name, value, tol, note="", t0=None, ok=None):
    value = float(value)
    passed = bool(value <= tol) if ok is None else bool(ok)
    if not math.isfinite(value):
        passed = False
    return CheckRow(suite, name, value, tol, passed, note, time.perf_counter() - t0 if t0 else 0.0)


def _ratio_spread(a, b) -> float:
    """Largest relative deviation of ``a/b`` from its first value."""
    r = np.asarray(a, dtype=float) / np.asarray(b, dtype=float)
    return float(np.max(np.abs(r / r[0] - 1.0)))


def _log_ratio_std(a, b) -> float:
    return float(np.std(np.log(np.asarray(a, dtype=float) / np.asarray(b, dtype=float))))


# --------------------------------------------------------------------------- 1


def suite_identities(n_draws: int = 50, seed: int = IDENTITY_SEED, ctrl=DEFAULT_CONTROL) -> list[CheckRow]:
    """Every identity on ``n_draws`` random parameter tuples; the row value is the worst residual."""
    rng = np.random.default_rng(seed)
    u = rng.uniform
    draws = {
        "Leg (duplication)": (1e-9, lambda: ident.legendre_duplication_residual(u(0.0, 20.0))),
        "Kum1 (Kummer transformation)": (
            1e-9,
            lambda: ident.kummer_first_residual(a := u(0.1, 3.0), a + u(0.1, 3.0), u(-6.0, 6.0), ctrl),
        ),
        "Kum2 (Bessel form)": (1e-9, lambda: ident.kummer_second_residual(u(0.1, 4.0), u(-40.0, -0.05), ctrl)),
        "Quad (quadratic transformation)": (
            1e-9,
            lambda: ident.quadratic_transformation_residual(u(0.2, 3.0), u(0.2, 3.0), u(-0.8, 0.8), ctrl),
        ),
        "Poisson (Bessel integral)": (1e-9, lambda: ident.poisson_residual(u(0.1, 3.0), u(-20.0, 20.0), ctrl)),
        "Differ (finite difference)": (
            1e-6,
            lambda: ident.differentiation_residual(int(rng.integers(0, 16)), u(0.5, 4.0), u(0.5, 4.0), u(-0.95, 0.95)),
        ),
        "SpeVal (values at +-1)": (
            1e-9,
            lambda: ident.special_values_residual(int(rng.integers(0, 21)), u(-0.9, 5.0), u(-0.9, 5.0)),
        ),
        "SN (orthonormality)": (
            1e-9,
            lambda: ident.orthonormality_residual(int(rng.integers(2, 21)), u(-0.9, 4.0), u(-0.9, 4.0)),
        ),
        "IR1 (Gegenbauer product formula)": (
            1e-9,
            lambda: ident.xu_identity_check(int(rng.integers(0, 16)), u(0.05, 2.0), u(-1.0, 1.0), ctrl),
        ),
        "EMT (1F1 multiplication theorem)": (
            1e-9,
            lambda: ident.erdelyi_multiplication_check(
                u(0.2, 3.0), u(0.2, 3.0), u(0.2, 3.0), u(-0.9, 0.9), u(0.0, 5.0), ctrl
            ),
        ),
    }
    rows = []
    for name, (tol, draw) in draws.items():
        t0 = time.perf_counter()
        worst = max(draw() for _ in range(n_draws))
        rows.append(_row("identities", name, worst, tol, f"{n_draws} draws", t0))
    return rows


# --------------------------------------------------------------------------- 2


def suite_lemma1(ctrl=DEFAULT_CONTROL) -> list[CheckRow]:
    t0 = time.perf_counter()
    worst = 0.0
    for k in (0.6, 0.8, 1.0):
        for phi in (0.1, math.pi / 8, 0.7):
            v = np.array([0.1, 1.0, 5.0, 10.0])
            lhs = np.asarray(hittime.lemma1_lhs(v, k, phi, ctrl))
            rhs = np.asarray(hittime.lemma1_rhs(v, k, phi, ctrl))
            worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.abs(rhs))))
    return [_row("lemma1", "max relative residual, 36 points", worst, 1e-8, "", t0)]


# --------------------------------------------------------------------------- 3


def suite_routes(ctrl=DEFAULT_CONTROL) -> list[CheckRow]:
    v = np.geomspace(0.01, 20.0, 50)
    rows = []
    for nu in (0.3, 0.45, 0.5):
        t0 = time.perf_counter()
        phi = math.pi / 8
        series = np.asarray(hittime.density_series_equal_k(v, 2, nu + 0.5, phi, ctrl))
        integral = np.asarray(hittime.density_v0_integral(v, nu, phi, ctrl))
        bessel = np.asarray(hittime.density_v0_bessel(v, nu, phi, ctrl))
        spread = max(_log_ratio_std(series, integral), _log_ratio_std(bessel, integral), _log_ratio_std(series, bessel))
        positive = bool(np.all(series > 0) and np.all(integral > 0) and np.all(bessel > 0))
        rows.append(_row("routes", f"log-ratio std, nu={nu}", spread, 1e-6, "", t0))
        rows.append(_row("routes", f"all values > 0, nu={nu}", 0.0 if positive else 1.0, 0.0, "", t0, ok=positive))
    return rows


# --------------------------------------------------------------------------- 4


def vakeroudis_yor(y):
    y = np.asarray(y, dtype=float)
    return 1.0 / (np.sqrt(1 + y) * (2 * (1 + 2 * y) ** 2 - 1))


def suite_corollaries(ctrl=DEFAULT_CONTROL) -> list[CheckRow]:
    ys = np.array([0.0, 0.5, 1.0, 2.0, 5.0])
    rows = []
    for nu in (0.3, 0.4, 0.5):
        t0 = time.perf_counter()
        closed = hittime.laplace_moment_pi8(ys, nu, ctrl)
        numeric = hittime.laplace_moment_numeric(ys, nu, ctrl)
        rows.append(_row("corollaries", f"numeric/closed spread, nu={nu}", _ratio_spread(numeric, closed), 1e-4, "", t0))
    t0 = time.perf_counter()
    closed = hittime.laplace_moment_pi8(ys, 0.5, ctrl)
    rows.append(_row("corollaries", "closed/reference spread, nu=0.5", _ratio_spread(closed, vakeroudis_yor(ys)), 1e-8, "", t0))
    return rows


# --------------------------------------------------------------------------- 5


def max_of_gammas_density(v, nu0: float, nu1: float, phi: float):
    """Density of ``max(G0/sin^2 phi, G1/cos^2 phi)`` for independent Gammas (scipy oracle)."""
    from scipy import stats

    s2, c2 = math.sin(phi) ** 2, math.cos(phi) ** 2
    g0, g1 = stats.gamma(nu0), stats.gamma(nu1)
    return s2 * g0.pdf(v * s2) * g1.cdf(v * c2) + c2 * g1.pdf(v * c2) * g0.cdf(v * s2)


def suite_z2z2() -> list[CheckRow]:
    v = np.geomspace(0.05, 20.0, 60)
    rows = []
    for nu in (0.15, 0.25, 0.4):
        t0 = time.perf_counter()
        worst = 0.0
        for phi in (math.pi / 6, math.pi / 4):
            ours = np.asarray(hittime.density_v0_z2z2(v, nu, phi))
            brute = max_of_gammas_density(v, nu, nu, phi)
            worst = max(worst, _ratio_spread(ours, brute))
        rows.append(_row("z2z2", f"ratio spread, nu={nu}", worst, 1e-8, "phi in {pi/6, pi/4}", t0))
    return rows


# --------------------------------------------------------------------------- 6


def suite_spitzer(ctrl=DEFAULT_CONTROL) -> list[CheckRow]:
    t0 = time.perf_counter()
    ts = np.array([0.1, 0.5, 1.0, 2.0])
    model = WedgeModel.equal(2, 1.0)
    sq_gap = k1_gap = 0.0
    for phi in (math.pi / 16, math.pi / 8, 3 * math.pi / 16):
        bes = planarbm.bm_tail_bessel(ts, 2, 1.0, phi, ctrl)
        sqw = planarbm.bm_tail_squarewave(ts, 2, 1.0, phi, ctrl)
        dunkl = hittime.tail_hitting_normalized(ts, model, StartPoint(1.0, phi), ctrl)
        sq_gap = max(sq_gap, float(np.max(np.abs(bes - sqw))))
        k1_gap = max(k1_gap, float(np.max(np.abs(dunkl - bes))), float(np.max(np.abs(dunkl - sqw))))
    rows = [
        _row("spitzer", "bessel vs squarewave", sq_gap, 1e-8, "12 points", t0),
        _row("spitzer", "k=1 hitting tail vs both", k1_gap, 1e-7, "12 points", t0),
    ]
    t0 = time.perf_counter()
    cf0 = max(abs(planarbm.spitzer_cf(0.0, rho, t) - 1.0) for rho in (0.5, 1.0, 3.0) for t in (0.1, 1.0, 10.0))
    rows.append(_row("spitzer", "spitzer_cf(0) - 1", cf0, 1e-12, "", t0))
    return rows


# --------------------------------------------------------------------------- 7


def _z_rows(suite, name, est, se, exact, t0):
    z = np.abs(np.asarray(est) - np.asarray(exact)) / np.asarray(se)
    return _row(suite, name, float(np.max(z)), 3.0, "max |z|", t0)


def suite_mc_cross(n_paths: int = 100_000, seed: int | None = None, backend: str | None = None) -> list[CheckRow]:
    """Monte Carlo against the analytic laws.  Values are ``|z|`` scores against 3."""
    from .mcsim import (
        McConfig,
        estimate_cf,
        estimate_tail,
        estimate_wp_indicator,
        estimate_wp_mean,
        simulate_bm_winding,
        simulate_hitting,
    )

    seed = McConfig.master_seed if seed is None else seed
    s = "mc-cross"
    rows = []
    ts = np.linspace(0.1, 1.0, 10)
    hit_cfg = McConfig(n_paths=n_paths, dt0=1e-3, eps_boundary=1e-8, t_max=1.01, master_seed=seed)

    # (a) general wedge law, p = 2
    t0 = time.perf_counter()
    model = WedgeModel.equal(2, 0.75)
    start = StartPoint(1.0, math.pi / 8)
    samples = simulate_hitting(model, start, hit_cfg, backend)
    curve = estimate_tail(samples, ts)
    rows.append(_z_rows(s, "(a) p=2 k=0.75 tail, 10 times", curve.values, curve.std_errors,
                        hittime.tail_hitting_normalized(ts, model, start), t0))

    # (c) quadrant law
    t0 = time.perf_counter()
    model1 = WedgeModel.equal(1, 0.75)
    start1 = StartPoint(1.0, math.pi / 6)
    samples1 = simulate_hitting(model1, start1, hit_cfg, backend)
    curve1 = estimate_tail(samples1, ts)
    exact1 = hittime.tail_z2z2(1.0 / (2.0 * ts), 0.25, 0.25, math.pi / 6)
    rows.append(_z_rows(s, "(c) p=1 k=0.75 tail, 10 times", curve1.values, curve1.std_errors, exact1, t0))

    # (b) planar Brownian motion in the p = 2 wedge
    p, phi = 2, math.pi / 8
    bm_start = StartPoint(1.0, phi)
    t_half = _half_life(p, phi)
    bm_cfg = McConfig(n_paths=n_paths, dt0=2.5e-4, master_seed=seed)
    for t in (t_half, 0.25):
        t0 = time.perf_counter()
        w = simulate_bm_winding(bm_start, t, p, bm_cfg, backend)
        tail = estimate_tail(w, [t])
        exact = planarbm.bm_tail_bessel(t, p, 1.0, phi)
        rows.append(_z_rows(s, f"(b) exit tail, t={t:.4g}", tail.values, tail.std_errors, [exact], t0))
        if t == t_half:
            ind, ind_se = estimate_wp_indicator(w, p, phi)
            se = math.hypot(ind_se, float(tail.std_errors[0]))
            rows.append(_row(s, f"(b) indicator identity, t={t:.4g}", abs(ind - tail.values[0]) / se, 3.0,
                             f"E[W_p 1(T0<t)]={ind:.4f} vs P(T0>t)={tail.values[0]:.4f}", t0))
            mean, mean_se = estimate_wp_mean(w, p)
            rows.append(_row(s, f"(b) E[W_p] vs exit tail, t={t:.4g}", abs(mean - exact) / mean_se, 3.0,
                             "corrected identity", t0))
            rows.append(_row(s, f"(b) E[W_p 1(T0<t)] vs 0, t={t:.4g}", abs(ind) / ind_se, 3.0,
                             "corrected identity", t0))
    cf_cfg = McConfig(n_paths=n_paths, dt0=1e-3, master_seed=seed)
    for t in (0.25, 1.0):
        t0 = time.perf_counter()
        w0 = simulate_bm_winding(StartPoint(1.0, 0.0), t, p, cf_cfg, backend)
        c, c_se, sn, sn_se = estimate_cf(w0, 2 * p)
        rows.append(_row(s, f"(b) cos CF at lambda=2p, t={t}", abs(c - planarbm.spitzer_cf(2 * p, 1.0, t)) / c_se,
                         3.0, "|z|", t0))
        rows.append(_row(s, f"(b) sin CF symmetry, t={t}", abs(sn) / sn_se, 3.0, "|z|", t0))

    # reproducibility
    t0 = time.perf_counter()
    small = McConfig(n_paths=min(n_paths, 5000), dt0=1e-3, eps_boundary=1e-8, t_max=1.01, master_seed=seed)
    a = simulate_hitting(model, start, small, backend)
    b = simulate_hitting(model, start, small, backend)
    same = a.t0.tobytes() == b.t0.tobytes() and a.status.tobytes() == b.status.tobytes()
    rows.append(_row(s, "bit-identical rerun", 0.0 if same else 1.0, 0.0, "", t0, ok=same))
    return rows


def _half_life(p: int, phi: float) -> float:
    """Time at which the planar-BM exit tail from ``(1, phi)`` equals 1/2."""
    from scipy.optimize import brentq

    return float(brentq(lambda t: planarbm.bm_tail_bessel(t, p, 1.0, phi) - 0.5, 1e-3, 10.0, xtol=1e-6))


# --------------------------------------------------------------------------- 8


def suite_structural(ctrl=DEFAULT_CONTROL) -> list[CheckRow]:
    rows = []
    t0 = time.perf_counter()
    worst = 0.0
    for p in (1, 2, 3):
        for k in (0.6, 0.75, 1.0):
            model = WedgeModel.equal(p, k)
            worst = max(worst, max(abs(hittime.coeff_F(j, model, ctrl)) for j in range(1, 21, 2)))
    rows.append(_row("structural", "max |coeff_F(odd j)|, j <= 20", worst, 1e-12, "p in 1..3, 3 k values", t0))

    t0 = time.perf_counter()
    drift = 0.0
    cases = [
        ("tail", WedgeModel.equal(2, 0.75), (0.3, 0.5)),
        ("tail", WedgeModel(3, 0.7, 0.9), (0.2, 0.32)),
        ("integral", WedgeModel.equal(2, 0.8), (math.pi / 16, 3 * math.pi / 16)),
        ("bessel", WedgeModel.equal(2, 0.95), (math.pi / 16, 3 * math.pi / 16)),
        ("z2z2", WedgeModel.equal(1, 0.75), (math.pi / 6, math.pi / 3)),
    ]
    for tag, model, phis in cases:
        ref = hittime.normalize_density(tag, model, ctrl=ctrl).constant
        for phi in phis:
            c = hittime.normalize_density(tag, model, phi=phi, ctrl=ctrl, use_cache=False).constant
            drift = max(drift, abs(c / ref - 1.0))
    rows.append(_row("structural", "normalising constant vs angle", drift, 1e-6, "5 formulas", t0))

    t0 = time.perf_counter()
    ts = np.concatenate([np.geomspace(1e-3, 0.1, 8), np.linspace(0.15, 5.0, 24)])
    bad = 0
    tails = []
    for model, phi in ((WedgeModel.equal(2, 0.75), math.pi / 8), (WedgeModel.equal(2, 1.0), math.pi / 16),
                       (WedgeModel(3, 0.6, 0.9), 0.3), (WedgeModel.equal(1, 0.75), math.pi / 6)):
        tails.append(hittime.tail_hitting_normalized(ts, model, StartPoint(1.0, phi), ctrl))
    for p, phi in ((1, 0.5), (2, math.pi / 8), (3, 0.2)):
        tails.append(planarbm.bm_tail_bessel(ts, p, 1.0, phi, ctrl))
    tails.append(hittime.tail_z2z2(1.0 / (2.0 * ts), 0.25, 0.4, math.pi / 6))
    for tail in tails:
        tail = np.asarray(tail)
        bad += int(np.sum(np.diff(tail) > 1e-12)) + int(np.sum((tail < -1e-12) | (tail > 1 + 1e-12)))
    rows.append(_row("structural", "monotone tails within [0, 1]", float(bad), 0.0,
                     f"{len(tails)} curves x {ts.size} times", t0, ok=bad == 0))
    return rows


SUITES = {
    "identities": suite_identities,
    "lemma1": suite_lemma1,
    "routes": suite_routes,
    "corollaries": suite_corollaries,
    "z2z2": suite_z2z2,
    "spitzer": suite_spitzer,
    "mc-cross": suite_mc_cross,
    "structural": suite_structural,
}


def run_suite(name: str, **kwargs) -> list[CheckRow]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    return SUITES[name](**kwargs)

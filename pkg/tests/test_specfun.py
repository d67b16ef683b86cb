import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sps

from dunklwedge import DomainError, NonConvergenceError, SeriesControl
from dunklwedge.specfun import (
    bessel_i,
    bessel_i_normalized,
    beta_rule,
    chebyshev_u,
    gauss_jacobi,
    gauss_jacobi_rule,
    gegenbauer_c,
    hyp_1f1,
    hyp_1f1_euler,
    hyp_1f1_series,
    hyp_2f1,
    hyp_2f1_euler,
    jacobi_p,
    jacobi_sq_norm,
    log_bessel_i,
    log_gamma,
    log_hyp_1f1,
    log_pochhammer,
    refine,
)
from dunklwedge.specfun import identities as ident

mp.mp.dps = 30


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.mark.parametrize(
    "a,b,z",
    [(0.5, 1.5, 2.0), (1.0, 2.25, -7.5), (2.3, 0.7, 15.0), (0.25, 1.25, 40.0), (1.5, 3.0, -40.0), (0.75, 1.75, 300.0)],
)
def test_hyp_1f1_against_mpmath(a, b, z):
    # large z goes through exp(log F); the exponent carries |z| * eps of error
    tol = 1e-12 * max(1.0, abs(z) / 40)
    assert rel(hyp_1f1(a, b, z), float(mp.hyp1f1(a, b, z))) < tol


def test_log_hyp_1f1_large_argument():
    lf, sign = log_hyp_1f1(0.75, 1.25, 1000.0)
    assert sign == 1
    assert abs(lf - float(mp.log(mp.hyp1f1(0.75, 1.25, 1000)))) < 1e-12 * abs(lf)


def test_hyp_1f1_broadcasts():
    z = np.linspace(-5, 5, 7)
    out = hyp_1f1(0.5, 1.5, z)
    assert out.shape == z.shape
    assert out[3] == pytest.approx(1.0)


@pytest.mark.parametrize("a,b,c,u", [(1.0, 1.5, 1.3, 0.02), (0.5, 0.5, 1.5, -0.7), (2.0, 1.25, 3.5, 0.8)])
def test_hyp_2f1_against_mpmath(a, b, c, u):
    assert rel(hyp_2f1(a, b, c, u), float(mp.hyp2f1(a, b, c, u))) < 1e-11


def test_hyp_2f1_outside_disc_or_slow():
    with pytest.raises((DomainError, NonConvergenceError)):
        hyp_2f1(1.0, 1.0, 1.5, 0.99999, SeriesControl(max_terms=50))


def test_euler_integral_forms():
    assert rel(hyp_1f1_euler(0.7, 2.1, 3.0), float(mp.hyp1f1(0.7, 2.1, 3.0))) < 1e-10
    assert rel(hyp_2f1_euler(1.2, 0.6, 1.9, 0.4), float(mp.hyp2f1(1.2, 0.6, 1.9, 0.4))) < 1e-10


def test_plain_series_is_independent_route():
    assert rel(hyp_1f1_series(1.3, 2.2, -4.0), float(mp.hyp1f1(1.3, 2.2, -4.0))) < 1e-12


@pytest.mark.parametrize("kappa,u", [(0.0, 0.5), (0.3, 2.0), (1.5, 20.0), (-0.25, 7.0), (2.5, 80.0), (0.75, 400.0)])
def test_bessel_i_against_mpmath(kappa, u):
    assert rel(bessel_i(kappa, u), float(mp.besseli(kappa, u))) < 1e-12
    assert rel(bessel_i(kappa, u, scaled=True), float(sps.ive(kappa, u))) < 1e-12


def test_log_bessel_huge_argument():
    lb = log_bessel_i(0.5, 1e5)
    assert abs(lb - float(mp.log(mp.besseli(0.5, 1e5)))) < 1e-10 * abs(lb)


def test_normalized_bessel_at_zero_and_even():
    assert bessel_i_normalized(0.3, 0.0) == pytest.approx(1.0)
    assert bessel_i_normalized(0.3, -2.0) == pytest.approx(bessel_i_normalized(0.3, 2.0), rel=1e-14)


@pytest.mark.parametrize("n,a,b", [(1, 0.0, 0.0), (3, 0.25, -0.5), (7, 1.5, 0.5), (12, -0.5, -0.5), (20, 2.0, 3.0)])
def test_jacobi_values_and_norms(n, a, b):
    x = np.linspace(-0.95, 0.95, 8)  # mpmath struggles at exactly 0
    ours = jacobi_p(n, a, b, x)
    ref = np.array([float(mp.jacobi(n, a, b, xx)) for xx in x])
    assert np.max(np.abs(ours - ref)) < 1e-12 * max(1.0, np.max(np.abs(ref)))
    h = float(mp.quad(lambda s: (1 - s) ** a * (1 + s) ** b * mp.jacobi(n, a, b, s) ** 2, [-1, 0, 1]))
    assert rel(jacobi_sq_norm(n, a, b), h) < 1e-10


def test_gegenbauer_and_chebyshev():
    x = np.linspace(-1, 1, 10)
    for j, k in ((0, 0.4), (5, 0.75), (12, 1.2)):
        ref = np.array([float(mp.gegenbauer(j, k, xx)) for xx in x])
        assert np.max(np.abs(gegenbauer_c(j, k, x) - ref)) < 1e-12 * max(1, np.max(np.abs(ref)))
    assert np.allclose(chebyshev_u(6, x), [float(mp.chebyu(6, xx)) for xx in x], atol=1e-12)


@pytest.mark.parametrize("n,a,b", [(5, 0.0, 0.0), (16, -0.5, 0.25), (40, 1.5, -0.3)])
def test_gauss_jacobi_matches_scipy(n, a, b):
    x, w = gauss_jacobi(n, a, b)
    xs, ws = sps.roots_jacobi(n, a, b)
    assert np.max(np.abs(np.sort(x) - np.sort(xs))) < 1e-13
    assert w.sum() == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(np.sort(w * ws.sum())[::-1], np.sort(ws)[::-1], rtol=1e-11)


def test_gauss_jacobi_exact_on_polynomials():
    x, w = gauss_jacobi(6, 0.3, 1.1)
    # E[X^k] under the Beta-type weight from mpmath
    mass = mp.quad(lambda s: (1 - s) ** 0.3 * (1 + s) ** 1.1, [-1, 1])
    for k in range(12):
        m = float(mp.quad(lambda s: s**k * (1 - s) ** 0.3 * (1 + s) ** 1.1, [-1, 1]) / mass)
        assert np.dot(w, x**k) == pytest.approx(m, abs=1e-13)


def test_symmetric_rule_and_beta_rule():
    rule = gauss_jacobi_rule(0.75, 20)
    assert rule.integrate(np.ones_like(rule.nodes)) == pytest.approx(1.0)
    assert rule.integrate(rule.nodes) == pytest.approx(0.0, abs=1e-15)
    x, w = beta_rule(10, 0.5, 2.0)
    assert np.all((x > 0) & (x < 1))
    assert np.dot(w, x) == pytest.approx(0.5 / 2.5, rel=1e-13)  # Beta(0.5, 2) mean


def test_refine_reports_failure():
    from dunklwedge import QuadratureError

    with pytest.raises(QuadratureError):
        refine(lambda n: float(n), 4, tol=1e-12, n_max=32)


def test_gamma_helpers():
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi))
    assert log_pochhammer(2.5, 4) == pytest.approx(math.log(2.5 * 3.5 * 4.5 * 5.5))


# --- identities, property style -------------------------------------------------

pos = st.floats(0.1, 3.0)


@settings(max_examples=40, deadline=None)
@given(x=st.floats(0.0, 30.0))
def test_duplication(x):
    assert ident.legendre_duplication_residual(x) < 1e-12


@settings(max_examples=40, deadline=None)
@given(a=pos, d=pos, z=st.floats(-6.0, 6.0))
def test_kummer_first(a, d, z):
    assert ident.kummer_first_residual(a, a + d, z) < 1e-10


@settings(max_examples=40, deadline=None)
@given(a=st.floats(0.1, 4.0), x=st.floats(-50.0, -0.01))
def test_kummer_second(a, x):
    assert ident.kummer_second_residual(a, x) < 1e-10


def test_kummer_second_rejects_positive():
    with pytest.raises(DomainError):
        ident.kummer_second_residual(0.5, 1.0)


@settings(max_examples=30, deadline=None)
@given(a=st.floats(0.2, 3.0), b=st.floats(0.2, 3.0), u=st.floats(-0.8, 0.8))
def test_quadratic_transformation(a, b, u):
    assert ident.quadratic_transformation_residual(a, b, u) < 1e-10


@settings(max_examples=30, deadline=None)
@given(kappa=st.floats(0.05, 3.0), u=st.floats(-25.0, 25.0))
def test_poisson_integral(kappa, u):
    assert ident.poisson_residual(kappa, u) < 1e-11


@settings(max_examples=30, deadline=None)
@given(j=st.integers(0, 15), a=st.floats(0.5, 4.0), b=st.floats(0.5, 4.0), u=st.floats(-0.95, 0.95))
def test_differentiation(j, a, b, u):
    assert ident.differentiation_residual(j, a, b, u) < 1e-6


@settings(max_examples=30, deadline=None)
@given(j=st.integers(0, 25), a=st.floats(-0.9, 5.0), b=st.floats(-0.9, 5.0))
def test_special_values(j, a, b):
    assert ident.special_values_residual(j, a, b) < 1e-11


@settings(max_examples=20, deadline=None)
@given(n=st.integers(1, 25), a=st.floats(-0.9, 4.0), b=st.floats(-0.9, 4.0))
def test_orthonormality(n, a, b):
    assert ident.orthonormality_residual(n, a, b) < 1e-11


def test_literal_normalisation_is_not_orthonormal():
    assert ident.orthonormality_residual(6, 0.3, 0.3, literal_norm=True) > 1e-3


@settings(max_examples=30, deadline=None)
@given(j=st.integers(0, 15), k=st.floats(0.05, 2.0), x=st.floats(-1.0, 1.0))
def test_gegenbauer_product_formula(j, k, x):
    assert ident.xu_identity_check(j, k, x) < 1e-11


@settings(max_examples=20, deadline=None)
@given(a=pos, b=pos, c=pos, y=st.floats(-0.9, 0.9), z=st.floats(0.0, 4.0))
def test_multiplication_theorem(a, b, c, y, z):
    assert ident.erdelyi_multiplication_check(a, b, c, y, z) < 1e-9


def test_euler_residuals():
    assert ident.euler_1f1_residual(0.4, 1.9, -3.0) < 1e-10
    assert ident.euler_2f1_residual(0.8, 0.5, 2.0, -0.6) < 1e-10

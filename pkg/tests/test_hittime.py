import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sps

from dunklwedge import DomainError, NonConvergenceError, SeriesControl, StartPoint, WedgeModel
from dunklwedge import hittime as ht


def test_model_indices():
    m = WedgeModel(3, 0.6, 0.9)
    assert m.nu0 == pytest.approx(0.1) and m.nu1 == pytest.approx(0.4)
    assert m.wedge_angle == pytest.approx(math.pi / 6)
    assert m.flipped == pytest.approx((0.4, 0.1))


@pytest.mark.parametrize("k0,k1", [(0.5, 0.5), (0.4, 0.8), (0.75, 1.2)])
def test_model_rejects_non_hitting_regime(k0, k1):
    with pytest.raises(DomainError):
        ht.coeff_F(0, WedgeModel(2, k0, k1))


def test_start_outside_wedge_rejected():
    with pytest.raises(DomainError):
        ht.tail_hitting(0.5, WedgeModel.equal(2, 0.75), StartPoint(1.0, 0.9))


# --- coefficients -----------------------------------------------------------------


@pytest.mark.parametrize("p,k", [(1, 0.6), (2, 0.75), (3, 1.0)])
def test_odd_coefficients_vanish(p, k):
    m = WedgeModel.equal(p, k)
    assert all(ht.coeff_F(j, m) == 0.0 for j in range(1, 21, 2))
    assert all(ht.coeff_F(j, m) != 0.0 for j in range(0, 21, 2))


@pytest.mark.parametrize("j", range(0, 9))
def test_jacobi_integral_two_routes(j):
    for a, b in ((0.25, 0.25), (0.1, 0.4), (0.0, 0.5)):
        closed = ht.jacobi_integral(j, a, b)
        x, w = np.polynomial.legendre.leggauss(20)  # exact for these degrees
        quad = float(w @ sps.eval_jacobi(j, a, b, x))
        assert closed == pytest.approx(quad, abs=1e-13)


def test_coeff_quadrature_route():
    m = WedgeModel(2, 0.6, 0.85)
    for j in range(8):
        assert ht.coeff_F(j, m) == pytest.approx(ht.coeff_F(j, m, quadrature=True), rel=1e-12, abs=1e-15)


# --- tail against the exact quadrant law ------------------------------------------


@pytest.mark.parametrize("k0,k1", [(0.75, 0.75), (0.6, 0.9), (1.0, 0.7)])
def test_tail_p1_matches_incomplete_gamma_product(k0, k1):
    m = WedgeModel(1, k0, k1)
    phi = 0.6
    v = np.array([0.05, 0.3, 1.0, 4.0, 15.0])
    series = ht.tail_series_v(v, m, phi)
    exact = sps.gammainc(m.nu0, v * math.sin(phi) ** 2) * sps.gammainc(m.nu1, v * math.cos(phi) ** 2)
    ratio = series / exact
    assert np.ptp(ratio) < 1e-11 * ratio.mean()
    # the constant is 2^(nu0 + nu1) (used here only as an oracle)
    assert ratio.mean() == pytest.approx(2.0 ** -(m.nu0 + m.nu1), rel=1e-11)


def test_tail_z2z2_against_scipy():
    v = np.geomspace(0.01, 50, 20)
    ours = ht.tail_z2z2(v, 0.25, 0.4, math.pi / 6)
    ref = sps.gammainc(0.25, v / 4) * sps.gammainc(0.4, 0.75 * v)
    assert np.allclose(ours, ref, rtol=1e-12, atol=1e-300)


def test_log_lower_gamma_against_mpmath():
    for nu, x in ((0.1, 0.01), (0.25, 3.0), (0.5, 40.0)):
        assert ht.log_lower_gamma(nu, x) == pytest.approx(float(mp.log(mp.gammainc(nu, 0, x))), rel=1e-13)


@pytest.mark.parametrize("model", [WedgeModel.equal(2, 0.75), WedgeModel(2, 0.6, 0.95), WedgeModel.equal(3, 0.9)])
def test_normalising_constant_is_power_of_two(model):
    c = ht.normalize_density("tail", model).constant
    assert c == pytest.approx(2.0 ** (model.nu0 + model.nu1), rel=1e-9)


def test_normalized_tail_limits():
    m = WedgeModel.equal(2, 0.75)
    start = StartPoint(1.0, math.pi / 8)
    assert ht.tail_hitting_normalized(1e-3, m, start) == pytest.approx(1.0, abs=1e-9)
    assert ht.tail_hitting_normalized(50.0, m, start) < 0.05


def test_tail_scaling_in_rho():
    m = WedgeModel(2, 0.7, 0.9)
    a = ht.tail_hitting_normalized(0.4, m, StartPoint(1.0, 0.3))
    b = ht.tail_hitting_normalized(0.4 * 9, m, StartPoint(3.0, 0.3))
    assert a == pytest.approx(b, rel=1e-12)


@settings(max_examples=15, deadline=None)
@given(t1=st.floats(0.02, 5.0), t2=st.floats(0.02, 5.0), phi=st.floats(0.05, 0.73))
def test_tail_monotone_and_bounded(t1, t2, phi):
    m = WedgeModel.equal(2, 0.75)
    lo, hi = sorted((t1, t2))
    a, b = ht.tail_hitting_normalized(np.array([lo, hi]), m, StartPoint(1.0, phi))
    assert 0 <= b <= a + 1e-12 <= 1 + 1e-9


def test_density_is_derivative_of_tail():
    m = WedgeModel(2, 0.65, 0.9)
    phi, h = 0.35, 1e-5
    v = np.array([0.2, 1.0, 3.0])
    fd = (ht.tail_series_v(v + h, m, phi) - ht.tail_series_v(v - h, m, phi)) / (2 * h)
    assert np.allclose(ht.tail_density_v(v, m, phi), fd, rtol=1e-7)


def test_series_control_budget_enforced():
    m = WedgeModel.equal(2, 0.75)
    with pytest.raises(NonConvergenceError) as info:
        ht.tail_series_v(np.array([400.0]), m, 0.3, SeriesControl(max_terms=8))
    assert info.value.partial is not None


def test_literal_normalisation_differs():
    m = WedgeModel.equal(2, 0.8)
    start = StartPoint(1.0, 0.2)
    a = ht.tail_hitting_normalized(0.5, m, start)
    b = ht.tail_hitting_normalized(0.5, m, start, literal_norm=True)
    assert 0 < b <= 1 and abs(a - b) > 1e-4


# --- V0 density routes ----------------------------------------------------------------


@pytest.mark.parametrize("k,phi", [(0.6, 0.1), (0.8, math.pi / 8), (1.0, 0.7)])
def test_lemma1(k, phi):
    v = np.array([0.1, 1.0, 5.0, 10.0])
    lhs = ht.lemma1_lhs(v, k, phi)
    rhs = ht.lemma1_rhs(v, k, phi)
    assert np.allclose(lhs, rhs, rtol=1e-10)


@pytest.mark.parametrize("nu", [0.3, 0.45, 0.5])
def test_density_routes_proportional(nu):
    v = np.geomspace(0.01, 20, 25)
    phi = 0.3
    s = ht.density_series_equal_k(v, 2, nu + 0.5, phi)
    i = ht.density_v0_integral(v, nu, phi)
    b = ht.density_v0_bessel(v, nu, phi)
    assert np.std(np.log(s / i)) < 1e-10
    assert np.std(np.log(b / i)) < 1e-10
    assert np.all(i > 0)


def test_series_even_part_matches_tail_derivative():
    m = WedgeModel.equal(2, 0.8)
    v = np.array([0.3, 2.0, 9.0])
    r = ht.density_series_equal_k(v, 2, 0.8, 0.3) / ht.tail_density_v(v, m, 0.3)
    assert np.ptp(r) < 1e-11 * abs(r.mean())


def test_bessel_form_domain():
    with pytest.raises(DomainError):
        ht.density_v0_bessel(1.0, 0.2, 0.3)


def test_integral_density_normalises_to_one():
    m = WedgeModel.equal(2, 0.8)
    c = ht.normalize_density("integral", m).constant
    f = lambda v: ht.density_v0_integral(v, 0.3, math.pi / 8)  # noqa: E731
    val = float(mp.quad(lambda x: f(float(x)), [0, 1, 10, 60, 300]))
    assert c * val == pytest.approx(1.0, rel=1e-7)


def test_z2z2_density_against_gamma_max():
    from dunklwedge.checks import max_of_gammas_density

    v = np.geomspace(0.05, 20, 30)
    r = ht.density_v0_z2z2(v, 0.25, math.pi / 5, nu1=0.4) / max_of_gammas_density(v, 0.25, 0.4, math.pi / 5)
    assert np.ptp(r) < 1e-11 * r.mean()
    assert r.mean() == pytest.approx(math.gamma(0.25) * math.gamma(0.4), rel=1e-11)


def test_normalize_cache_and_angles():
    ht.clear_cache()
    m = WedgeModel.equal(1, 0.75)
    a = ht.normalize_density("z2z2", m)
    assert ht.normalize_density("z2z2", m) is a
    b = ht.normalize_density("z2z2", m, phi=0.3, use_cache=False)
    assert b.constant == pytest.approx(a.constant, rel=1e-9)
    assert a.constant == pytest.approx(1 / math.gamma(0.25) ** 2, rel=1e-9)
    with pytest.raises(DomainError):
        ht.normalize_density("nope", m)
    with pytest.raises(DomainError):
        ht.normalize_density("integral", m)


def test_half_line_quadrature():
    val, err = ht.integrate_half_line(lambda v: v**-0.5 * np.exp(-v), -0.5, 1.0)
    assert val == pytest.approx(math.sqrt(math.pi), rel=1e-12)


# --- Laplace-type moment --------------------------------------------------------------


@pytest.mark.parametrize("nu", [0.3, 0.5])
def test_laplace_closed_vs_numeric(nu):
    y = np.array([0.0, 1.0, 5.0])
    r = ht.laplace_moment_numeric(y, nu) / ht.laplace_moment_pi8(y, nu)
    assert np.ptp(r) < 1e-8 * r.mean()


def test_laplace_half_index_reference():
    from dunklwedge.checks import vakeroudis_yor

    y = np.linspace(0, 10, 12)
    r = ht.laplace_moment_pi8(y, 0.5) / vakeroudis_yor(y)
    assert np.allclose(r, 2.0, rtol=1e-12)


def test_laplace_domain():
    with pytest.raises(DomainError):
        ht.laplace_moment_pi8(-1.0, 0.3)

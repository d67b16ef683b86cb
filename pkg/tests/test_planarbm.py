import math

import mpmath as mp
import numpy as np
import pytest

from dunklwedge import DomainError, StartPoint, WedgeModel
from dunklwedge.hittime import tail_hitting_normalized
from dunklwedge.planarbm import (
    SquareWaveSpec,
    WindingLaw,
    bm_tail_bessel,
    bm_tail_squarewave,
    coeff_S,
    spitzer_cf,
    square_wave,
    square_wave_fourier,
    wp_expectation_truncated,
)


def test_square_wave_values():
    assert square_wave(1, 0.3) == 1
    assert square_wave(1, 2.0) == -1
    assert square_wave(3, math.pi / 3) == 0
    assert square_wave(2, 0.0) == 0
    assert square_wave(2, -0.2) == -1
    w = SquareWaveSpec(2)
    x = np.linspace(0.01, 3, 40)
    assert np.array_equal(w(x), w(x + math.pi / 2))


def test_square_wave_fourier_converges_away_from_jumps():
    x = np.array([0.2, 0.5, 1.1, 2.0])
    err = [np.max(np.abs(square_wave_fourier(2, x, n) - square_wave(2, x))) for n in (50, 400)]
    assert err[1] < err[0] and err[1] < 0.01


def test_coeff_S():
    assert coeff_S(0) == 2.0 and coeff_S(1) == 0.0 and coeff_S(4) == pytest.approx(0.4)
    with pytest.raises(DomainError):
        coeff_S(-1)


@pytest.mark.parametrize("lam", [0.0, 0.7, 2.0, 5.5])
def test_spitzer_cf_against_mpmath(lam):
    rho, t = 1.3, 0.4
    x = mp.mpf(rho) ** 2 / (4 * t)
    ref = mp.sqrt(mp.pi) / 2 * mp.sqrt(2 * x) * mp.exp(-x) * (
        mp.besseli((lam - 1) / 2, x) + mp.besseli((lam + 1) / 2, x)
    )
    assert spitzer_cf(lam, rho, t) == pytest.approx(float(ref), rel=1e-12)


def test_spitzer_cf_special_values():
    assert spitzer_cf(0.0, 1.0, 0.3) == pytest.approx(1.0, rel=1e-13)
    # x = 1/2, lambda = 2: sqrt(pi)/2 * e^{-1/2} (I_{1/2} + I_{3/2}) collapses to e^{-1}
    assert spitzer_cf(2.0, 1.0, 0.5) == pytest.approx(math.exp(-1), rel=1e-13)
    assert spitzer_cf(-3.0, 1.0, 0.5) == spitzer_cf(3.0, 1.0, 0.5)
    assert WindingLaw(1.0, 0.5).cf(2.0) == spitzer_cf(2.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        spitzer_cf(1.0, 1.0, 0.0)


@pytest.mark.parametrize("p,phi", [(1, math.pi / 4), (2, math.pi / 8), (3, 0.1)])
def test_bessel_equals_squarewave(p, phi):
    t = np.geomspace(0.01, 5, 15)
    a = bm_tail_bessel(t, p, 1.0, phi)
    b = bm_tail_squarewave(t, p, 1.0, phi)
    assert np.max(np.abs(a - b)) < 1e-12


def test_truncated_fourier_approaches_full_sum():
    t = 0.3
    full = bm_tail_bessel(t, 2, 1.0, 0.3)
    errs = [abs(wp_expectation_truncated(t, 2, 1.0, 0.3, n) - full) for n in (1, 3, 10)]
    assert errs[2] <= errs[0] and errs[2] < 1e-10


def test_tail_limits():
    assert bm_tail_bessel(1e-3, 2, 1.0, math.pi / 8) == pytest.approx(1.0, abs=1e-12)
    assert bm_tail_bessel(100.0, 2, 1.0, math.pi / 8) < 0.02
    t = np.geomspace(0.01, 10, 30)
    assert np.all(np.diff(bm_tail_bessel(t, 2, 1.0, math.pi / 8)) < 0)


def test_planar_bm_is_unit_multiplicity_case():
    # k0 = k1 = 1 makes the flipped process a planar Brownian motion
    t = np.array([0.05, 0.2, 1.0])
    a = bm_tail_bessel(t, 2, 1.0, 0.25)
    b = tail_hitting_normalized(t, WedgeModel.equal(2, 1.0), StartPoint(1.0, 0.25))
    assert np.allclose(a, b, rtol=1e-9)


def test_domain_errors():
    with pytest.raises(DomainError):
        bm_tail_bessel(1.0, 2, 1.0, 1.0)
    with pytest.raises(DomainError):
        bm_tail_bessel(-1.0, 2, 1.0, 0.3)
    with pytest.raises(DomainError):
        bm_tail_squarewave(1.0, 0, 1.0, 0.3)

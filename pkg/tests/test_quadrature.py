import math

import numpy as np
import pytest
from scipy.special import erf, erfi

from minkprop import PairingResult, QuadConfig
from minkprop.quadrature import (gaussian_pole_pv_moments, integrate_1d,
                                 integrate_pole_ladder, integrate_pv,
                                 integrate_radial3, integrate_semi_infinite,
                                 richardson)


def test_full_line_gaussian(cfg):
    res = integrate_1d(lambda x: np.exp(-x * x), -40.0, 40.0, cfg)
    assert res.converged
    assert res.value == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    assert abs(res.value - math.sqrt(math.pi)) <= max(res.abs_err, 1e-13)


def test_half_line_gaussian(cfg):
    res = integrate_semi_infinite(lambda x: np.exp(-x * x), 0.0, 1.0, cfg)
    assert res.value == pytest.approx(math.sqrt(math.pi) / 2.0, abs=1e-12)


def test_oscillatory_halfline_matches_truncated(cfg):
    f = lambda x: np.sin(3.0 * x) * np.exp(-x * x)
    a = integrate_semi_infinite(f, 1.0, 1.0, cfg).value
    b = integrate_1d(f, 1.0, 41.0, cfg).value
    assert a == pytest.approx(b, abs=1e-12)


def test_radial3_gaussian(cfg):
    # int d^3p e^{-|p|^2} = pi^{3/2}
    res = integrate_radial3(lambda p: np.exp(-np.sum(p * p, axis=-1)),
                            40.0, cfg)
    assert res.value == pytest.approx(math.pi ** 1.5, abs=1e-10)


def test_pv_log_oracle(cfg):
    # pv int_{-1}^{2} dx / x = ln 2
    res = integrate_pv(lambda x: np.ones_like(x), 0.0, -1.0, 2.0, cfg)
    assert res.value == pytest.approx(math.log(2.0), abs=1e-10)


def test_pv_gaussian_erfi_oracle(cfg):
    # pv int e^{-x^2/2}/(x - a) dx = -pi e^{-a^2/2} erfi(a / sqrt 2)
    a = 0.8
    res = integrate_pv(lambda x: np.exp(-x * x / 2.0), a, -40.0, 40.0, cfg)
    want = -math.pi * math.exp(-a * a / 2.0) * erfi(a / math.sqrt(2.0))
    assert res.value == pytest.approx(want, abs=1e-10)


def test_gaussian_pole_pv_moments_vs_direct(cfg):
    sigma, omega = 0.9, 1.3
    etas = np.array([-2.0, -0.4, 0.0, 0.7, 3.0, 15.0])
    q = gaussian_pole_pv_moments(etas, sigma, omega, 3)
    assert q.shape == (len(etas), 4)
    for i, eta in enumerate(etas):
        for n in range(4):
            direct = integrate_pv(
                lambda y, n=n: y ** n * np.exp(-y * y / (2 * sigma * sigma))
                * np.exp(1j * omega * y),
                float(eta), -60.0, 60.0, cfg)
            assert q[i, n] == pytest.approx(direct.value, rel=2e-9,
                                            abs=2e-9), (eta, n)


def test_gaussian_pole_moments_negative_omega_conjugation():
    etas = np.array([0.3, 1.1])
    a = gaussian_pole_pv_moments(etas, 1.0, -0.7, 2)
    b = np.conj(gaussian_pole_pv_moments(etas, 1.0, 0.7, 2))
    np.testing.assert_allclose(a, b, rtol=0, atol=0)


def test_richardson_power_law():
    # values v(h) = L + c1 h^2 + c2 h^4 sampled on a ratio-1/2 ladder
    L, c1, c2 = 0.7, 0.3, -0.2
    hs = 0.4 * 0.5 ** np.arange(6)
    vals = L + c1 * hs ** 2 + c2 * hs ** 4
    limit, spread = richardson(vals, 0.5, powers=(2, 4))
    assert limit == pytest.approx(L, abs=1e-12)
    # the spread is the conservative gap to the previous diagonal entry
    assert abs(limit - L) <= spread < 1e-6


def test_pole_ladder_sokhotski(cfg):
    # lim <1/(x - i eps), g> = pv<1/x, g> + i pi g(0)
    g = lambda x: np.exp(-x * x)
    res = integrate_pole_ladder(g, 0.0, +1, cfg.pv_epsilons(), -40.0, 40.0,
                                cfg)
    pv = integrate_pv(g, 0.0, -40.0, 40.0, cfg).value
    assert res.value == pytest.approx(pv + 1j * math.pi, abs=1e-8)
    assert res.info["ladder_spread"] <= 1e-6


def test_pairing_result_combination():
    a = PairingResult(1.0 + 2.0j, 1e-10, 10, True)
    b = PairingResult(0.5 - 1.0j, 2e-10, 5, True)
    c = a + b
    assert c.value == 1.5 + 1.0j
    assert c.abs_err == pytest.approx(3e-10)
    assert c.evaluations == 15 and c.converged
    d = a.scaled(-2.0)
    assert d.value == -2.0 - 4.0j
    assert d.abs_err == pytest.approx(2e-10)


def test_error_estimates_are_honest(cfg):
    # integrand with a known antiderivative: erf
    res = integrate_1d(lambda x: np.exp(-x * x), -1.0, 2.0, cfg)
    truth = math.sqrt(math.pi) / 2.0 * (erf(2.0) + erf(1.0))
    assert abs(res.value - truth) <= max(res.abs_err, 1e-13)

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minkprop import TestFn, TestFnBundle, random_testfn
from minkprop.testfns import MAX_DEGREE


def _rand(seed=0, dim=4):
    return random_testfn(np.random.default_rng(seed), dim)


def test_gaussian_value_at_center_and_tail():
    f = TestFn.gaussian(4)
    assert f((0.0, 0.0, 0.0, 0.0)) == pytest.approx(1.0)
    assert f((math.sqrt(2.0), 0.0, 0.0, 0.0)) == pytest.approx(
        math.exp(-1.0), rel=1e-14)
    # decay: negligible 10 widths out
    far = f((10.0, 0.0, 0.0, 0.0))
    assert abs(far) < 1e-18 * (abs(f((0.0,) * 4)) + 1.0)


def test_batch_evaluation_matches_pointwise():
    f = _rand(1)
    pts = np.random.default_rng(2).normal(size=(7, 4))
    batch = f(pts)
    for i, p in enumerate(pts):
        assert batch[i] == pytest.approx(f(p), rel=1e-14, abs=1e-16)


def test_derivative_product_rule_on_phase_gaussian():
    # d0 of exp(i k t) * Gaussian centered at c, evaluated at c: the
    # Gaussian factor is flat at its peak, leaving i k f(c)
    c = (0.3, -0.2, 0.5, 0.1)
    k = 1.7
    f = TestFn.gaussian(4, center=c, widths=(0.8, 1.0, 1.2, 0.9),
                        phase=(k, 0.0, 0.0, 0.0))
    df = f.derivative(0)
    assert df(c) == pytest.approx(1j * k * f(c), rel=1e-13)


@pytest.mark.parametrize("axis", range(4))
def test_derivative_finite_difference(axis):
    f = _rand(3)
    df = f.derivative(axis)
    x = np.array([0.2, -0.1, 0.4, 0.3])
    errs = []
    for h in (1e-3, 1e-4):
        e = np.zeros(4)
        e[axis] = h
        fd = (f(x + e) - f(x - e)) / (2.0 * h)
        errs.append(abs(fd - df(x)))
    # second-order scheme: error drops ~100x per decade of h
    assert errs[0] < 1e-4
    assert errs[1] < errs[0] * 1e-1 + 1e-12


def test_box_plus_m2_at_symmetric_peak():
    # plane-phase-free symmetric Gaussian at the origin: second
    # derivatives at the peak give -1/sigma_i^2 per axis, so
    # (box + m^2) f at 0 = (-1/s0^2 + sum_i 1/s_i^2 + m^2) f(0)
    widths = (0.7, 1.1, 0.9, 1.3)
    f = TestFn.gaussian(4, widths=widths)
    g = f.box_plus_m2(0.0)
    expect = (-1.0 / widths[0] ** 2 + sum(1.0 / w ** 2
                                          for w in widths[1:]))
    assert g((0.0,) * 4) == pytest.approx(expect * f((0.0,) * 4), rel=1e-13)
    g2 = f.box_plus_m2(2.0)
    assert g2((0.0,) * 4) == pytest.approx((expect + 4.0) * f((0.0,) * 4),
                                           rel=1e-13)


def test_box_plus_m2_kills_onshell_phase_at_large_width():
    # wide packet with on-shell plane phase: (box + m^2) ~ (m^2 - g(k,k))
    # = 0 to leading order, suppressed by 1/sigma^2
    m = 1.0
    kp = np.array([0.4, -0.3, 0.2])
    k0 = math.sqrt(m * m + kp @ kp)
    sig = 40.0
    f = TestFn.gaussian(4, widths=(sig,) * 4, phase=(k0, *kp))
    g = f.box_plus_m2(m)
    x = np.array([0.1, 0.2, -0.1, 0.05])
    assert abs(g(x)) <= 10.0 / sig ** 2 * abs(f(x))


def test_translate_reflect_conjugate():
    f = _rand(4)
    b = np.array([0.5, -0.3, 0.2, 0.1])
    g = f.translate(b)
    rng = np.random.default_rng(5)
    for x in rng.normal(size=(10, 4)):
        assert g(x) == pytest.approx(f(x - b), rel=1e-14, abs=1e-16)
        assert f.reflect()(x) == pytest.approx(f(-x), rel=1e-14, abs=1e-16)
        assert f.conjugate()(x) == pytest.approx(np.conj(f(x)), rel=1e-14,
                                                 abs=1e-16)


def test_standard_gaussian_is_fourier_self_dual():
    f = TestFn.gaussian(1)
    for s in (+1, -1):
        g = f.fourier(s)
        xs = np.linspace(-3, 3, 11)
        for x in xs:
            assert g(np.array([x])) == pytest.approx(f(np.array([x])),
                                                     rel=1e-12, abs=1e-14)


def test_fourier_inversion_and_derivative_exchange():
    f = _rand(6)
    # F- F+ = identity on the packet family
    g = f.fourier(+1).fourier(-1)
    rng = np.random.default_rng(7)
    for x in rng.normal(size=(6, 4)):
        assert g(x) == pytest.approx(f(x), rel=1e-12, abs=1e-14)
    # F(s)(d_j u) pairs with multiplication by the dual coordinate:
    # with this package's kernel orientation F+ (d0 f) = +i y0 F+ f
    h = f.derivative(0).fourier(+1)
    k = f.fourier(+1)
    for dx in rng.normal(size=(6, 4)):
        x = k.center + 0.5 * dx
        assert h(x) == pytest.approx(1j * x[0] * k(x), rel=1e-11, abs=1e-13)


def test_json_round_trip_exact():
    f = _rand(8)
    g = TestFn.from_json(f.to_json())
    assert g.to_json() == f.to_json()
    rng = np.random.default_rng(9)
    for x in rng.normal(size=(5, 4)):
        assert g(x) == f(x)
    # malformed payloads are rejected
    with pytest.raises((KeyError, TypeError, ValueError,
                        json.JSONDecodeError)):
        TestFn.from_json("{\"coeffs\": 1}")


def test_degree_cap_enforced():
    with pytest.raises(ValueError):
        TestFn(4, np.array([1.0 + 0j]),
               np.array([[MAX_DEGREE + 1, 0, 0, 0]]),
               np.zeros(4), np.ones(4), np.zeros(4))


def test_bundle_shares_parameters_and_members_match():
    f = _rand(10)
    members = [f, f.derivative(0), f.derivative(2)]
    b = TestFnBundle.from_testfns(members)
    assert b.size == 3
    pts = np.random.default_rng(11).normal(size=(6, 4))
    vals = b(pts)
    assert vals.shape == (6, 3)
    for r, m in enumerate(members):
        np.testing.assert_allclose(vals[:, r], m(pts), rtol=1e-13,
                                   atol=1e-15)
        got = b.member(r)(pts)
        np.testing.assert_allclose(got, m(pts), rtol=1e-13, atol=1e-15)


def test_bundle_requires_shared_envelope():
    f = TestFn.gaussian(4)
    g = TestFn.gaussian(4, center=(1.0, 0, 0, 0))
    with pytest.raises(ValueError):
        TestFnBundle.from_testfns([f, g])


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000),
       st.floats(min_value=-2.0, max_value=2.0,
                 allow_nan=False, allow_infinity=False))
def test_linearity_of_evaluation(seed, scale):
    f = _rand(seed)
    x = np.array([0.1, -0.2, 0.3, 0.05])
    g = TestFn(f.dim, f.coeffs * scale, f.alphas, f.center, f.widths, f.phase)
    assert g(x) == pytest.approx(scale * f(x), rel=1e-12, abs=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_norms_positive_and_translation_invariant(seed):
    f = _rand(seed)
    n2 = f.l2_norm()
    assert n2 > 0.0
    g = f.translate((0.7, -0.4, 0.2, 1.1))
    assert g.l2_norm() == pytest.approx(n2, rel=1e-10)


def test_l1_norm_closed_form_for_pure_gaussian():
    widths = (0.5, 1.0, 1.5, 2.0)
    f = TestFn.gaussian(4, widths=widths, coeff=2.0)
    expect = 2.0 * np.prod([math.sqrt(2.0 * math.pi) * w for w in widths])
    assert f.l1_norm() == pytest.approx(expect, rel=1e-14)
    with pytest.raises(ValueError):
        _rand(0).l1_norm()

import math

import numpy as np
import pytest
from scipy.integrate import quad

from kdvwhitham.profile import (NumericProfile, Profile, Sech2Profile,
                                make_profile, tabulated_profile)

UC = -2.0 / 3.0
TC = math.sqrt(3.0) / 8.0
XC = -math.sqrt(3.0) / 2.0 + math.log((math.sqrt(3.0) - 1.0) / math.sqrt(2.0))


@pytest.fixture(scope="module")
def p():
    return Sech2Profile()


@pytest.fixture(scope="module")
def numeric():
    return NumericProfile(lambda x: -1.0 / np.cosh(x) ** 2, name="wrapped")


def test_evaluate(p):
    assert p.evaluate(0.0) == -1.0
    assert p.evaluate(-1.0) == pytest.approx(-1.0 / math.cosh(1.0) ** 2,
                                             abs=1e-15)
    xs = np.linspace(-4, -0.5, 20)
    np.testing.assert_allclose(p.u0(p.f_minus(p.u0(xs))), p.u0(xs), atol=1e-14)


def test_inverse_examples(p):
    assert p.inverse(-2.0 / 3.0, "decreasing") == pytest.approx(
        math.log((1 - math.sqrt(1 / 3)) / math.sqrt(2 / 3)), abs=1e-14)
    # even hump: f_+ = -f_-
    assert p.inverse(-0.5, "increasing") == pytest.approx(
        -p.inverse(-0.5, "decreasing"), abs=1e-14)
    # y -> -1: branch point approaches the hump bottom
    assert abs(p.inverse(-1 + 1e-12, "decreasing")) < 1e-5
    with pytest.raises(ValueError):
        p.inverse(0.5, "decreasing")
    with pytest.raises(ValueError):
        p.inverse(-0.5, "sideways")


def test_inverse_derivative_examples(p):
    assert p.inverse_derivative(UC, "decreasing") == pytest.approx(
        -3 * math.sqrt(3) / 4, abs=1e-14)
    assert p.inverse_derivative(-0.5, "decreasing") == pytest.approx(
        -math.sqrt(2), abs=1e-14)
    # central difference of inverse()
    h = 1e-5
    fd = (p.inverse(-0.3 + h, "decreasing")
          - p.inverse(-0.3 - h, "decreasing")) / (2 * h)
    assert p.inverse_derivative(-0.3, "decreasing") == pytest.approx(fd,
                                                                     abs=1e-6)
    with pytest.raises(ValueError):
        p.inverse_derivative(-1.5, "decreasing")


def test_round_trip_invariant(p, numeric):
    ys = np.linspace(-0.999, -0.001, 200)
    np.testing.assert_allclose(p.u0(p.f_minus(ys)), ys, atol=1e-10)
    np.testing.assert_allclose(p.u0(p.f_plus(ys)), ys, atol=1e-10)
    ys = np.linspace(-0.999, -0.001, 40)
    np.testing.assert_allclose(numeric.u0(numeric.f_minus(ys)), ys, atol=1e-8)
    np.testing.assert_allclose(numeric.u0(numeric.f_plus(ys)), ys, atol=1e-8)


def test_phi_closed_vs_defining_integral(p):
    def phi_quad(xi, eta):
        f = lambda mu: p.fp_minus((1 + mu) / 2 * xi + (1 - mu) / 2 * eta)
        val, _ = quad(f, -1, 1, weight="alg", wvar=(0.0, -0.5), limit=200)
        return val / (2 * math.sqrt(2))

    for xi, eta in [(-0.4, -0.8), (-0.8, -0.4), (-0.3, -0.6)]:
        assert p.phi_kernel(xi, eta) == pytest.approx(phi_quad(xi, eta),
                                                      abs=1e-8)
        # generic quadrature path agrees with the closed form
        assert Profile._phi_pre(p, xi, eta, n=96) == pytest.approx(
            p.phi_kernel(xi, eta), abs=1e-10)


def test_phi_coincidence_is_inverse_slope(p):
    for xi in [-0.3, -0.5, -0.8]:
        assert p.phi_kernel(xi, xi) == pytest.approx(float(p.fp_minus(xi)),
                                                     abs=1e-14)
    # at the catastrophe the leading-edge relation Phi + 6 t_c = 0 holds
    assert p.phi_kernel(UC, UC) + 6 * TC == pytest.approx(0.0, abs=1e-14)


def test_phi_hump_spot_value(p):
    # Phi(-1/4, -1) = -pi/sqrt(3), the hump-crossing relation with T = pi/(6 sqrt 3)
    assert p.phi_kernel(-0.25, -1.0) == pytest.approx(-math.pi / math.sqrt(3),
                                                      abs=1e-12)


def test_phi_second_derivative_identities(p):
    # at xi = eta = u_c: d2/dxi2 = 8/15 f''', mixed = 2/15 f''', d2/deta2 = 1/5 f'''
    fppp = float(p.fppp_minus(UC))
    h = 1e-4
    dxx = (p.phi_xi(UC + h, UC) - p.phi_xi(UC - h, UC)) / (2 * h)
    dxe = (p.phi_xi(UC, UC + h) - p.phi_xi(UC, UC - h)) / (2 * h)
    assert dxx == pytest.approx(8 / 15 * fppp, rel=2e-4)
    assert dxe == pytest.approx(2 / 15 * fppp, rel=2e-4)
    dee = (p.phi_kernel(UC, UC + h) - 2 * p.phi_kernel(UC, UC)
           + p.phi_kernel(UC, UC - h)) / h**2
    assert dee == pytest.approx(1 / 5 * fppp, rel=2e-3)


def test_phi_post_continuity_at_bottom(p):
    lam = -0.4
    assert p.phi_kernel(lam, -1 + 1e-13, "post_hump") == pytest.approx(
        p.phi_kernel(lam, -1.0, "pre_hump"), abs=1e-6)
    # generic quadrature agrees with the closed form
    assert Profile._phi_post(p, -0.3, -0.95, n=96) == pytest.approx(
        p.phi_kernel(-0.3, -0.95, "post_hump"), abs=1e-10)
    assert Profile.phi_post_sqrt_limit(p, -0.7, n=96) == pytest.approx(
        p.phi_post_sqrt_limit(-0.7), abs=1e-10)


def test_fppp_finite_difference_matches_exact(p):
    for y in [-0.7, UC, -0.4]:
        assert float(p.fppp_minus(y)) == pytest.approx(
            float(p.fppp_minus_exact(y)), rel=1e-6)


def test_critical_point_analytic_and_numeric(p, numeric):
    cp = p.critical_point()
    assert cp.t_c == pytest.approx(TC, abs=1e-15)
    assert cp.x_c == pytest.approx(XC, abs=1e-15)
    assert cp.u_c == pytest.approx(UC, abs=1e-15)
    cn = numeric.critical_point()
    assert cn.t_c == pytest.approx(TC, abs=1e-8)
    assert cn.x_c == pytest.approx(XC, abs=1e-8)
    assert cn.u_c == pytest.approx(UC, abs=1e-8)


def test_critical_point_rescaling():
    lam = 1.7
    r = NumericProfile(lambda x: -1.0 / np.cosh(x / lam) ** 2)
    assert r.critical_point().t_c == pytest.approx(lam * TC, rel=1e-8)


def test_numeric_profile_matches_closed_forms(p, numeric):
    ys = np.linspace(-0.99, -0.01, 25)
    np.testing.assert_allclose(numeric.f_minus(ys), p.f_minus(ys), atol=1e-10)
    np.testing.assert_allclose(numeric.fp_minus(ys), p.fp_minus(ys),
                               rtol=1e-6, atol=1e-6)
    w = np.linspace(0.0, 0.9, 10)
    np.testing.assert_allclose(numeric.f_minus_w(w), p.f_minus_w(w), atol=1e-8)
    np.testing.assert_allclose(numeric.fp_minus_2w(w), p.fp_minus_2w(w),
                               rtol=1e-5, atol=1e-5)


def test_make_profile_and_tabulated(tmp_path):
    assert make_profile("sech2").name == "sech2"
    xs = np.linspace(-18, 18, 4001)
    table = np.column_stack([xs, -1.0 / np.cosh(xs) ** 2])
    path = tmp_path / "hump.dat"
    np.savetxt(path, table)
    prof = make_profile(str(path))
    ys = np.linspace(-0.95, -0.05, 10)
    ref = Sech2Profile()
    np.testing.assert_allclose(prof.f_minus(ys), ref.f_minus(ys), atol=1e-6)
    bad = tmp_path / "bad.dat"
    np.savetxt(bad, np.column_stack([xs[::-1], table[:, 1]]))
    with pytest.raises(ValueError):
        tabulated_profile(str(bad))

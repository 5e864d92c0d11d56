import numpy as np
import pytest
from scipy.integrate import quad

from kdvwhitham.chebyshev import (ChebSeries, ResolutionError, cheb_fit,
                                  cheb_nodes, fit_function,
                                  integral_cheb_weight, integral_endpoint_sqrt)


def test_fit_recovers_t3():
    series = fit_function(lambda x: 4 * x**3 - 3 * x, 16)
    expected = np.zeros(17)
    expected[3] = 1.0
    np.testing.assert_allclose(series.coef, expected, atol=1e-14)


def test_fit_constant():
    series = fit_function(lambda x: np.ones_like(x), 8)
    assert abs(series.coef[0] - 1.0) < 1e-14
    assert np.max(np.abs(series.coef[1:])) < 1e-14


def test_exp_tail_reaches_rounding():
    series = fit_function(np.exp, 32)
    assert abs(series.coef[-1]) < 1e-12
    # evaluation reproduces the samples
    x = cheb_nodes(32)
    np.testing.assert_allclose(series(x), np.exp(x), rtol=0, atol=1e-12)


def test_antiderivative_coefficients():
    # f = 1: F = T_1 + const with F(-1) = 0
    series = ChebSeries(np.array([1.0, 0.0, 0.0, 0.0]))
    anti = series.antiderivative()
    assert abs(anti.coef[1] - 1.0) < 1e-15
    assert abs(anti(np.array(-1.0))) < 1e-15

    # f = T_1: F = (x^2 - 1)/2, so F(1) = 0
    series = ChebSeries(np.array([0.0, 1.0, 0.0, 0.0]))
    anti = series.antiderivative()
    assert abs(anti(np.array(1.0))) < 1e-15
    xs = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(anti(xs), (xs**2 - 1) / 2, atol=1e-15)


def test_derivative_antiderivative_roundtrip():
    rng = np.random.default_rng(0)
    coef = np.concatenate([rng.standard_normal(11), np.zeros(10)])
    series = ChebSeries(coef)
    back = series.antiderivative().derivative()
    xs = np.linspace(-1, 1, 41)
    np.testing.assert_allclose(back(xs), series(xs), atol=1e-12)


def test_integral_values():
    assert abs(fit_function(lambda x: np.ones_like(x), 8).integral() - 2) < 1e-14
    assert abs(fit_function(lambda x: x, 8).integral()) < 1e-14
    exp_int = fit_function(np.exp, 32).integral()
    assert abs(exp_int - (np.e - 1 / np.e)) < 1e-12


def test_endpoint_sqrt_integrals():
    one = integral_endpoint_sqrt(lambda m: np.ones_like(m), 0.0, 1.0)
    assert abs(one - 2.0) < 1e-13
    lin = integral_endpoint_sqrt(lambda m: m, 0.0, 1.0)
    assert abs(lin - 2.0 / 3.0) < 1e-13
    ref = quad(lambda m: np.sin(m) / np.sqrt(m), 0, 2, points=[0], limit=100)[0]
    assert abs(integral_endpoint_sqrt(np.sin, 0.0, 2.0) - ref) < 1e-10


def test_cheb_weight_integrals():
    assert abs(integral_cheb_weight(lambda v: np.ones_like(v)) - np.pi) < 1e-13
    assert abs(integral_cheb_weight(lambda v: 2 * v**2 - 1)) < 1e-13
    # int exp(v)/sqrt(1-v^2) dv = pi I_0(1)
    from scipy.special import i0
    assert abs(integral_cheb_weight(np.exp) - np.pi * i0(1.0)) < 1e-10


def test_resolution_error_raised():
    # |x| has a kink: the tail never reaches rounding level
    with pytest.raises(ResolutionError):
        integral_cheb_weight(np.abs, n=32, nmax=128, tol=1e-13)


def test_fit_rejects_bad_input():
    with pytest.raises(ValueError):
        cheb_fit(np.array([1.0, np.nan, 0.0, 0.0, 1.0]))

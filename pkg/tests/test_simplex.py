import numpy as np
import pytest

from kdvwhitham.simplex import simplex_minimize, solve_least_squares


def test_quadratic_1d():
    res = simplex_minimize(lambda p: (p[0] - 1.0) ** 2, [0.0],
                           stop_value=1e-13)
    assert res.converged
    assert res.value < 1e-13
    assert res.point[0] == pytest.approx(1.0, abs=1e-6)


def test_rosenbrock():
    rosen = lambda p: (1 - p[0]) ** 2 + 100 * (p[1] - p[0] ** 2) ** 2
    res = simplex_minimize(rosen, [-1.2, 1.0], step=0.5, tol=1e-12,
                           max_iter=5000)
    assert res.converged
    np.testing.assert_allclose(res.point, [1.0, 1.0], atol=1e-6)


def test_monotone_best_value():
    values = []
    rosen = lambda p: (1 - p[0]) ** 2 + 100 * (p[1] - p[0] ** 2) ** 2

    def tracked(p):
        v = rosen(p)
        values.append(v)
        return v

    simplex_minimize(tracked, [-1.2, 1.0], step=0.5, tol=1e-10, max_iter=2000)
    best = np.minimum.accumulate(values)
    assert np.all(np.diff(best) <= 0)


def test_max_iter_flagged():
    res = simplex_minimize(lambda p: np.sum(p**2), [5.0, 5.0], step=1e-6,
                           stop_value=1e-30, max_iter=5)
    assert not res.converged
    assert res.iterations == 5


def test_least_squares_system():
    z0 = np.exp(0.5) - 1.5

    def residuals(p):
        x, y, z = p
        return np.array([x * y - 0.3, np.exp(x) - 1.5 - z,
                         x + y + z - (1.1 + z0)])

    res = solve_least_squares(residuals, [0.4, 0.7, 0.0], step=0.1,
                              stop_value=1e-26)
    assert res.converged
    np.testing.assert_allclose(res.point, [0.5, 0.6, z0], atol=1e-10)


def test_deterministic():
    def residuals(p):
        return np.array([p[0] ** 2 - 2.0, p[0] + p[1] - 3.0])

    a = solve_least_squares(residuals, [1.0, 1.0], stop_value=1e-26)
    b = solve_least_squares(residuals, [1.0, 1.0], stop_value=1e-26)
    assert np.array_equal(a.point, b.point)
    assert a.iterations == b.iterations


def test_rejects_nonfinite_start():
    with pytest.raises(ValueError):
        simplex_minimize(lambda p: np.inf, [0.0])

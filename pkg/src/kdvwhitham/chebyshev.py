"""Chebyshev collocation: fits, antiderivatives, and weighted quadratures.

A function on [-1, 1] is represented by its coefficients in the Chebyshev
basis, obtained by collocation at the Gauss-Lobatto points x_l = cos(pi*l/N)
through a type-I discrete cosine transform.  On top of the plain fit the
module provides the two weighted integrals that occur throughout the
modulation machinery:

* ``integral_endpoint_sqrt``  --  integral of f(mu)/sqrt(mu - a) over [a, b],
  computed after the substitution mu = a + (b - a)(1 + y)^2 / 4 which removes
  the inverse square root exactly;
* ``integral_cheb_weight``  --  integral of f(nu)/sqrt(1 - nu^2) over
  [-1, 1], which is pi times the zeroth fit coefficient by orthogonality.

Resolution is monitored through the decay of the trailing coefficients: for a
smooth integrand they must reach rounding level, otherwise the number of
polynomials is doubled (up to a cap) and finally a ``ResolutionError`` is
raised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

__all__ = [
    "ChebSeries",
    "ResolutionError",
    "cheb_nodes",
    "cheb_fit",
    "fit_function",
    "integral_endpoint_sqrt",
    "integral_cheb_weight",
]

DEFAULT_N = 128
MAX_N = 1024
TAIL_TOL = 1e-11


class ResolutionError(Exception):
    """Trailing spectral coefficients did not reach the requested level."""


def cheb_nodes(n: int) -> np.ndarray:
    """Collocation points cos(pi*l/n), l = 0..n, ordered from +1 down to -1."""
    return np.cos(np.pi * np.arange(n + 1) / n)


@dataclass(frozen=True)
class ChebSeries:
    """Chebyshev coefficients a_0..a_N of a function on [-1, 1]."""

    coef: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.coef) - 1

    def __call__(self, x):
        """Evaluate by the Clenshaw recurrence (scalar or array argument)."""
        x = np.asarray(x, dtype=float)
        b1 = np.zeros_like(x)
        b2 = np.zeros_like(x)
        for a in self.coef[:0:-1]:
            b1, b2 = a + 2.0 * x * b1 - b2, b1
        return self.coef[0] + x * b1 - b2

    def derivative(self) -> "ChebSeries":
        a = self.coef
        n = self.degree
        if n == 0:
            return ChebSeries(np.zeros(1))
        d = np.zeros(n + 2)
        for k in range(n, 0, -1):
            d[k - 1] = d[k + 1] + 2.0 * k * a[k]
        d[0] *= 0.5
        return ChebSeries(d[:n])

    def antiderivative(self) -> "ChebSeries":
        """Coefficients of F(x) = int_{-1}^x f, with F(-1) = 0.

        b_n = (a_{n-1} - a_{n+1}) / (2n) for 0 < n < N, b_N = a_{N-1} / (2N),
        and b_0 chosen so that F(-1) vanishes.
        """
        a = self.coef
        n = self.degree
        b = np.zeros(n + 1)
        if n >= 1:
            b[1] = (2.0 * a[0] - (a[2] if n >= 2 else 0.0)) / 2.0
        for k in range(2, n):
            b[k] = (a[k - 1] - a[k + 1]) / (2.0 * k)
        if n >= 2:
            b[n] = a[n - 1] / (2.0 * n)
        signs = (-1.0) ** np.arange(1, n + 1)
        b[0] = -np.sum(signs * b[1:])
        return ChebSeries(b)

    def integral(self) -> float:
        """int_{-1}^1 f = 2 * sum of odd antiderivative coefficients."""
        b = self.antiderivative().coef
        return 2.0 * float(np.sum(b[1::2]))

    def tail(self) -> float:
        """Magnitude of the trailing coefficient pair relative to the largest."""
        scale = np.max(np.abs(self.coef))
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(self.coef[-2:])) / scale)


def cheb_fit(samples: np.ndarray) -> ChebSeries:
    """Fit samples taken at cheb_nodes(N), N = len(samples) - 1.

    The coefficients follow from a type-I DCT; evaluation at the nodes
    reproduces the samples to rounding.
    """
    samples = np.asarray(samples, dtype=float)
    n = len(samples) - 1
    if n < 2:
        raise ValueError("need at least 3 samples")
    if not np.all(np.isfinite(samples)):
        raise ValueError("samples must be finite")
    coef = dct(samples, type=1) / n
    coef[0] *= 0.5
    coef[-1] *= 0.5
    return ChebSeries(coef)


def fit_function(f, n: int = DEFAULT_N) -> ChebSeries:
    """Fit a callable at the n+1 collocation points."""
    return cheb_fit(f(cheb_nodes(n)))


def _fit_resolved(f, n0: int, nmax: int, tol: float) -> ChebSeries:
    n = n0
    while True:
        series = fit_function(f, n)
        if series.tail() <= tol:
            return series
        if n >= nmax:
            raise ResolutionError(
                f"tail coefficient {series.tail():.2e} above {tol:.1e} at N={n}"
            )
        n *= 2


def integral_endpoint_sqrt(f, a: float, b: float, n: int = DEFAULT_N,
                           nmax: int = MAX_N, tol: float = TAIL_TOL) -> float:
    """Integral of f(mu)/sqrt(mu - a) over [a, b] for f smooth on (a, b].

    The square-root substitution mu = a + (b - a)(1 + y)^2/4 yields
    sqrt(b - a) * int_{-1}^{1} f(mu(y)) dy with a smooth integrand.
    """
    if not b > a:
        raise ValueError("need a < b")
    span = b - a

    def mapped(y):
        return f(a + span * (1.0 + y) ** 2 / 4.0)

    return np.sqrt(span) * _fit_resolved(mapped, n, nmax, tol).integral()


def integral_cheb_weight(f, n: int = DEFAULT_N, nmax: int = MAX_N,
                         tol: float = TAIL_TOL) -> float:
    """Integral of f(nu)/sqrt(1 - nu^2) over [-1, 1], i.e. pi * a_0 of the fit."""
    return np.pi * _fit_resolved(f, n, nmax, tol).coef[0]

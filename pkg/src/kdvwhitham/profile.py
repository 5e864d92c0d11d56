"""Single-hump initial data and the machinery attached to it.

A profile is a rapidly decaying hump u0(x) with its unique minimum -1 at
x = 0.  Everything downstream needs, besides u0 itself, the two inverse
branches f_-(y) (decreasing part, f_- <= 0) and f_+(y) (increasing part),
their derivatives, and the Euler-Poisson-Darboux kernel

    Phi(xi, eta) = 1/(2 sqrt(2)) * int_{-1}^{1} f_-'((1+mu)/2 xi + (1-mu)/2 eta)
                   / sqrt(1 - mu) dmu,

together with the modified kernel that takes the increasing branch into
account once the lowest Riemann invariant has crossed the bottom of the hump.

``Sech2Profile`` carries closed forms throughout; ``NumericProfile`` builds
the inverses by bracketed bisection with a Newton polish and is the path for
user-supplied data (callable or two-column sample file).

Near y = -1 the inverse derivatives diverge like (1 + y)^(-1/2); the
``*_w`` evaluators expose the smooth combinations obtained by substituting
y = -1 + w^2, which the quadratures use to keep spectral accuracy there.

Profiles are immutable after construction and every evaluator is pure, so
instances may be shared freely across threads or processes.
"""

from __future__ import annotations

import math

import numpy as np

from .chebyshev import cheb_fit, cheb_nodes
from .simplex import simplex_minimize

__all__ = ["Profile", "Sech2Profile", "NumericProfile", "make_profile",
           "CriticalPoint"]

# gradient-catastrophe point of the Hopf flow for -1/cosh^2 x
SECH2_TC = math.sqrt(3.0) / 8.0
SECH2_UC = -2.0 / 3.0
SECH2_XC = -math.sqrt(3.0) / 2.0 + math.log((math.sqrt(3.0) - 1.0) / math.sqrt(2.0))


class CriticalPoint(tuple):
    """(x_c, t_c, u_c) of the first gradient catastrophe."""

    def __new__(cls, x_c, t_c, u_c):
        return super().__new__(cls, (x_c, t_c, u_c))

    x_c = property(lambda self: self[0])
    t_c = property(lambda self: self[1])
    u_c = property(lambda self: self[2])


def _check_y(y):
    y = np.asarray(y, dtype=float)
    if np.any(y <= -1.0) or np.any(y >= 0.0):
        raise ValueError("inverse branches are defined for y in (-1, 0)")
    return y


class Profile:
    """Base class; subclasses must provide u0 and may refine the rest."""

    name = "profile"
    u_min = -1.0
    even_hump = False  # True lets the phase machinery drop f_+ + f_- terms

    # -- forward data ------------------------------------------------------

    def u0(self, x):
        raise NotImplementedError

    def evaluate(self, x):
        """Initial datum u0(x)."""
        return self.u0(x)

    def u0_prime(self, x):
        x = np.asarray(x, dtype=float)
        h = 1e-5
        return (self.u0(x - 2 * h) - 8 * self.u0(x - h)
                + 8 * self.u0(x + h) - self.u0(x + 2 * h)) / (12 * h)

    # -- inverse branches ---------------------------------------------------

    def f_minus(self, y):
        raise NotImplementedError

    def f_plus(self, y):
        raise NotImplementedError

    def inverse(self, y, branch: str):
        if branch == "decreasing":
            return self.f_minus(y)
        if branch == "increasing":
            return self.f_plus(y)
        raise ValueError(f"unknown branch {branch!r}")

    def fp_minus(self, y):
        return 1.0 / self.u0_prime(self.f_minus(y))

    def fp_plus(self, y):
        return 1.0 / self.u0_prime(self.f_plus(y))

    def inverse_derivative(self, y, branch: str):
        _check_y(y)
        if branch == "decreasing":
            return self.fp_minus(y)
        if branch == "increasing":
            return self.fp_plus(y)
        raise ValueError(f"unknown branch {branch!r}")

    def fpp_minus(self, y):
        h = 1e-4
        return (self.fp_minus(y - 2 * h) - 8 * self.fp_minus(y - h)
                + 8 * self.fp_minus(y + h) - self.fp_minus(y + 2 * h)) / (12 * h)

    def fppp_minus(self, y):
        # second derivative of f_-' by the fourth-order central stencil
        h = 1e-3
        return (-self.fp_minus(y + 2 * h) + 16 * self.fp_minus(y + h)
                - 30 * self.fp_minus(y) + 16 * self.fp_minus(y - h)
                - self.fp_minus(y - 2 * h)) / (12 * h * h)

    # -- smooth evaluators near the hump bottom (y = -1 + w^2) --------------

    def _f_w(self, w, branch_fn):
        w = np.asarray(w, dtype=float)
        out = np.zeros_like(w)
        big = w >= 1e-7
        if np.any(big):
            out[big] = branch_fn(-1.0 + w[big] ** 2)
        small = ~big & (w > 0)
        if np.any(small):
            slope = branch_fn(-1.0 + 1e-14) / 1e-7
            out[small] = slope * w[small]
        return out

    def f_minus_w(self, w):
        return self._f_w(w, self.f_minus)

    def f_plus_w(self, w):
        return self._f_w(w, self.f_plus)

    def _fp_2w(self, w, branch_fn):
        # 2 w f'(-1 + w^2) is smooth and even in w; evaluating tiny w at 1e-4
        # keeps the slope of u0 resolvable by finite differences while adding
        # only an O(1e-8) Taylor error
        w = np.asarray(w, dtype=float)
        wsafe = np.maximum(w, 1e-4)
        return 2.0 * wsafe * branch_fn(-1.0 + wsafe**2)

    def fp_minus_2w(self, w):
        """2 w f_-'(-1 + w^2); smooth through w = 0."""
        return self._fp_2w(w, self.fp_minus)

    def fp_plus_2w(self, w):
        return self._fp_2w(w, self.fp_plus)

    # -- EPD kernel ----------------------------------------------------------

    def phi_kernel(self, xi, eta, regime: str = "pre_hump"):
        """Phi(xi, eta); for 'post_hump' the second slot is beta3 and the
        increasing branch contributes per the modified kernel."""
        if regime == "pre_hump":
            return self._phi_pre(xi, eta)
        if regime == "post_hump":
            return self._phi_post(xi, eta)
        raise ValueError(f"unknown regime {regime!r}")

    def _phi_pre(self, xi, eta, n=64):
        # substituting mu = -1 + w^2 keeps the integrand smooth even when an
        # argument sits at the hump bottom
        if np.ndim(xi) > 0:
            return np.array([self._phi_pre(float(v), eta, n) for v in xi])
        if xi == eta:
            return float(self.fp_minus(xi))
        if xi > eta:
            w_lo = math.sqrt(1.0 + eta)
            w_hi = math.sqrt(1.0 + xi)
            th_lo = math.asin(min(w_lo / w_hi, 1.0))
            theta = th_lo + (0.5 * math.pi - th_lo) * 0.5 * (1.0 + cheb_nodes(n))
            vals = self.fp_minus_2w(w_hi * np.sin(theta))
            integral = 0.5 * (0.5 * math.pi - th_lo) * _integral_of_samples(vals)
            return integral / (2.0 * math.sqrt(xi - eta))
        w_lo = math.sqrt(1.0 + xi)
        vmax = math.sqrt(eta - xi)
        v = vmax * 0.5 * (1.0 + cheb_nodes(n))
        vals = 2.0 * self.fp_minus(-1.0 + w_lo**2 + v**2)
        integral = 0.5 * vmax * _integral_of_samples(vals)
        return integral / (2.0 * math.sqrt(eta - xi))

    def phi_xi(self, xi, eta, n=64):
        """d Phi / d xi of the pre-hump kernel."""
        y = cheb_nodes(n)
        mu = 1.0 - (1.0 + y) ** 2 / 2.0
        x_arg = 0.5 * (1.0 + mu) * xi + 0.5 * (1.0 - mu) * eta
        vals = self.fpp_minus(x_arg) * 0.5 * (1.0 + mu)
        return 0.5 * _integral_of_samples(vals)

    def _phi_post(self, lam, b3, n=64):
        if np.ndim(lam) > 0:
            return np.array([self._phi_post(float(v), b3, n) for v in lam])
        if not (-1.0 < b3 < lam < 0.0):
            raise ValueError("post-hump kernel needs -1 < beta3 < lambda < 0")
        W = math.sqrt(1.0 + lam)
        W3 = math.sqrt(1.0 + b3)
        # int_{-1}^{lam} f_-' / sqrt(lam - y) dy
        theta = 0.25 * math.pi * (1.0 + cheb_nodes(n))
        i_minus = 0.25 * math.pi * _integral_of_samples(
            self.fp_minus_2w(W * np.sin(theta)))
        # int_{beta3}^{-1} f_+' / sqrt(lam - y) dy
        wgrid = W3 * np.sin(theta)
        vals = self.fp_plus_2w(wgrid) * W3 * np.cos(theta) / np.sqrt(W**2 - wgrid**2)
        i_plus = -0.25 * math.pi * _integral_of_samples(vals)
        return (i_plus + i_minus) / (2.0 * math.sqrt(lam - b3))

    def phi_post_sqrt_limit(self, b3, n=64):
        """Limit of sqrt(lam - b3) * Phi_post(lam, b3) as lam -> b3."""
        W3 = math.sqrt(1.0 + b3)
        theta = 0.25 * math.pi * (1.0 + cheb_nodes(n))
        w = W3 * np.sin(theta)
        vals = self.fp_minus_2w(w) - self.fp_plus_2w(w)
        return 0.5 * 0.25 * math.pi * _integral_of_samples(vals)

    # -- critical point -------------------------------------------------------

    def critical_point(self) -> CriticalPoint:
        """Gradient-catastrophe point by minimizing -1/(6 u0') numerically."""

        def objective(p):
            slope = self.u0_prime(p[0])
            if slope >= 0.0:
                return np.inf
            return -1.0 / (6.0 * slope)

        res = simplex_minimize(objective, [-1.0], step=0.3, tol=1e-12,
                               max_iter=400)
        if not res.converged:
            raise RuntimeError("critical-point search did not converge")
        xi = res.point[0]
        # the minimizer satisfies u0'' = 0; polishing that root is much better
        # conditioned than the flat minimum the simplex stops on
        h = 1e-3

        def upp(x):
            return (-self.u0(x + 2 * h) + 16 * self.u0(x + h) - 30 * self.u0(x)
                    + 16 * self.u0(x - h) - self.u0(x - 2 * h)) / (12 * h * h)

        a, b = xi - 0.01, xi + 0.01
        fa, fb = upp(a), upp(b)
        if fa * fb < 0.0:
            for _ in range(60):
                mid = 0.5 * (a + b)
                fm = upp(mid)
                if fa * fm <= 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            xi = 0.5 * (a + b)
        t_c = objective([xi])
        u_c = float(self.u0(xi))
        return CriticalPoint(6.0 * t_c * u_c + xi, t_c, u_c)


def _integral_of_samples(vals):
    return cheb_fit(vals).integral()


class Sech2Profile(Profile):
    """u0(x) = -1/cosh^2(x) with closed-form inverses and kernels."""

    name = "sech2"
    even_hump = True

    def u0(self, x):
        return -1.0 / np.cosh(np.asarray(x, dtype=float)) ** 2

    def u0_prime(self, x):
        x = np.asarray(x, dtype=float)
        return 2.0 * np.tanh(x) / np.cosh(x) ** 2

    def f_plus(self, y):
        y = _check_y(y)
        return np.log1p(np.sqrt(1.0 + y)) - 0.5 * np.log(-y)

    def f_minus(self, y):
        return -self.f_plus(y)

    def fp_minus(self, y):
        y = np.asarray(y, dtype=float)
        return 1.0 / (2.0 * y * np.sqrt(1.0 + y))

    def fp_plus(self, y):
        return -self.fp_minus(y)

    def fpp_minus(self, y):
        y = np.asarray(y, dtype=float)
        return -(3.0 * y + 2.0) / (4.0 * y**2 * (1.0 + y) ** 1.5)

    def fppp_minus_exact(self, y):
        y = np.asarray(y, dtype=float)
        s = np.sqrt(1.0 + y)
        return 1.0 / (y**3 * s) + 0.5 / (y**2 * s**3) + 0.375 / (y * s**5)

    def f_minus_w(self, w):
        return -np.arctanh(np.asarray(w, dtype=float))

    def f_plus_w(self, w):
        return np.arctanh(np.asarray(w, dtype=float))

    def fp_minus_2w(self, w):
        w = np.asarray(w, dtype=float)
        return -1.0 / (1.0 - w**2)

    def fp_plus_2w(self, w):
        w = np.asarray(w, dtype=float)
        return 1.0 / (1.0 - w**2)

    def _phi_pre(self, xi, eta, n=64):
        xi_arr = np.asarray(xi, dtype=float)
        scalar = xi_arr.ndim == 0
        xi_arr = np.atleast_1d(xi_arr)
        out = np.empty_like(xi_arr)
        gt = xi_arr > eta
        lt = xi_arr < eta
        eq = ~(gt | lt)
        if np.any(gt):
            x = xi_arr[gt]
            arg = np.sqrt(np.minimum((x - eta) / ((-eta) * (1.0 + x)), 1.0))
            out[gt] = -np.arcsin(arg) / (2.0 * np.sqrt((-x) * (x - eta)))
        if np.any(lt):
            x = xi_arr[lt]
            arg = np.sqrt((eta - x) / ((-x) * (1.0 + eta)))
            out[lt] = -np.arctanh(arg) / (2.0 * np.sqrt((-x) * (eta - x)))
        if np.any(eq):
            out[eq] = self.fp_minus(xi_arr[eq])
        return float(out[0]) if scalar else out

    def _phi_post(self, lam, b3, n=64):
        lam_arr = np.atleast_1d(np.asarray(lam, dtype=float))
        if not (-1.0 < b3) or np.any(lam_arr <= b3) or np.any(lam_arr >= 0.0):
            raise ValueError("post-hump kernel needs -1 < beta3 < lambda < 0")
        num = 0.5 * math.pi + np.arctan2(np.sqrt((-lam_arr) * (1.0 + b3)),
                                         np.sqrt(lam_arr - b3))
        out = -num / (2.0 * np.sqrt((lam_arr - b3) * (-lam_arr)))
        return float(out[0]) if np.ndim(lam) == 0 else out

    def phi_post_sqrt_limit(self, b3, n=64):
        return -math.pi / (2.0 * math.sqrt(-b3))

    def critical_point(self) -> CriticalPoint:
        return CriticalPoint(SECH2_XC, SECH2_TC, SECH2_UC)

    def critical_point_numeric(self) -> CriticalPoint:
        return Profile.critical_point(self)


class NumericProfile(Profile):
    """Profile built from a u0 callable; inverses by bisection + Newton.

    The callable must have its unique minimum -1 at x = 0 and decay to 0 for
    large |x|.
    """

    name = "numeric"

    def __init__(self, u0_callable, half_width: float = 1.0, name: str = "numeric"):
        self._u0 = u0_callable
        self.half_width = half_width
        self.name = name
        bottom = float(np.asarray(u0_callable(0.0)))
        if abs(bottom + 1.0) > 1e-10:
            raise ValueError(f"u0(0) must be -1, got {bottom}")

    def u0(self, x):
        return np.asarray(self._u0(np.asarray(x, dtype=float)), dtype=float)

    def _invert_scalar(self, y: float, sign: float) -> float:
        # expand the bracket away from the hump until u0 crosses y
        lo, hi = 0.0, sign * self.half_width
        for _ in range(60):
            if float(self.u0(hi)) > y:
                break
            hi *= 2.0
            if abs(hi) > 1e4:
                raise RuntimeError("failed to bracket the inverse")
        else:
            raise RuntimeError("failed to bracket the inverse")
        a, b = (hi, lo) if sign < 0 else (lo, hi)
        # u0 - y changes sign on [a, b]; bisect then polish
        fa = float(self.u0(a)) - y
        for _ in range(90):
            mid = 0.5 * (a + b)
            fm = float(self.u0(mid)) - y
            if fa * fm <= 0.0:
                b = mid
            else:
                a, fa = mid, fm
            if b - a < 1e-15 * max(1.0, abs(a)):
                break
        x = 0.5 * (a + b)
        for _ in range(2):
            slope = float(self.u0_prime(x))
            if slope == 0.0:
                break
            step = (float(self.u0(x)) - y) / slope
            if abs(step) > 0.1:
                break
            x -= step
        if abs(float(self.u0(x)) - y) > 1e-8:
            raise RuntimeError(f"inverse did not converge at y={y}")
        return x

    def f_minus(self, y):
        y = _check_y(y)
        if y.ndim == 0:
            return self._invert_scalar(float(y), -1.0)
        return np.array([self._invert_scalar(v, -1.0) for v in y.ravel()]).reshape(y.shape)

    def f_plus(self, y):
        y = _check_y(y)
        if y.ndim == 0:
            return self._invert_scalar(float(y), +1.0)
        return np.array([self._invert_scalar(v, +1.0) for v in y.ravel()]).reshape(y.shape)


def tabulated_profile(path: str) -> NumericProfile:
    """Profile from a two-column (x, u0) text file with strictly increasing x."""
    from scipy.interpolate import CubicSpline

    data = np.loadtxt(path)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("expected a two-column numeric file")
    x, u = data[:, 0], data[:, 1]
    if np.any(np.diff(x) <= 0.0):
        raise ValueError("x samples must be strictly increasing")
    spline = CubicSpline(x, u)

    def u0(xq):
        xq = np.asarray(xq, dtype=float)
        out = np.where((xq >= x[0]) & (xq <= x[-1]), spline(xq), 0.0)
        return out

    width = 0.25 * (x[-1] - x[0])
    return NumericProfile(u0, half_width=width, name="tabulated")


def make_profile(selector: str) -> Profile:
    """Profile by name ('sech2') or by path to a tabulated sample file."""
    if selector == "sech2":
        return Sech2Profile()
    return tabulated_profile(selector)

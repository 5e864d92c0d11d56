"""Independent evaluation of the modulation phase from scattering data.

The WKB action integrals of the Schroedinger operator with potential -u0,

    rho(lam) = sqrt(-lam) x_+(lam)
               + int_{x_+}^{inf} [sqrt(-lam) - sqrt(u0(y) - lam)] dy,
    tau(lam) = int_{x_-}^{x_+} sqrt(lam - u0(y)) dy,

are computed by adaptive quadrature straight from the initial datum (no
inverse-branch machinery), and the phase is assembled as

    phi = [ -int_{(b1,0)} rho/sqrt|R| + int_{(b3,b2)} rho/sqrt|R|
            - int_{(b2,b1)} tau/sqrt|R|
            + int_{(-1,b3)} tau/sqrt|R|   (this term before the hump time) ]
          / pi,

R(lam) = (lam-b1)(lam-b2)(lam-b3).  The sign pattern is the analytic
continuation of 1/sqrt(R) along the real axis (a factor -i per simple root).
Everything here goes through scipy's adaptive quadrature with algebraic
endpoint weights, so the whole path is independent of the Chebyshev
machinery used by the production phase function.
"""

import numpy as np
from scipy.integrate import quad

_QUAD = dict(limit=200, epsabs=1e-12, epsrel=1e-11)


def rho(profile, lam: float) -> float:
    c = np.sqrt(-lam)
    x_plus = float(profile.f_plus(lam))

    def integrand(v):  # y = x_+ + v^2 resolves the turning-point kink
        y = x_plus + v * v
        inner = max(float(profile.u0(y)) - lam, 0.0)
        return (c - np.sqrt(inner)) * 2.0 * v

    tail, _ = quad(integrand, 0.0, np.sqrt(45.0), **_QUAD)
    return c * x_plus + tail


def tau(profile, lam: float) -> float:
    x_minus = float(profile.f_minus(lam))
    x_plus = float(profile.f_plus(lam))
    mid, half = 0.5 * (x_minus + x_plus), 0.5 * (x_plus - x_minus)

    def integrand(theta):  # y = mid + half sin(theta) resolves both ends
        y = mid + half * np.sin(theta)
        inner = max(lam - float(profile.u0(y)), 0.0)
        return np.sqrt(inner) * half * np.cos(theta)

    val, _ = quad(integrand, -np.pi / 2, np.pi / 2, **_QUAD)
    return val


def phi(profile, b1: float, b2: float, b3: float, regime: str) -> float:
    """Phase from scattering data; regime selects the pre/post-hump set."""
    i1, _ = quad(lambda l: rho(profile, l) / np.sqrt((l - b2) * (l - b3)),
                 b1, 0.0, weight="alg", wvar=(-0.5, 0.0), **_QUAD)
    i2, _ = quad(lambda l: rho(profile, l) / np.sqrt(b1 - l),
                 b3, b2, weight="alg", wvar=(-0.5, -0.5), **_QUAD)
    gap, _ = quad(lambda l: tau(profile, l) / np.sqrt(l - b3),
                  b2, b1, weight="alg", wvar=(-0.5, -0.5), **_QUAD)
    total = -i1 + i2 - gap
    if regime == "pre_hump":
        low, _ = quad(lambda l: tau(profile, l) / np.sqrt((b1 - l) * (b2 - l)),
                      -1.0, b3, weight="alg", wvar=(0.0, -0.5), **_QUAD)
        total += low
    elif regime != "post_hump":
        raise ValueError(f"unknown regime {regime!r}")
    return total / np.pi

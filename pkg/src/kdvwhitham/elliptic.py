"""Complete elliptic integrals, Jacobi elliptic functions, and the theta series.

``elliptic_KE`` takes the *parameter* m (the squared modulus, here always
(beta2 - beta3)/(beta1 - beta3)) and evaluates K and E by the arithmetic-
geometric mean to near machine precision.  The difference K - E is also
returned as a cancellation-free positive sum, which the modulation speeds
need when m is tiny.

``jacobi_sncndn`` evaluates sn, cn, dn for real argument and modulus k
through the AGM phase recursion (descending Landen), with the degenerate
trigonometric (k = 0) and hyperbolic (k = 1) limits handled exactly.

``theta3`` sums the Fourier series

    theta(z; T) = sum_n exp(pi i n^2 T + 2 pi i n z)

symmetrically for purely imaginary T = i*t, t > 0; the result is real for
real z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EllipticPair",
    "ThetaConvergenceError",
    "elliptic_KE",
    "jacobi_sncndn",
    "dn_sq_grid",
    "theta3",
    "theta3_with_derivatives",
]

_AGM_ITMAX = 24


class ThetaConvergenceError(Exception):
    """Theta series cannot meet the tolerance within the term cap."""


@dataclass(frozen=True)
class EllipticPair:
    """K(m) and E(m) for parameter m = s^2 in [0, 1).

    ``k_minus_e`` stores K - E evaluated as a positive sum so that callers
    dividing by it keep full relative precision for m near 0.
    """

    K: float
    E: float
    m: float
    k_minus_e: float


def elliptic_KE(m: float) -> EllipticPair:
    """Complete elliptic integrals by AGM iteration; domain 0 <= m < 1."""
    if not 0.0 <= m < 1.0:
        raise ValueError(f"parameter m must lie in [0, 1), got {m}")
    a, b = 1.0, math.sqrt(1.0 - m)
    csum = 0.5 * m  # 2^{-1} c_0^2 with c_0^2 = m
    pow2 = 1.0
    for _ in range(_AGM_ITMAX):
        c = 0.5 * (a - b)
        if c == 0.0 or abs(c) < 1e-18 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        pow2 *= 2.0
        csum += 0.5 * pow2 * c * c
    K = math.pi / (2.0 * a)
    k_minus_e = K * csum
    return EllipticPair(K=K, E=K - k_minus_e, m=m, k_minus_e=k_minus_e)


def _agm_phase_tables(k):
    """Forward AGM scales a_n and ratios c_n/a_n for modulus array k."""
    a = np.ones_like(k)
    b = np.sqrt(1.0 - k * k)
    ratios = []
    for _ in range(12):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        ratios.append(c / a)
    return a, ratios


def _sncndn_core(z, k):
    z = np.asarray(z, dtype=float)
    k = np.asarray(k, dtype=float)
    a_final, ratios = _agm_phase_tables(k)
    phi = (2.0 ** len(ratios)) * a_final * z
    phi_prev = phi
    for r in reversed(ratios):
        phi_prev = phi
        phi = 0.5 * (phi + np.arcsin(np.clip(r * np.sin(phi), -1.0, 1.0)))
    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = cn / np.cos(phi_prev - phi)
    return sn, cn, dn


def jacobi_sncndn(z: float, k: float):
    """Jacobi sn, cn, dn of real argument z and modulus k in [0, 1].

    k = 0 returns (sin z, cos z, 1); k = 1 returns (tanh z, sech z, sech z).
    """
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"modulus k must lie in [0, 1], got {k}")
    if k == 0.0:
        return math.sin(z), math.cos(z), 1.0
    if k == 1.0:
        sech = 1.0 / math.cosh(z)
        return math.tanh(z), sech, sech
    sn, cn, dn = _sncndn_core(z, k)
    return float(sn), float(cn), float(dn)


def dn_sq_grid(z: np.ndarray, m: np.ndarray) -> np.ndarray:
    """dn(z, k)^2 for arrays of arguments and parameters m = k^2.

    Vectorized companion to ``jacobi_sncndn`` for sampling modulated
    wavetrains; m may vary per point.
    """
    z = np.asarray(z, dtype=float)
    m = np.asarray(m, dtype=float)
    k = np.sqrt(np.clip(m, 0.0, 1.0))
    near_one = k >= 1.0 - 1e-15
    _, _, dn = _sncndn_core(z, np.where(near_one, 0.5, k))
    dnsq = dn * dn
    if np.any(near_one):
        sech = 1.0 / np.cosh(z)
        dnsq = np.where(near_one, sech * sech, dnsq)
    return dnsq


def _theta_nmax(t: float, tol: float, extra_weight: float) -> int:
    # need extra_weight * exp(-pi t n^2) < tol
    target = math.log(max(extra_weight, 1.0) / tol)
    return int(math.sqrt(target / (math.pi * t))) + 2


def theta3_with_derivatives(z, tau: complex, tol: float = 1e-15):
    """Theta series and its first two z-derivatives for purely imaginary tau.

    Returns (theta, theta_z, theta_zz) as real arrays matching z.
    """
    t = complex(tau).imag
    if t <= 0.0:
        raise ValueError("need Im(tau) > 0")
    if abs(complex(tau).real) > 1e-13:
        raise ValueError("only purely imaginary tau is supported")
    if t < 1e-3:
        raise ThetaConvergenceError(
            f"Im(tau) = {t:.2e} below 1e-3; series too flat to truncate"
        )
    z = np.asarray(z, dtype=float)
    nmax = _theta_nmax(t, tol, extra_weight=(2.0 * math.pi) ** 2)
    if nmax > 100_000:
        raise ThetaConvergenceError(f"term cap exceeded (needs {nmax} terms)")
    n = np.arange(1, nmax + 1)
    qpow = np.exp(-math.pi * t * n * n)
    ang = 2.0 * math.pi * np.multiply.outer(z, n)
    cos_ = np.cos(ang)
    sin_ = np.sin(ang)
    th = 1.0 + 2.0 * cos_ @ qpow
    th_z = -4.0 * math.pi * (sin_ @ (n * qpow))
    th_zz = -8.0 * math.pi**2 * (cos_ @ (n * n * qpow))
    return th, th_z, th_zz


def theta3(z, tau: complex, tol: float = 1e-15):
    """theta(z; tau) = sum_n exp(pi i n^2 tau + 2 pi i n z), tau = i*t."""
    th, _, _ = theta3_with_derivatives(z, tau, tol)
    if np.ndim(z) == 0:
        return float(th)
    return th

"""Quantitative comparison of the KdV solution with its asymptotic form.

The difference field is taken on the solver grid (the asymptotic composite
is evaluated there directly, so no resampling error enters).  From it come

* the oscillatory-zone boundaries x_hopf^-/+ where the difference first
  exceeds a threshold (1e-4, the working accuracy of the solver runs),
* the relative zone widenings Delta^- = x_hopf^-/x^- - 1 and
  Delta^+ = 1 - x_hopf^+/x^+,
* err_mid (maximum difference in a window of half-width 5% of the zone
  around its midpoint), the near-edge maxima inside the zone, and the
  maxima outside the zone on either side.

Scaling exponents in eps come from least-squares lines on the log-log data
with the standard errors and the correlation coefficient of the fit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ScalingFit", "DiffField", "ErrorMetrics", "linreg",
           "build_diff", "zone_boundary", "error_metrics", "resample"]


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    sigma_slope: float
    sigma_intercept: float
    r: float
    n_points: int


def linreg(z, y) -> ScalingFit:
    """Least-squares line y = slope * z + intercept with standard errors.

    s_zz = sum (z - zbar)^2, s_zy = sum (z - zbar)(y - ybar); the slope is
    s_zy/s_zz, sigma^2 = (s_yy - slope * s_zy)/(M - 2), and
    sigma_slope = sigma/sqrt(s_zz),
    sigma_intercept = sigma * sqrt(1/M + zbar^2/s_zz).
    """
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(z)
    if n < 3:
        raise ValueError("need at least 3 points")
    zbar, ybar = z.mean(), y.mean()
    dz, dy = z - zbar, y - ybar
    s_zz = float(dz @ dz)
    if s_zz == 0.0:
        raise ValueError("degenerate abscissae")
    s_zy = float(dz @ dy)
    s_yy = float(dy @ dy)
    slope = s_zy / s_zz
    intercept = ybar - slope * zbar
    sigma_sq = max(s_yy - slope * s_zy, 0.0) / (n - 2)
    sigma = math.sqrt(sigma_sq)
    denom = math.sqrt(s_zz * s_yy)
    r = s_zy / denom if denom > 0.0 else 0.0
    return ScalingFit(slope=slope, intercept=intercept,
                      sigma_slope=sigma / math.sqrt(s_zz),
                      sigma_intercept=sigma * math.sqrt(1.0 / n + zbar**2 / s_zz),
                      r=r, n_points=n)


@dataclass
class DiffField:
    """u_kdv - u_asymptotic on the solver grid at one (eps, t)."""

    x: np.ndarray
    diff: np.ndarray
    region: np.ndarray
    t: float
    eps: float
    x_minus: float
    x_plus: float


def build_diff(x, u_kdv, composite, eps) -> DiffField:
    u_app, region = composite.sample(x, eps)
    return DiffField(x=np.asarray(x, dtype=float),
                     diff=np.asarray(u_kdv, dtype=float) - u_app,
                     region=region, t=composite.t, eps=eps,
                     x_minus=composite.x_minus, x_plus=composite.x_plus)


def zone_boundary(field: DiffField, side: str, threshold: float = 1e-4):
    """Outermost x beyond which |diff| stays below the threshold.

    Returns (x_boundary, hit); hit is False when the threshold is never
    exceeded on that side, in which case the zone edge itself is returned.
    """
    mid = 0.5 * (field.x_minus + field.x_plus)
    big = np.abs(field.diff) >= threshold
    if side == "left":
        sel = field.x < mid
        idx = np.where(big & sel)[0]
        if len(idx) == 0:
            return field.x_minus, False
        return float(field.x[idx[0]]), True
    if side == "right":
        sel = field.x > mid
        idx = np.where(big & sel)[0]
        if len(idx) == 0:
            return field.x_plus, False
        return float(field.x[idx[-1]]), True
    raise ValueError(f"unknown side {side!r}")


@dataclass(frozen=True)
class ErrorMetrics:
    err_mid: float
    err_edge_minus: float
    err_edge_plus: float
    err_hopf_minus: float
    err_hopf_plus: float
    x_err_hopf_plus: float   # location of the outer-right maximum
    mid_window: float


def error_metrics(field: DiffField, wavelength_minus: float,
                  wavelength_plus: float) -> ErrorMetrics:
    """Difference maxima in the interior window, near-edge bands, and outside.

    The interior window has half-width 5% of the zone around the midpoint;
    the near-edge bands extend one envelope wavelength inward from each edge.
    """
    x, d = field.x, np.abs(field.diff)
    xm, xp = field.x_minus, field.x_plus
    width = xp - xm
    mid = 0.5 * (xm + xp)
    win = 0.05 * width

    def window_max(lo, hi):
        sel = (x >= lo) & (x <= hi)
        if not np.any(sel):
            raise ValueError(f"no grid points in window [{lo}, {hi}]")
        return float(np.max(d[sel]))

    err_mid = window_max(mid - win, mid + win)
    err_edge_minus = window_max(xm, xm + wavelength_minus)
    err_edge_plus = window_max(xp - wavelength_plus, xp)
    left = x < xm
    right = x > xp
    err_hopf_minus = float(np.max(d[left])) if np.any(left) else 0.0
    if np.any(right):
        err_hopf_plus = float(np.max(d[right]))
        x_loc = float(x[right][np.argmax(d[right])])
    else:
        err_hopf_plus, x_loc = 0.0, xp
    return ErrorMetrics(err_mid=err_mid, err_edge_minus=err_edge_minus,
                        err_edge_plus=err_edge_plus,
                        err_hopf_minus=err_hopf_minus,
                        err_hopf_plus=err_hopf_plus,
                        x_err_hopf_plus=x_loc, mid_window=win)


def resample(x_src, y_src, x_dst):
    """Cubic-spline resampling (exact on cubic polynomials)."""
    from scipy.interpolate import CubicSpline
    return CubicSpline(np.asarray(x_src, dtype=float),
                       np.asarray(y_src, dtype=float))(np.asarray(x_dst,
                                                                  dtype=float))

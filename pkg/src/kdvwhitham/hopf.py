"""Implicit solution of the Hopf equation u_t + 6 u u_x = 0.

Characteristics give u(x, t) = u0(xi) with x = 6 t u0(xi) + xi.  For fixed
(x, t) the label xi is found by minimizing the squared residual of the
characteristic relation with the simplex search; along a grid the previous
label seeds the next solve, which stays reliable right up to the boundary of
the multivalued region.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simplex import simplex_minimize

__all__ = ["HopfSample", "solve_at", "solve_branch"]

PRECISION_RESIDUAL = 1e-12
EXPLORATORY_RESIDUAL = 1e-6


@dataclass(frozen=True)
class HopfSample:
    x: float
    t: float
    xi: float
    u: float


def _residual(profile, x, t, xi):
    return x - 6.0 * t * float(profile.u0(xi)) - xi


def solve_at(profile, x: float, t: float, xi_start: float | None = None,
             precision: bool = True) -> HopfSample:
    """Characteristic label at one point; seeded with xi = x by default."""
    if xi_start is None:
        xi_start = x
    target = PRECISION_RESIDUAL if precision else EXPLORATORY_RESIDUAL

    def objective(p):
        r = _residual(profile, x, t, p[0])
        return r * r

    scale = max(1e-6, min(0.1, abs(x - xi_start) + 1e-3))
    res = simplex_minimize(objective, [xi_start], step=scale,
                           stop_value=target * target, max_iter=800)
    if not res.converged:
        res = simplex_minimize(objective, res.point, step=1e-7,
                               stop_value=target * target, max_iter=800)
    if res.value > target * target:
        raise RuntimeError(
            f"characteristic solve stalled at (x={x}, t={t}); "
            f"last residual {np.sqrt(res.value):.2e}")
    xi = float(res.point[0])
    return HopfSample(x=x, t=t, xi=xi, u=float(profile.u0(xi)))


def solve_branch(profile, x_grid, t: float, side: str = "left_of_zone",
                 precision: bool = True) -> list[HopfSample]:
    """Continuation along a grid ordered toward the oscillatory zone.

    For the left branch the grid ascends toward x^-; for the right branch it
    descends toward x^+.  Each solve is seeded with the previous label, so
    the correct single-valued branch is tracked even very close to the zone.
    """
    x_grid = np.asarray(x_grid, dtype=float)
    if side == "left_of_zone":
        ordered = np.sort(x_grid)
    elif side == "right_of_zone":
        ordered = np.sort(x_grid)[::-1]
    else:
        raise ValueError(f"unknown side {side!r}")
    samples = []
    xi = None
    for i, x in enumerate(ordered):
        try:
            samples.append(solve_at(profile, float(x), t, xi_start=xi,
                                    precision=precision))
        except RuntimeError as exc:
            raise RuntimeError(f"continuation failed at grid point {i} "
                               f"(x={x}): {exc}") from exc
        xi = samples[-1].xi
    if side == "right_of_zone":
        samples.reverse()
    return samples

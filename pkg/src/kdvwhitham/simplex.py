"""Nelder-Mead simplex minimization for the implicit-equation solves.

Hodograph points, edge systems, and the Hopf characteristic equation are all
reduced to minimizing a sum of squared residuals; the simplex search needs no
derivatives and, seeded by continuation from a neighbouring solution,
converges quickly.  Coefficients are the standard reflection 1, expansion 2,
contraction 1/2, shrink 1/2.  Iteration stops when the best objective value
drops below ``stop_value`` or the simplex diameter falls below ``tol``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SimplexResult", "simplex_minimize", "solve_least_squares"]


@dataclass
class SimplexResult:
    point: np.ndarray
    value: float
    iterations: int
    converged: bool


def _initial_simplex(start: np.ndarray, step) -> np.ndarray:
    n = len(start)
    step = np.broadcast_to(np.asarray(step, dtype=float), (n,))
    simplex = np.tile(start, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += step[i] if step[i] != 0.0 else 1e-4
    return simplex


def simplex_minimize(objective, start, step=0.05, stop_value=None,
                     tol: float = 1e-14, max_iter: int = 2000) -> SimplexResult:
    """Minimize ``objective`` from ``start``; deterministic for fixed inputs.

    Parameters
    ----------
    objective : callable mapping a 1-d point to a finite float
    start : initial point (scalar or 1-d array)
    step : initial simplex edge lengths (scalar or per-coordinate)
    stop_value : succeed as soon as the best value drops below this
    tol : succeed when the simplex diameter drops below this
    max_iter : iteration cap; exceeding it returns converged=False
    """
    start = np.atleast_1d(np.asarray(start, dtype=float))
    n = len(start)
    simplex = _initial_simplex(start, step)
    values = np.array([objective(p) for p in simplex])
    if not np.all(np.isfinite(values)):
        raise ValueError("objective not finite on the initial simplex")

    iterations = 0
    converged = False
    while iterations < max_iter:
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        if stop_value is not None and values[0] < stop_value:
            converged = True
            break
        diameter = np.max(np.abs(simplex[1:] - simplex[0]))
        if diameter < tol:
            converged = stop_value is None
            break
        iterations += 1

        centroid = np.mean(simplex[:-1], axis=0)
        reflected = centroid + (centroid - simplex[-1])
        f_r = objective(reflected)
        if f_r < values[0]:
            expanded = centroid + 2.0 * (centroid - simplex[-1])
            f_e = objective(expanded)
            if f_e < f_r:
                simplex[-1], values[-1] = expanded, f_e
            else:
                simplex[-1], values[-1] = reflected, f_r
            continue
        if f_r < values[-2]:
            simplex[-1], values[-1] = reflected, f_r
            continue
        if f_r < values[-1]:
            contracted = centroid + 0.5 * (reflected - centroid)
        else:
            contracted = centroid + 0.5 * (simplex[-1] - centroid)
        f_c = objective(contracted)
        if f_c < min(f_r, values[-1]):
            simplex[-1], values[-1] = contracted, f_c
            continue
        # shrink toward the best vertex
        simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
        values[1:] = [objective(p) for p in simplex[1:]]

    order = np.argsort(values, kind="stable")
    best = order[0]
    point = simplex[best] if n > 1 else simplex[best]
    return SimplexResult(point=point.copy(), value=float(values[best]),
                         iterations=iterations, converged=converged)


def solve_least_squares(residuals, start, step=1e-3, stop_value=1e-24,
                        max_iter: int = 4000, restarts: int = 4) -> SimplexResult:
    """Drive the summed squared residuals of a system below ``stop_value``.

    Runs the simplex search and, if it stalls above the target, restarts it
    around the best point with a shrunken initial simplex.  Returns the best
    result found; ``converged`` reflects whether the target was met.
    """

    def objective(p):
        r = np.atleast_1d(residuals(p))
        return float(np.dot(r, r))

    start = np.atleast_1d(np.asarray(start, dtype=float))
    step = np.broadcast_to(np.asarray(step, dtype=float), start.shape).copy()
    best = None
    for attempt in range(restarts + 1):
        res = simplex_minimize(objective, start, step=step,
                               stop_value=stop_value, max_iter=max_iter)
        if best is None or res.value < best.value:
            best = res
        if res.value < stop_value:
            break
        start = res.point
        step = np.maximum(np.abs(step) * 0.05, 1e-9)
    return best

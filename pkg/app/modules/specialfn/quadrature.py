from __future__ import annotations

import logging
import math
from typing import Callable, List

import mpmath
import numpy as np

from ..common.errors import QuadratureNotConverged

logger = logging.getLogger(__name__)

PEAK_FRACTION = 1e-18
MAX_RADIUS = 1e4


def truncation_radius(fn: Callable[[float], float], fraction: float = PEAK_FRACTION) -> List[float]:
    """Breakpoints [0, peak, radius] where |fn| has fallen below fraction * peak."""
    grid = np.geomspace(1e-3, MAX_RADIUS, 400)
    values = np.array([abs(fn(float(r))) for r in grid])
    values[~np.isfinite(values)] = 0.0
    peak_index = int(np.argmax(values))
    peak = values[peak_index]
    if peak == 0.0:
        return [0.0, 1.0]
    below = np.nonzero(values[peak_index:] < fraction * peak)[0]
    if below.size == 0:
        return [0.0, float(grid[peak_index]), MAX_RADIUS]
    radius = float(grid[peak_index + below[0]])
    return [0.0, float(grid[peak_index]), radius]


def quad_semi_infinite(
    fn: Callable[[float], float],
    tol: float = 1e-10,
    rel_tol: float | None = None,
    min_degree: int = 4,
    max_degree: int = 10,
) -> float:
    """Integrate fn over (0, inf) with tanh-sinh quadrature.

    The range is cut where the integrand drops below 1e-18 of its peak.
    Levels are refined until two successive estimates agree to ``tol``
    (or ``rel_tol`` times the estimate, whichever is looser).
    """
    points = truncation_radius(fn)

    def integrand(t):
        value = fn(float(t))
        return mpmath.mpf(value) if math.isfinite(value) else mpmath.mpf(0)

    previous: float | None = None
    for degree in range(min_degree, max_degree + 1):
        estimate = float(mpmath.quad(integrand, points, method="tanh-sinh", maxdegree=degree))
        if previous is not None:
            threshold = tol if rel_tol is None else max(tol, rel_tol * abs(estimate))
            if abs(estimate - previous) <= threshold:
                logger.debug("quadrature converged at degree %d over %s", degree, points)
                return estimate
        previous = estimate
    raise QuadratureNotConverged(
        "successive tanh-sinh refinements did not agree",
        tolerance=tol,
        max_degree=max_degree,
        last=previous,
    )

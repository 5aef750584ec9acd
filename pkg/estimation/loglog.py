"""
Log-log least squares: turns (scale, measure) pairs into a dimension estimate.

Natural logarithms are used throughout; the intercept is ln(measure) at
scale 1.
"""

import logging
import math
from typing import List, Sequence

import numpy as np

from data.errors import EstimationError, InputError
from data.estimates import DimensionEstimate, LogLogFit, LogLogPoint

logger = logging.getLogger(__name__)


def fit_loglog(points: Sequence[LogLogPoint]) -> LogLogFit:
    """
    Ordinary least squares fit of ln(measure) against ln(scale).

    Args:
        points: At least two points with distinct scales

    Returns:
        LogLogFit with slope, intercept and coefficient of determination

    Raises:
        EstimationError: If fewer than two points or only one distinct scale
    """
    if len(points) < 2:
        raise EstimationError(f"Need at least 2 points to fit a slope, got {len(points)}", list(points))

    x = np.log(np.array([p.scale for p in points], dtype=np.float64))
    y = np.log(np.array([p.measure for p in points], dtype=np.float64))
    if np.ptp(x) == 0.0:
        raise EstimationError("All points share one scale; the slope is undefined", list(points))

    dy = y - y.mean()
    ss_tot = float(np.dot(dy, dy))
    if ss_tot == 0.0:
        # constant measure: the horizontal line is an exact fit
        return LogLogFit(slope=0.0, intercept=float(y[0]), r_squared=1.0)

    slope, intercept = (float(v) for v in np.polyfit(x, y, 1))
    residuals = y - (slope * x + intercept)
    r_squared = 1.0 - float(np.dot(residuals, residuals)) / ss_tot
    return LogLogFit(slope=slope, intercept=intercept, r_squared=min(1.0, max(0.0, r_squared)))


def estimate_dimension(
    scales: Sequence[float],
    measures: Sequence[float],
    dimension_sign: float = -1.0,
) -> DimensionEstimate:
    """
    Fit measure ~ scale^slope and derive dimension = dimension_sign * slope.

    Points whose measure is exactly zero are dropped and counted in
    excluded_count. Negative or non-finite values are input errors.

    Raises:
        InputError: On non-positive scales or negative/non-finite measures
        EstimationError: If fewer than two points survive the exclusion
    """
    if len(scales) != len(measures):
        raise InputError("scales and measures must have equal length")

    kept: List[LogLogPoint] = []
    excluded = 0
    for scale, measure in zip(scales, measures):
        if not math.isfinite(scale) or scale <= 0:
            raise InputError(f"Scale must be positive and finite, got {scale}")
        if not math.isfinite(measure) or measure < 0:
            raise InputError(f"Measure must be non-negative and finite, got {measure}")
        if measure == 0:
            excluded += 1
            continue
        kept.append(LogLogPoint(scale=float(scale), measure=float(measure)))

    if excluded:
        logger.debug(f"Excluded {excluded} zero-measure points before fitting")
    if len(kept) < 2:
        raise EstimationError(
            f"Only {len(kept)} positive measurements remain after excluding {excluded} zero-measure points",
            kept,
        )

    fit = fit_loglog(kept)
    return DimensionEstimate(
        dimension=dimension_sign * fit.slope + 0.0,
        slope=fit.slope,
        intercept=fit.intercept,
        r_squared=fit.r_squared,
        points=kept,
        excluded_count=excluded,
    )

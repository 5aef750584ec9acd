"""
Higuchi fractal dimension of a time series.

The curve length at scale k follows Higuchi's 1-based definition: for each
start m = 1..k, with n_m = floor((N - m) / k),

    L_m(k) = [sum_{i=1..n_m} |X(m + i k) - X(m + (i - 1) k)|] * (N - 1) / (n_m k) / k

and L(k) is the mean of L_m(k) over m. Internally X(j) is samples[j - 1],
so the subseries for start m is samples[m - 1::k].
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from data.errors import EstimationError, InfeasibleConfigError, InputError
from data.estimates import DimensionEstimate, HiguchiConfig
from data.time_series import TimeSeries
from estimation.loglog import estimate_dimension

logger = logging.getLogger(__name__)

# Shortest series the estimator accepts
MIN_SERIES_LENGTH = 4


def curve_length_at_scale(series: TimeSeries, k: int) -> float:
    """
    Normalized curve length L(k) of a series.

    Args:
        series: Series with at least 2 samples
        k: Step size, 1 <= k <= floor((N - 1) / 2)

    Returns:
        L(k) >= 0

    Raises:
        InputError: If the series is too short or k is out of range
    """
    x = series.samples
    n = x.shape[0]
    if n < 2:
        raise InputError(f"Curve length needs at least 2 samples, got {n}")
    k_limit = (n - 1) // 2
    if not 1 <= k <= k_limit:
        raise InputError(f"k={k} outside [1, {k_limit}] for a series of {n} samples")

    total = 0.0
    for m in range(1, k + 1):
        subseries = x[m - 1 :: k]
        n_m = subseries.shape[0] - 1
        increments = np.abs(np.diff(subseries)).sum()
        total += increments * (n - 1) / (n_m * k) / k
    return total / k


def curve_lengths(series: TimeSeries, schedule: List[int]) -> List[float]:
    return [curve_length_at_scale(series, k) for k in schedule]


def higuchi_schedule(config: HiguchiConfig, n_samples: int) -> List[int]:
    """
    Resolve the scales of config for a series of n_samples.

    Raises:
        InfeasibleConfigError: If k_max or the schedule exceed floor((N - 1) / 2),
            or fewer than 2 scales remain
    """
    try:
        schedule = config.resolve_schedule(n_samples)
    except ValueError as e:
        raise InfeasibleConfigError(f"Higuchi configuration infeasible: {e}") from e
    if len(schedule) < 2:
        raise InfeasibleConfigError(f"Higuchi analysis needs at least 2 scales, schedule is {schedule}")
    return schedule


def higuchi_dimension(series: TimeSeries, config: Optional[HiguchiConfig] = None) -> DimensionEstimate:
    """
    Estimate the fractal dimension D of a series from L(k) ~ k^(-D).

    Args:
        series: Series to analyze
        config: Scales to use; defaults to HiguchiConfig()

    Returns:
        DimensionEstimate with D = -slope of ln L(k) against ln k

    Raises:
        InputError: If the series is shorter than 4 samples
        InfeasibleConfigError: If the config cannot be satisfied for its length
        EstimationError: If fewer than two scales have a non-zero length,
            as for a constant series
    """
    config = config or HiguchiConfig()
    n = len(series)
    if n < MIN_SERIES_LENGTH:
        raise InputError(f"Higuchi analysis needs at least {MIN_SERIES_LENGTH} samples, got {n}")
    schedule = higuchi_schedule(config, n)

    lengths = curve_lengths(series, schedule)
    try:
        estimate = estimate_dimension(schedule, lengths, dimension_sign=-1.0)
    except EstimationError as e:
        logger.debug(f"Higuchi estimation failed for N={n}: {e}")
        raise EstimationError(f"Series has no measurable curve length: {e}", e.points) from e
    return estimate


def higuchi_config(k_max: Optional[int] = None, k_schedule: Optional[List[int]] = None) -> HiguchiConfig:
    """Build a HiguchiConfig, reporting violations as InputError."""
    try:
        return HiguchiConfig(k_max=k_max, k_schedule=k_schedule)
    except ValidationError as e:
        raise InputError(f"Invalid Higuchi configuration: {e.errors()[0]['msg']}") from e

"""
Models for log-log fits, dimension estimates and the Higuchi configuration.
"""

import math
from typing import List, Optional

from pydantic import BaseModel, field_validator, model_validator

# Cap applied to k_max when the caller does not choose one
DEFAULT_K_MAX_CAP = 16
# Every k up to this value is part of the default schedule
DENSE_K_LIMIT = 10
# Growth factor of the geometric part of the default schedule
K_GROWTH = 1.3


class LogLogPoint(BaseModel):
    """One (scale, measure) pair of a scaling plot"""

    scale: float
    measure: float

    @field_validator("scale", "measure")
    @classmethod
    def must_be_positive_and_finite(cls, v):
        if not math.isfinite(v) or v <= 0:
            raise ValueError("Scale and measure must be positive and finite")
        return v


class LogLogFit(BaseModel):
    """Ordinary least squares line through (ln scale, ln measure)"""

    slope: float
    intercept: float
    r_squared: float


class DimensionEstimate(BaseModel):
    """Slope-derived dimension with the diagnostics of its fit"""

    dimension: float
    slope: float
    intercept: float
    r_squared: float
    points: List[LogLogPoint]
    excluded_count: int = 0

    @model_validator(mode="after")
    def check_diagnostics(self):
        if len(self.points) < 2:
            raise ValueError("An estimate needs at least 2 fitted points")
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError(f"r_squared must lie in [0, 1], got {self.r_squared}")
        return self


class HiguchiConfig(BaseModel):
    """Scales used by the Higuchi estimator.

    k_max=None resolves to min(floor((N-1)/2), DEFAULT_K_MAX_CAP) for a series
    of N samples. k_schedule=None resolves to 1..10 followed by steps growing
    by a factor of about 1.3 up to k_max.
    """

    k_max: Optional[int] = None
    k_schedule: Optional[List[int]] = None

    @field_validator("k_max")
    @classmethod
    def k_max_must_be_positive(cls, v):
        if v is not None and v < 1:
            raise ValueError("k_max must be a positive integer")
        return v

    @field_validator("k_schedule")
    @classmethod
    def schedule_must_increase(cls, v):
        if v is None:
            return v
        if not v or v[0] < 1:
            raise ValueError("k_schedule must be non-empty with every k >= 1")
        if any(later <= earlier for earlier, later in zip(v, v[1:])):
            raise ValueError("k_schedule must be strictly increasing")
        return v

    @model_validator(mode="after")
    def schedule_within_k_max(self):
        if self.k_max is not None and self.k_schedule and self.k_schedule[-1] > self.k_max:
            raise ValueError("k_schedule exceeds k_max")
        return self

    def resolve_k_max(self, n_samples: int) -> int:
        """Largest step for a series of n_samples; raises ValueError if infeasible."""
        feasible = (n_samples - 1) // 2
        if feasible < 1:
            raise ValueError(f"A series of {n_samples} samples admits no Higuchi scale")
        if self.k_max is None:
            return min(feasible, DEFAULT_K_MAX_CAP)
        if self.k_max > feasible:
            raise ValueError(
                f"k_max={self.k_max} exceeds floor((N-1)/2)={feasible} for N={n_samples}"
            )
        return self.k_max

    def resolve_schedule(self, n_samples: int) -> List[int]:
        k_max = self.resolve_k_max(n_samples)
        if self.k_schedule is not None:
            if self.k_schedule[-1] > k_max:
                raise ValueError(
                    f"k_schedule reaches {self.k_schedule[-1]} but N={n_samples} allows {k_max}"
                )
            return list(self.k_schedule)
        return default_schedule(k_max)


def default_schedule(k_max: int) -> List[int]:
    """1..10, then round(k * 1.3) steps, always ending at k_max."""
    schedule = list(range(1, min(k_max, DENSE_K_LIMIT) + 1))
    k = schedule[-1]
    while k < k_max:
        k = min(k_max, max(k + 1, round(k * K_GROWTH)))
        schedule.append(k)
    return schedule

"""
Time series models: the sampled signal analyzed by Higuchi's method and the
parameters of the Weierstrass reference signal.
"""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, computed_field, field_validator, model_validator

# Amplitude of the first omitted Weierstrass term must stay below this
WEIERSTRASS_TAIL_BOUND = 1e-6


class TimeSeries(BaseModel):
    """Uniformly sampled real-valued signal"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    samples: np.ndarray
    sample_rate: float
    # start time of this series within its source, in seconds
    offset: float = 0.0
    theoretical_dimension: Optional[float] = None

    @field_validator("samples", mode="before")
    @classmethod
    def samples_must_be_finite_vector(cls, v):
        arr = np.array(v, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("Samples must be a one-dimensional sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Samples must be finite")
        arr.flags.writeable = False
        return arr

    @field_validator("sample_rate")
    @classmethod
    def sample_rate_must_be_positive(cls, v):
        if not math.isfinite(v) or v <= 0:
            raise ValueError("Sample rate must be positive")
        return v

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    @property
    def duration(self) -> float:
        return len(self) / self.sample_rate

    def scaled(self, gain: float, bias: float = 0.0) -> "TimeSeries":
        """Return the affine image gain * X + bias, keeping all metadata."""
        return self.model_copy(update={"samples": _frozen(self.samples * gain + bias)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.sample_rate == other.sample_rate
            and self.offset == other.offset
            and self.theoretical_dimension == other.theoretical_dimension
            and np.array_equal(self.samples, other.samples)
        )


class WeierstrassParams(BaseModel):
    """Parameters of the truncated Weierstrass sum  sum a^n cos(b^n pi t)"""

    a: float
    b: float
    n_terms: Optional[int] = None

    @model_validator(mode="after")
    def check_fractal_regime(self):
        if not 0 < self.a < 1:
            raise ValueError(f"Amplitude ratio a must lie in (0, 1), got {self.a}")
        if not self.b > 1:
            raise ValueError(f"Frequency ratio b must exceed 1, got {self.b}")
        if self.a * self.b <= 1:
            raise ValueError(
                f"a*b must exceed 1 for a fractal graph, got a*b = {self.a * self.b:.6g}"
            )
        minimum = minimum_terms(self.a)
        if self.n_terms is None:
            self.n_terms = minimum
        elif self.n_terms < minimum:
            raise ValueError(
                f"n_terms={self.n_terms} leaves a tail amplitude a^n >= {WEIERSTRASS_TAIL_BOUND}; "
                f"use at least {minimum}"
            )
        return self

    @computed_field
    @property
    def theoretical_dimension(self) -> float:
        return 2.0 + math.log(self.a) / math.log(self.b)

    @classmethod
    def for_dimension(cls, dimension: float, b: float = 5.0) -> "WeierstrassParams":
        """Solve a = b^(D-2) for a graph of dimension D in (1, 2)."""
        if not 1 < dimension < 2:
            raise ValueError(f"Target dimension must lie in (1, 2), got {dimension}")
        return cls(a=b ** (dimension - 2.0), b=b)


def minimum_terms(a: float) -> int:
    """Smallest n with a^n < WEIERSTRASS_TAIL_BOUND."""
    n = max(1, math.ceil(math.log(WEIERSTRASS_TAIL_BOUND) / math.log(a)))
    while a**n >= WEIERSTRASS_TAIL_BOUND:
        n += 1
    return n


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.float64)
    arr.flags.writeable = False
    return arr

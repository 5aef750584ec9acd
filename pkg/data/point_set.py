"""
Planar point sets and Julia set parameters for box counting.
"""

import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

# c of the Douady rabbit
RABBIT_C = complex(-0.123, 0.745)


class PointSet2D(BaseModel):
    """Finite set of (x, y) points approximating a planar fractal"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray
    # distance between neighbouring samples when the set comes from a lattice
    spacing: Optional[float] = None
    label: str = ""

    @field_validator("points", mode="before")
    @classmethod
    def points_must_be_finite_pairs(cls, v):
        arr = np.array(v, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("Points must be a sequence of (x, y) pairs")
        if arr.shape[0] == 0:
            raise ValueError("A point set must not be empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Point coordinates must be finite")
        arr.flags.writeable = False
        return arr

    @field_validator("spacing")
    @classmethod
    def spacing_must_be_positive(cls, v):
        if v is not None and (not math.isfinite(v) or v <= 0):
            raise ValueError("Spacing must be positive")
        return v

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y)"""
        lo = self.points.min(axis=0)
        hi = self.points.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @property
    def extent(self) -> float:
        """Larger side of the bounding box."""
        min_x, min_y, max_x, max_y = self.bounds
        return max(max_x - min_x, max_y - min_y)

    def translated(self, dx: float, dy: float) -> "PointSet2D":
        return PointSet2D(points=self.points + np.array([dx, dy]), spacing=self.spacing, label=self.label)


class JuliaParams(BaseModel):
    """Escape-time sampling of the Julia set of z -> z^2 + c over [-2, 2]^2"""

    c: complex = RABBIT_C
    grid_resolution: int = 1024
    max_iter: int = 256
    escape_radius: float = 2.0

    @field_validator("grid_resolution")
    @classmethod
    def grid_must_be_fine_enough(cls, v):
        if v < 64:
            raise ValueError("grid_resolution must be at least 64")
        return v

    @field_validator("max_iter")
    @classmethod
    def iterations_must_suffice(cls, v):
        if v < 50:
            raise ValueError("max_iter must be at least 50")
        return v

    @field_validator("escape_radius")
    @classmethod
    def radius_must_reach_two(cls, v):
        if not v >= 2.0:
            raise ValueError("escape_radius must be at least 2")
        return v

"""
Box-counting dimension of planar point sets.

Boxes form an axis-aligned grid of pitch box_size anchored at the bounding
box's minimum corner. Cells are half-open: a point on a cell's upper edge
belongs to the next cell.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from data.errors import EstimationError, InputError
from data.estimates import DimensionEstimate
from data.point_set import PointSet2D
from estimation.loglog import estimate_dimension

logger = logging.getLogger(__name__)

# Coordinates closer than this (in cells) to an upper edge are snapped across it
EDGE_TOLERANCE = 1e-9
# Default sweep: this many sizes from extent/4 down to extent/512
SWEEP_STEPS = 12
SWEEP_COARSEST = 1 / 4
SWEEP_FINEST = 1 / 512
# The finest default box spans at least this many sampling pitches
MIN_PITCHES_PER_BOX = 8
# Cell indices along one axis must stay below this to fit in int64
MAX_CELLS_PER_AXIS = 2**62


def count_boxes(point_set: PointSet2D, box_size: float) -> int:
    """
    Number of grid cells of side box_size containing at least one point.

    Raises:
        InputError: If box_size is not positive, or so small relative to the
            set that cell indices would not fit in 64 bits
    """
    if not box_size > 0:
        raise InputError(f"Box size must be positive, got {box_size}")
    if len(point_set) == 0:
        raise InputError("Cannot count boxes of an empty point set")

    pts = point_set.points
    origin = pts.min(axis=0)
    span = float((pts.max(axis=0) - origin).max()) / box_size
    if not span < MAX_CELLS_PER_AXIS:
        raise InputError(
            f"Box size {box_size:.6g} is too small for a set of extent {point_set.extent:.6g}"
        )
    cells = np.floor((pts - origin) / box_size + EDGE_TOLERANCE).astype(np.int64)
    # one row per occupied cell
    return int(np.unique(cells, axis=0).shape[0])


def default_box_sizes(point_set: PointSet2D, steps: int = SWEEP_STEPS) -> List[float]:
    """
    Geometric sweep of box sizes, coarsest first.

    Runs from extent/4 to extent/512, floored at MIN_PITCHES_PER_BOX times the
    set's sampling pitch when the set records one.
    """
    if steps < 2:
        raise InputError(f"A box-size sweep needs at least 2 steps, got {steps}")
    extent = point_set.extent
    if extent <= 0:
        raise InputError("A point set with zero extent has no box-size sweep")
    coarsest = extent * SWEEP_COARSEST
    finest = extent * SWEEP_FINEST
    if point_set.spacing is not None:
        finest = max(finest, MIN_PITCHES_PER_BOX * point_set.spacing)
    if finest >= coarsest:
        raise InputError(
            f"Sampling pitch {point_set.spacing} is too coarse for a sweep below {coarsest:.6g}"
        )
    return [float(s) for s in np.geomspace(coarsest, finest, steps)]


def triadic_box_sizes(finest_power: int) -> List[float]:
    """3^-1, 3^-2, ..., 3^-finest_power"""
    if finest_power < 2:
        raise InputError("A triadic sweep needs at least 2 sizes")
    return [3.0**-m for m in range(1, finest_power + 1)]


def dyadic_box_sizes(finest_power: int = 6) -> List[float]:
    """1/2, 1/4, ..., 2^-finest_power; exact on lattices of i/n with 2^finest_power dividing n"""
    if finest_power < 2:
        raise InputError("A dyadic sweep needs at least 2 sizes")
    return [2.0**-m for m in range(1, finest_power + 1)]


def box_dimension(point_set: PointSet2D, box_sizes: Optional[Sequence[float]] = None) -> DimensionEstimate:
    """
    Estimate D from N(eps) ~ eps^(-D).

    Args:
        point_set: Set to cover
        box_sizes: Decreasing box sizes; defaults to default_box_sizes()

    Returns:
        DimensionEstimate with points (eps, N(eps)) and D = -slope

    Raises:
        InputError: If fewer than 2 sizes are given or a size is not positive
        EstimationError: If every size yields the same count
    """
    sizes = list(box_sizes) if box_sizes is not None else default_box_sizes(point_set)
    if len(sizes) < 2:
        raise InputError(f"Box counting needs at least 2 sizes, got {len(sizes)}")
    if any(later >= earlier for earlier, later in zip(sizes, sizes[1:])):
        raise InputError("Box sizes must be strictly decreasing")

    counts = [count_boxes(point_set, size) for size in sizes]
    logger.debug(f"Box counts for {point_set.label or 'point set'}: {list(zip(sizes, counts))}")
    if len(set(counts)) == 1:
        raise EstimationError(
            f"Every box size gives {counts[0]} boxes; shrink the sizes until counts vary "
            f"(sizes {sizes[0]:.6g}..{sizes[-1]:.6g})",
            list(zip(sizes, counts)),
        )
    return estimate_dimension(sizes, counts, dimension_sign=-1.0)

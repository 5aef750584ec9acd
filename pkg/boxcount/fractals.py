"""
Reference point sets of known dimension: Koch curve, Sierpinski carpet, Julia
set boundaries and simple non-fractal shapes.
"""

import logging
import math

import numpy as np
from pydantic import ValidationError

from data.errors import InputError
from data.point_set import JuliaParams, PointSet2D

logger = logging.getLogger(__name__)

# Koch level L has 4^L + 1 vertices; level 10 is about a million
KOCH_MAX_LEVEL = 10
# Carpet level L has 8^L centers; level 6 is 262144
CARPET_MAX_LEVEL = 6

KOCH_DIMENSION = math.log(4) / math.log(3)
CARPET_DIMENSION = math.log(8) / math.log(3)
RABBIT_DIMENSION = 1.3934

# Lattice points per side; box counts at sizes 1/m are exact for every m <= n
SEGMENT_POINTS = 1000
FILLED_SQUARE_POINTS = 512
SQUARE_BOUNDARY_POINTS = 1024


def gen_koch(level: int) -> PointSet2D:
    """
    Vertices of the level-th Koch construction over the segment (0,0)-(1,0).

    Each segment is replaced by four of a third its length, with the middle
    pair forming an equilateral bump on the positive-y side.
    """
    if not 0 <= level <= KOCH_MAX_LEVEL:
        raise InputError(f"Koch level must lie in [0, {KOCH_MAX_LEVEL}], got {level}")

    vertices = np.array([0.0 + 0.0j, 1.0 + 0.0j])
    bump = np.exp(1j * np.pi / 3)
    for _ in range(level):
        start, end = vertices[:-1], vertices[1:]
        third = (end - start) / 3
        refined = np.empty(4 * start.shape[0] + 1, dtype=np.complex128)
        refined[0:-1:4] = start
        refined[1::4] = start + third
        refined[2::4] = start + third + third * bump
        refined[3::4] = start + 2 * third
        refined[-1] = end[-1]
        vertices = refined

    return PointSet2D(
        points=np.column_stack([vertices.real, vertices.imag]),
        spacing=3.0**-level,
        label=f"koch-{level}",
    )


def gen_sierpinski_carpet(level: int) -> PointSet2D:
    """Centers of the 8^level cells kept at the level-th carpet subdivision of the unit square."""
    if not 0 <= level <= CARPET_MAX_LEVEL:
        raise InputError(f"Carpet level must lie in [0, {CARPET_MAX_LEVEL}], got {level}")

    offsets = np.array([(dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0)], dtype=np.float64)
    centers = np.array([[0.5, 0.5]])
    cell = 1.0
    for _ in range(level):
        cell /= 3
        centers = (centers[:, np.newaxis, :] + offsets[np.newaxis, :, :] * cell).reshape(-1, 2)

    return PointSet2D(points=centers, spacing=cell, label=f"carpet-{level}")


def gen_segment(n: int = SEGMENT_POINTS) -> PointSet2D:
    """n evenly spaced points i/n on the unit segment of the x axis."""
    if n < 2:
        raise InputError("A segment needs at least 2 points")
    x = np.arange(n) / n
    return PointSet2D(points=np.column_stack([x, np.zeros(n)]), spacing=1.0 / n, label="segment")


def gen_filled_square(n: int = FILLED_SQUARE_POINTS) -> PointSet2D:
    """n x n lattice (i/n, j/n) filling the unit square."""
    if n < 2:
        raise InputError("A filled square needs at least 2 points per side")
    axis = np.arange(n) / n
    xx, yy = np.meshgrid(axis, axis)
    return PointSet2D(points=np.column_stack([xx.ravel(), yy.ravel()]), spacing=1.0 / n, label="filled-square")


def gen_square_boundary(n: int = SQUARE_BOUNDARY_POINTS) -> PointSet2D:
    """n points per side along the boundary of the unit square."""
    if n < 2:
        raise InputError("A square boundary needs at least 2 points per side")
    t = np.arange(n) / n
    sides = [
        np.column_stack([t, np.zeros(n)]),
        np.column_stack([np.ones(n), t]),
        np.column_stack([1.0 - t, np.ones(n)]),
        np.column_stack([np.zeros(n), 1.0 - t]),
    ]
    return PointSet2D(points=np.vstack(sides), spacing=1.0 / n, label="square-boundary")


def escape_mask(params: JuliaParams) -> np.ndarray:
    """
    Escape-time classification of the cell centers of a grid over [-2, 2]^2.

    Returns:
        Boolean matrix (rows = y, columns = x), True where the orbit of the
        cell center leaves the escape radius within max_iter iterations
    """
    res = params.grid_resolution
    pitch = 4.0 / res
    axis = -2.0 + (np.arange(res) + 0.5) * pitch
    # row-major: index = row * res + col
    z = (axis[np.newaxis, :] + 1j * axis[:, np.newaxis]).ravel()
    escaped = np.zeros(z.shape[0], dtype=bool)
    active = np.arange(z.shape[0])
    radius_sq = params.escape_radius**2

    # iterate only orbits still inside the radius
    for _ in range(params.max_iter):
        z = z * z + params.c
        out = z.real * z.real + z.imag * z.imag > radius_sq
        if out.any():
            escaped[active[out]] = True
            keep = ~out
            z = z[keep]
            active = active[keep]
            if active.shape[0] == 0:
                break

    return escaped.reshape(res, res)


def gen_julia_boundary(params: JuliaParams) -> PointSet2D:
    """
    Boundary band of a filled Julia set.

    A cell belongs to the band when it and its four edge neighbours are not
    all of one kind (escaping / non-escaping). Cells beyond the grid edge
    repeat the edge cell.

    Raises:
        InputError: If the band is empty
    """
    escaped = escape_mask(params)
    padded = np.pad(escaped, 1, mode="edge")
    # self, up, down, left, right
    neighbourhood = [
        escaped,
        padded[:-2, 1:-1],
        padded[2:, 1:-1],
        padded[1:-1, :-2],
        padded[1:-1, 2:],
    ]
    # mixed neighbourhood marks the band
    any_escaped = np.logical_or.reduce(neighbourhood)
    all_escaped = np.logical_and.reduce(neighbourhood)
    band = any_escaped & ~all_escaped

    rows, cols = np.nonzero(band)
    if rows.shape[0] == 0:
        raise InputError(
            f"Julia set for c={params.c} has no boundary on a {params.grid_resolution}^2 grid"
        )
    pitch = 4.0 / params.grid_resolution
    xs = -2.0 + (cols + 0.5) * pitch
    ys = -2.0 + (rows + 0.5) * pitch
    logger.info(
        f"Julia boundary c={params.c}: {rows.shape[0]} band cells on a {params.grid_resolution}^2 grid"
    )
    return PointSet2D(points=np.column_stack([xs, ys]), spacing=pitch, label=f"julia c={params.c}")


def julia_params(c: complex = None, grid_resolution: int = 1024, max_iter: int = 256, escape_radius: float = 2.0) -> JuliaParams:
    """Build JuliaParams, reporting violations as InputError."""
    fields = {"grid_resolution": grid_resolution, "max_iter": max_iter, "escape_radius": escape_radius}
    if c is not None:
        fields["c"] = c
    try:
        return JuliaParams(**fields)
    except ValidationError as e:
        raise InputError(f"Invalid Julia parameters: {e.errors()[0]['msg']}") from e

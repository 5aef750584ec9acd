"""
Plain-text point files: one "x,y" pair per line, '#' starts a comment.
"""

import io
import logging
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from data.errors import InputError
from data.point_set import PointSet2D

logger = logging.getLogger(__name__)


def format_points(point_set: PointSet2D) -> str:
    buffer = io.StringIO()
    np.savetxt(buffer, point_set.points, fmt="%.17g", delimiter=",")
    return buffer.getvalue()


def write_point_file(point_set: PointSet2D, path: Union[str, Path]) -> None:
    Path(path).write_text(format_points(point_set))
    logger.info(f"Wrote {len(point_set)} points to {path}")


def read_point_file(path: Union[str, Path]) -> PointSet2D:
    """
    Load a point file.

    Raises:
        InputError: If the file is missing, malformed or holds no points
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"Cannot read point file {path}: {e}") from e
    return parse_points(text, label=Path(path).name)


def parse_points(text: str, label: str = "") -> PointSet2D:
    rows = []
    for line_number, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise InputError(f"Line {line_number}: expected 'x,y', got {line!r}")
        try:
            rows.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise InputError(f"Line {line_number}: coordinates must be numbers, got {line!r}") from None

    if not rows:
        raise InputError(f"Point file {label!r} contains no points")
    try:
        return PointSet2D(points=rows, label=label)
    except ValidationError as e:
        raise InputError(f"Invalid point set: {e.errors()[0]['msg']}") from e

"""
Fractality bands and the listener-expectation comparison.

A reading is rounded half-up to two decimals, then:

    <= 1.02        LeastFractal
    1.03 .. 1.08   ModeratelyFractal
    >= 1.09        HighlyFractal
"""

import math
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

import pandas as pd

from data.errors import InputError
from data.track_record import Classification, TrackRecord

LEAST_UPPER = Decimal("1.02")
MODERATE_UPPER = Decimal("1.08")
EXPECTATION_TAG = "expected_fractal"
UNTAGGED = "untagged"


def round_reading(dimension: float) -> Decimal:
    # repr gives the shortest decimal that round-trips, so 1.025 rounds up
    return Decimal(repr(float(dimension))).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def classify(dimension: float) -> Classification:
    """
    Band a dimension reading.

    Raises:
        InputError: If the reading is NaN or infinite
    """
    if not math.isfinite(dimension):
        raise InputError(f"Cannot classify a non-finite dimension: {dimension}")
    rounded = round_reading(dimension)
    if rounded <= LEAST_UPPER:
        return Classification.LEAST
    if rounded <= MODERATE_UPPER:
        return Classification.MODERATE
    return Classification.HIGH


def expectation_agreement(records: Sequence[TrackRecord], tag_key: str = EXPECTATION_TAG) -> pd.DataFrame:
    """
    Crosstab of listener expectation (rows) against measured band (columns).

    Records without the tag count under "untagged". Every band appears as a
    column even when empty.
    """
    if not records:
        raise InputError("No records to compare")
    expectations = [
        (r.entry.tags.get(tag_key, UNTAGGED) if r.entry is not None else UNTAGGED) for r in records
    ]
    bands = [r.classification.value for r in records]
    table = pd.crosstab(
        pd.Series(expectations, name=tag_key),
        pd.Series(bands, name="classification"),
    )
    return table.reindex(columns=[c.value for c in Classification], fill_value=0)

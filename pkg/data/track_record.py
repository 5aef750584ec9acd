"""
Models for corpus analysis: manifest entries, per-track results and failures.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, field_validator, model_validator

from data.estimates import DimensionEstimate

REPORT_SCHEMA_VERSION = 1


class Classification(str, Enum):
    """Fractality band of a dimension reading"""

    LEAST = "LeastFractal"
    MODERATE = "ModeratelyFractal"
    HIGH = "HighlyFractal"


class TrackEntry(BaseModel):
    """One manifest line: an audio file plus free-form tags"""

    path: str
    title: str
    tags: Dict[str, str] = {}

    @field_validator("path")
    @classmethod
    def path_must_not_be_empty(cls, v):
        if not v or not v.strip():
            raise ValueError("Track path cannot be empty")
        return v


class WindowEstimate(BaseModel):
    """Higuchi reading of one analysis window; estimate is None when it failed"""

    offset: float
    estimate: Optional[DimensionEstimate] = None
    error: Optional[str] = None

    @model_validator(mode="after")
    def exactly_one_outcome(self):
        if (self.estimate is None) == (self.error is None):
            raise ValueError("A window holds either an estimate or an error")
        return self

    @property
    def succeeded(self) -> bool:
        return self.estimate is not None


class TrackRecord(BaseModel):
    """Per-track analysis result"""

    entry: Optional[TrackEntry] = None
    window_estimates: List[WindowEstimate]
    summary_max: float
    summary_mean: float
    classification: Classification
    config_fingerprint: str

    @property
    def window_count(self) -> int:
        return len(self.window_estimates)

    @property
    def failed_windows(self) -> int:
        return sum(1 for w in self.window_estimates if not w.succeeded)

    def peak_window(self) -> WindowEstimate:
        """First window whose dimension equals summary_max."""
        return max(
            (w for w in self.window_estimates if w.succeeded),
            key=lambda w: w.estimate.dimension,
        )


class TrackFailure(BaseModel):
    """A manifest entry that could not be analyzed"""

    entry: TrackEntry
    error: str


class CorpusRun(BaseModel):
    """Ordered outcome of a manifest run"""

    records: List[TrackRecord] = []
    failures: List[TrackFailure] = []
    config_fingerprint: str = ""


class TagMaximum(BaseModel):
    """Largest summary_max among the records sharing a tag value"""

    tag_value: str
    max_dimension: float
    title: str
    track_count: int

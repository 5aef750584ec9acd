"""
Decoded audio and the windowing plan used to cut it into analysis windows.
"""

import math
from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

# Minimum number of samples per analysis window
MIN_WINDOW_SAMPLES = 4


class SampleFormat(str, Enum):
    """Sample encodings understood by the WAV codec"""

    PCM8 = "pcm8"
    PCM16 = "pcm16"
    PCM24 = "pcm24"
    PCM32 = "pcm32"
    FLOAT32 = "float32"

    @property
    def bit_depth(self) -> int:
        return {"pcm8": 8, "pcm16": 16, "pcm24": 24, "pcm32": 32, "float32": 32}[self.value]

    @property
    def is_float(self) -> bool:
        return self is SampleFormat.FLOAT32

    @classmethod
    def from_token(cls, token: str) -> "SampleFormat":
        """Accept '16', 'pcm16', 'float', 'float32' and the like."""
        token = str(token).strip().lower()
        aliases = {"8": cls.PCM8, "16": cls.PCM16, "24": cls.PCM24, "32": cls.PCM32, "float": cls.FLOAT32}
        if token in aliases:
            return aliases[token]
        try:
            return cls(token)
        except ValueError:
            raise ValueError(f"Unsupported sample format: {token}") from None


class AudioClip(BaseModel):
    """Multi-channel PCM audio with samples normalized to [-1, 1].

    frames has shape (channels, n_frames).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sample_rate: int
    sample_format: SampleFormat = SampleFormat.PCM16
    frames: np.ndarray

    @field_validator("frames", mode="before")
    @classmethod
    def frames_must_be_channel_matrix(cls, v):
        arr = np.array(v, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[np.newaxis, :]
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValueError("Frames must be a (channels, n_frames) matrix")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Frames must be finite")
        arr.flags.writeable = False
        return arr

    @field_validator("sample_rate")
    @classmethod
    def sample_rate_must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("Sample rate must be positive")
        return v

    @property
    def channels(self) -> int:
        return int(self.frames.shape[0])

    @property
    def n_frames(self) -> int:
        return int(self.frames.shape[1])

    @property
    def bit_depth(self) -> int:
        return self.sample_format.bit_depth

    def __eq__(self, other) -> bool:
        if not isinstance(other, AudioClip):
            return NotImplemented
        return (
            self.sample_rate == other.sample_rate
            and self.sample_format == other.sample_format
            and np.array_equal(self.frames, other.frames)
        )


class WindowPlan(BaseModel):
    """Fixed-length analysis windows advancing by a hop, both in seconds"""

    window_length: float = 2.0
    hop: float = 1.0

    @model_validator(mode="after")
    def hop_within_window(self):
        if not (math.isfinite(self.window_length) and math.isfinite(self.hop)):
            raise ValueError("Window length and hop must be finite")
        if not 0 < self.hop <= self.window_length:
            raise ValueError(
                f"Hop must satisfy 0 < hop <= window_length, got hop={self.hop}, window={self.window_length}"
            )
        return self

    def to_samples(self, sample_rate: float) -> Tuple[int, int]:
        """(window_samples, hop_samples) at the given rate."""
        window_samples = int(round(self.window_length * sample_rate))
        hop_samples = int(round(self.hop * sample_rate))
        if window_samples < MIN_WINDOW_SAMPLES:
            raise ValueError(
                f"A {self.window_length}s window holds {window_samples} samples at {sample_rate} Hz; "
                f"at least {MIN_WINDOW_SAMPLES} are required"
            )
        return window_samples, max(1, hop_samples)

"""
Channel mixdown and fixed-length windowing of decoded audio.
"""

import logging
from typing import List

from data.audio_clip import AudioClip, WindowPlan
from data.errors import InputError
from data.time_series import TimeSeries

logger = logging.getLogger(__name__)


def to_mono(clip: AudioClip) -> TimeSeries:
    """Average the channels frame by frame."""
    if clip.channels == 1:
        samples = clip.frames[0]
    else:
        samples = clip.frames.mean(axis=0)
    return TimeSeries(samples=samples, sample_rate=float(clip.sample_rate))


def segment(series: TimeSeries, plan: WindowPlan) -> List[TimeSeries]:
    """
    Cut a series into windows of plan.window_length seconds every plan.hop seconds.

    Windows start at multiples of the hop; a trailing partial window is
    dropped. Each window's offset is its start time in the source series.

    Raises:
        InputError: If a window holds fewer than 4 samples or the series is
            shorter than one window
    """
    try:
        window_samples, hop_samples = plan.to_samples(series.sample_rate)
    except ValueError as e:
        raise InputError(str(e)) from e

    n = len(series)
    if n < window_samples:
        raise InputError(
            f"Series of {n} samples is shorter than one {window_samples}-sample window"
        )

    windows = []
    for start in range(0, n - window_samples + 1, hop_samples):
        windows.append(
            TimeSeries(
                samples=series.samples[start : start + window_samples],
                sample_rate=series.sample_rate,
                offset=series.offset + start / series.sample_rate,
                theoretical_dimension=series.theoretical_dimension,
            )
        )
    dropped = n - ((n - window_samples) // hop_samples) * hop_samples - window_samples
    if dropped:
        logger.debug(f"Dropped {dropped} trailing samples after the last full window")
    return windows

"""
Per-track analysis and batch runs over a manifest.

A track is mixed down to mono, cut into windows and each window is measured
with Higuchi's method. Windows that cannot be measured (silence) are kept as
failed entries and left out of the summaries.
"""

import hashlib
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from audio.wav_codec import read_wav_file
from audio.windowing import segment, to_mono
from config.settings import VERSION
from corpus.classification import classify
from corpus.manifest import resolve_track_path
from data.audio_clip import AudioClip, WindowPlan
from data.errors import (
    EstimationError,
    FractalToolkitError,
    InfeasibleConfigError,
    InputError,
    ManifestError,
    TrackAnalysisError,
)
from data.estimates import DEFAULT_K_MAX_CAP, DENSE_K_LIMIT, K_GROWTH, HiguchiConfig
from data.track_record import CorpusRun, TrackEntry, TrackFailure, TrackRecord, WindowEstimate
from estimation.higuchi import higuchi_dimension, higuchi_schedule

logger = logging.getLogger(__name__)


def config_fingerprint(plan: WindowPlan, config: HiguchiConfig) -> str:
    """
    First 16 hex digits of the SHA-256 of the canonical analysis parameters.

    An unset k_max hashes as the default cap, and the schedule constants are
    included, so configs that run the same scales share a fingerprint.
    """
    payload = {
        "version": VERSION,
        "window_length": plan.window_length,
        "hop": plan.hop,
        "k_max": config.k_max if config.k_max is not None else DEFAULT_K_MAX_CAP,
        "k_schedule": config.k_schedule,
        "dense_k_limit": DENSE_K_LIMIT,
        "k_growth": K_GROWTH,
    }
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def analyze_track(
    clip: AudioClip,
    plan: Optional[WindowPlan] = None,
    config: Optional[HiguchiConfig] = None,
    fingerprint: Optional[str] = None,
) -> TrackRecord:
    """
    Measure every window of a clip and summarize.

    Args:
        clip: Decoded audio at least one window long
        plan: Windowing; defaults to 2 s windows every 1 s
        config: Higuchi scales; defaults to HiguchiConfig()
        fingerprint: Precomputed config fingerprint

    Returns:
        TrackRecord without entry metadata

    Raises:
        InputError: If the clip is shorter than one window
        InfeasibleConfigError: If config does not fit the window length
        TrackAnalysisError: If no window yields a dimension
    """
    plan = plan or WindowPlan()
    config = config or HiguchiConfig()
    windows = segment(to_mono(clip), plan)
    # every window has the same length, so one check covers them all
    higuchi_schedule(config, len(windows[0]))

    window_estimates: List[WindowEstimate] = []
    for window in windows:
        try:
            estimate = higuchi_dimension(window, config)
        except EstimationError as e:
            window_estimates.append(WindowEstimate(offset=window.offset, error=str(e)))
            continue
        window_estimates.append(WindowEstimate(offset=window.offset, estimate=estimate))

    dimensions = np.array([w.estimate.dimension for w in window_estimates if w.succeeded])
    failed = len(window_estimates) - dimensions.shape[0]
    if dimensions.shape[0] == 0:
        raise TrackAnalysisError(
            f"None of {len(window_estimates)} windows yielded a dimension: {window_estimates[0].error}"
        )
    if failed:
        logger.warning(f"{failed} of {len(window_estimates)} windows could not be measured")

    summary_max = float(dimensions.max())
    return TrackRecord(
        window_estimates=window_estimates,
        summary_max=summary_max,
        summary_mean=float(dimensions.mean()),
        classification=classify(summary_max),
        config_fingerprint=fingerprint or config_fingerprint(plan, config),
    )


_Task = Tuple[TrackEntry, Optional[Path], WindowPlan, HiguchiConfig, str]


def _analyze_entry(task: _Task) -> Union[TrackRecord, TrackFailure]:
    entry, base_dir, plan, config, fingerprint = task
    path = resolve_track_path(entry, base_dir)
    try:
        clip = read_wav_file(path)
        record = analyze_track(clip, plan, config, fingerprint)
    except InfeasibleConfigError:
        raise
    except (FractalToolkitError, OSError) as e:
        logger.warning(f"Track {entry.title!r} ({entry.path}) failed: {e}")
        return TrackFailure(entry=entry, error=f"{type(e).__name__}: {e}")
    logger.info(f"Track {entry.title!r}: max {record.summary_max:.4f} ({record.classification.value})")
    return record.model_copy(update={"entry": entry})


def run_manifest(
    entries: Sequence[TrackEntry],
    plan: Optional[WindowPlan] = None,
    config: Optional[HiguchiConfig] = None,
    jobs: int = 1,
    base_dir: Optional[Union[str, Path]] = None,
) -> CorpusRun:
    """
    Analyze every manifest entry, isolating per-track failures.

    Records and failures keep manifest order whatever the job count.

    Args:
        entries: Manifest entries
        plan: Windowing shared by all tracks
        config: Higuchi scales shared by all tracks
        jobs: Worker processes; 1 runs inline
        base_dir: Directory relative entry paths are resolved against

    Raises:
        ManifestError: If two entries share a path
        InfeasibleConfigError: If config does not fit a track's window length;
            the run stops instead of failing every track
    """
    plan = plan or WindowPlan()
    config = config or HiguchiConfig()
    paths = [e.path for e in entries]
    if len(set(paths)) != len(paths):
        raise ManifestError("Manifest lists the same path more than once")
    if jobs < 1:
        raise InputError(f"Job count must be at least 1, got {jobs}")

    fingerprint = config_fingerprint(plan, config)
    base = Path(base_dir) if base_dir is not None else None
    tasks = [(entry, base, plan, config, fingerprint) for entry in entries]

    if jobs == 1 or len(tasks) <= 1:
        outcomes = [_analyze_entry(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as executor:
            outcomes = list(executor.map(_analyze_entry, tasks))

    records = [o for o in outcomes if isinstance(o, TrackRecord)]
    failures = [o for o in outcomes if isinstance(o, TrackFailure)]
    logger.info(f"Analyzed {len(records)} tracks, {len(failures)} failed (config {fingerprint})")
    return CorpusRun(records=records, failures=failures, config_fingerprint=fingerprint)

#!/usr/bin/env python3
"""
Test configuration and fixtures for the fractal toolkit.
Provides raw WAV builders, synthetic audio files and a small corpus.
"""

import struct
import sys
from pathlib import Path

import numpy as np
import pytest

# Get the project root directory
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

FIXTURES_DIR = Path(__file__).parent / "fixtures"

from audio.wav_codec import write_wav_file  # noqa: E402
from data.audio_clip import AudioClip, SampleFormat  # noqa: E402
from data.time_series import WeierstrassParams  # noqa: E402
from signals.generators import gen_sine, gen_weierstrass, gen_white_noise  # noqa: E402


def chunk(chunk_id: bytes, body: bytes, pad: bool = True) -> bytes:
    """A RIFF chunk with its word-alignment pad byte"""
    data = chunk_id + struct.pack("<I", len(body)) + body
    if pad and len(body) % 2:
        data += b"\x00"
    return data


def fmt_body(tag: int = 1, channels: int = 1, rate: int = 44100, bits: int = 16, extra: bytes = b"") -> bytes:
    """fmt chunk body with consistent byte rate and block align"""
    block_align = channels * bits // 8
    return struct.pack("<HHIIHH", tag, channels, rate, rate * block_align, block_align, bits) + extra


def riff(*chunks: bytes, magic: bytes = b"RIFF", form: bytes = b"WAVE") -> bytes:
    """Wrap chunks in a RIFF header whose size matches"""
    body = form + b"".join(chunks)
    return magic + struct.pack("<I", len(body)) + body


def pcm16_wav(samples, rate: int = 44100, channels: int = 1) -> bytes:
    """Minimal 16-bit PCM file from integer samples (interleaved)"""
    payload = np.asarray(samples, dtype="<i2").tobytes()
    return riff(chunk(b"fmt ", fmt_body(1, channels, rate, 16)), chunk(b"data", payload))


@pytest.fixture
def wav_builder():
    """Fixture exposing the raw RIFF building helpers"""

    class Builder:
        pass

    builder = Builder()
    builder.chunk = chunk
    builder.fmt_body = fmt_body
    builder.riff = riff
    builder.pcm16 = pcm16_wav
    return builder


def write_series_wav(path: Path, samples, rate: int = 44100, sample_format=SampleFormat.PCM16) -> Path:
    """Write a mono WAV, peak-scaling samples that leave [-1, 1]"""
    samples = np.asarray(samples, dtype=np.float64)
    peak = np.abs(samples).max()
    if peak > 1.0:
        samples = samples / peak
    write_wav_file(path, AudioClip(sample_rate=rate, sample_format=sample_format, frames=samples))
    return path


@pytest.fixture
def sine_wav(tmp_path):
    """4 s of a 440 Hz sine as 16-bit PCM"""
    series = gen_sine(440.0, 44100, 4.0)
    return write_series_wav(tmp_path / "sine.wav", series.samples)


@pytest.fixture
def noise_wav(tmp_path):
    """4 s of seeded white noise as 16-bit PCM"""
    series = gen_white_noise(7, 44100, 4.0, amplitude=0.9)
    return write_series_wav(tmp_path / "noise.wav", series.samples)


@pytest.fixture
def silence_wav(tmp_path):
    """4 s of digital silence"""
    return write_series_wav(tmp_path / "silence.wav", np.zeros(4 * 44100))


@pytest.fixture
def synthetic_corpus(tmp_path):
    """
    Five-track corpus written next to its manifest: sine, noise, Weierstrass,
    a stereo sine and one missing file.
    """
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()

    write_series_wav(corpus_dir / "sine.wav", gen_sine(440.0, 44100, 3.0).samples)
    write_series_wav(corpus_dir / "noise.wav", gen_white_noise(11, 44100, 3.0, amplitude=0.9).samples)
    weierstrass = gen_weierstrass(WeierstrassParams.for_dimension(1.5), 44100, 3.0)
    write_series_wav(corpus_dir / "weierstrass.wav", weierstrass.samples, sample_format=SampleFormat.FLOAT32)
    stereo = gen_sine(220.0, 22050, 3.0).samples * 0.5
    write_wav_file(
        corpus_dir / "stereo.wav",
        AudioClip(sample_rate=22050, frames=np.vstack([stereo, stereo])),
    )

    manifest = corpus_dir / "manifest.tsv"
    manifest.write_text(
        "# path\ttags\n"
        "sine.wav\ttitle=Pure sine\torigin=Lab\texpected_fractal=no\n"
        "noise.wav\ttitle=White noise\torigin=Lab\texpected_fractal=yes\n"
        "weierstrass.wav\ttitle=Weierstrass 1.5\torigin=Math\texpected_fractal=yes\n"
        "stereo.wav\torigin=Lab\texpected_fractal=maybe\n"
        "missing.wav\ttitle=Missing\torigin=Nowhere\n"
    )
    return manifest


@pytest.fixture
def reported_song_dimensions():
    """Song table fixture: title, expectation and reported dimension"""
    import pandas as pd

    return pd.read_csv(FIXTURES_DIR / "reported_song_dimensions.tsv", sep="\t")

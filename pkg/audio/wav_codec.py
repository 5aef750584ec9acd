"""
RIFF/WAVE PCM codec.

Reads little-endian RIFF/WAVE with integer PCM (8/16/24/32 bit, format code 1)
or 32-bit IEEE float (format code 3). Unknown chunks are skipped and odd-sized
chunks are followed by one pad byte. Writing produces the canonical minimal
file: RIFF header, a 16-byte fmt chunk and a data chunk.

Integer samples s map to s / 2^(bits-1); 8-bit samples are unsigned and map
to (s - 128) / 128.
"""

import logging
import struct
from pathlib import Path
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np

from data.audio_clip import AudioClip, SampleFormat
from data.errors import (
    DuplicateChunkError,
    InconsistentLengthError,
    MissingChunkError,
    NonFiniteSampleError,
    TruncatedDataError,
    UnsupportedContainerError,
    UnsupportedFormatError,
    WavError,
)

logger = logging.getLogger(__name__)

RIFF_ID = b"RIFF"
WAVE_ID = b"WAVE"
FMT_ID = b"fmt "
DATA_ID = b"data"

WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_IEEE_FLOAT = 0x0003
WAVE_FORMAT_EXTENSIBLE = 0xFFFE

_CHUNK_HEADER = struct.Struct("<4sI")
_FMT_FIELDS = struct.Struct("<HHIIHH")

_PCM_BY_BITS = {
    8: SampleFormat.PCM8,
    16: SampleFormat.PCM16,
    24: SampleFormat.PCM24,
    32: SampleFormat.PCM32,
}


class WaveFormat(NamedTuple):
    sample_format: SampleFormat
    channels: int
    sample_rate: int
    block_align: int


def parse_wav(data: bytes) -> AudioClip:
    """
    Decode a RIFF/WAVE byte string.

    Args:
        data: Complete file contents

    Returns:
        AudioClip with frames normalized to [-1, 1] (float payloads are kept
        as stored)

    Raises:
        UnsupportedContainerError: Magic is not RIFF....WAVE (e.g. RIFX)
        TruncatedDataError: A header or chunk extends past the available bytes
        MissingChunkError / DuplicateChunkError: fmt or data absent or repeated
        UnsupportedFormatError: Format code or bit depth not handled
        InconsistentLengthError: Header sizes disagree with each other
        NonFiniteSampleError: Float payload holds NaN or infinity
    """
    data = bytes(data)
    if len(data) < 12:
        raise TruncatedDataError(f"A RIFF/WAVE header needs 12 bytes, got {len(data)}")
    if data[0:4] != RIFF_ID:
        raise UnsupportedContainerError(f"Expected 'RIFF' magic, found {data[0:4]!r}")
    if data[8:12] != WAVE_ID:
        raise UnsupportedContainerError(f"Expected 'WAVE' form type, found {data[8:12]!r}")

    # the RIFF size counts everything after itself, WAVE id included
    riff_size = struct.unpack_from("<I", data, 4)[0]
    if riff_size < 4:
        raise InconsistentLengthError(f"RIFF size {riff_size} cannot hold the WAVE form type")
    end = 8 + riff_size
    if end > len(data):
        raise TruncatedDataError(
            f"RIFF header declares {riff_size} bytes but only {len(data) - 8} follow"
        )
    if end < len(data):
        logger.debug(f"Ignoring {len(data) - end} bytes after the RIFF chunk")

    fmt_body: Optional[bytes] = None
    data_body: Optional[bytes] = None
    # walk id/size headers; only fmt and data are kept
    pos = 12
    while pos < end:
        if end - pos < _CHUNK_HEADER.size:
            raise TruncatedDataError(f"Incomplete chunk header at offset {pos}")
        chunk_id, size = _CHUNK_HEADER.unpack_from(data, pos)
        body_start = pos + _CHUNK_HEADER.size
        body_end = body_start + size
        if body_end > end:
            raise TruncatedDataError(
                f"Chunk {chunk_id!r} at offset {pos} declares {size} bytes, {end - body_start} remain"
            )
        if chunk_id == FMT_ID:
            if fmt_body is not None:
                raise DuplicateChunkError(f"Second fmt chunk at offset {pos}")
            fmt_body = data[body_start:body_end]
        elif chunk_id == DATA_ID:
            if data_body is not None:
                raise DuplicateChunkError(f"Second data chunk at offset {pos}")
            data_body = data[body_start:body_end]
        else:
            logger.debug(f"Skipping chunk {chunk_id!r} ({size} bytes)")
        # word alignment; a missing final pad byte is tolerated
        pos = body_end + (size & 1)

    if fmt_body is None:
        raise MissingChunkError("No fmt chunk")
    if data_body is None:
        raise MissingChunkError("No data chunk")

    wave_format = _parse_format(fmt_body)
    frames = _decode_frames(data_body, wave_format)
    return AudioClip(
        sample_rate=wave_format.sample_rate,
        sample_format=wave_format.sample_format,
        frames=frames,
    )


def _parse_format(body: bytes) -> WaveFormat:
    if len(body) < _FMT_FIELDS.size:
        raise InconsistentLengthError(f"fmt chunk holds {len(body)} bytes, at least 16 are required")
    tag, channels, sample_rate, byte_rate, block_align, bits = _FMT_FIELDS.unpack_from(body, 0)

    if tag == WAVE_FORMAT_PCM:
        if bits not in _PCM_BY_BITS:
            raise UnsupportedFormatError(f"Integer PCM with {bits} bits per sample is not supported")
        sample_format = _PCM_BY_BITS[bits]
    elif tag == WAVE_FORMAT_IEEE_FLOAT:
        if bits != 32:
            raise UnsupportedFormatError(f"IEEE float with {bits} bits per sample is not supported")
        sample_format = SampleFormat.FLOAT32
    elif tag == WAVE_FORMAT_EXTENSIBLE:
        raise UnsupportedFormatError("WAVE_FORMAT_EXTENSIBLE is not supported")
    else:
        raise UnsupportedFormatError(f"Format code 0x{tag:04x} is not supported")

    if channels == 0:
        raise UnsupportedFormatError("fmt chunk declares zero channels")
    if sample_rate == 0:
        raise UnsupportedFormatError("fmt chunk declares a zero sample rate")
    expected_align = channels * bits // 8
    if block_align != expected_align:
        raise InconsistentLengthError(
            f"Block align {block_align} does not match {channels} channels x {bits} bits"
        )
    if byte_rate != sample_rate * block_align:
        logger.warning(
            f"fmt byte rate {byte_rate} differs from sample_rate x block_align = {sample_rate * block_align}"
        )
    return WaveFormat(sample_format, channels, sample_rate, block_align)


def _decode_frames(body: bytes, wave_format: WaveFormat) -> np.ndarray:
    if len(body) % wave_format.block_align:
        raise InconsistentLengthError(
            f"data chunk of {len(body)} bytes is not a whole number of {wave_format.block_align}-byte frames"
        )
    sample_format = wave_format.sample_format

    if sample_format is SampleFormat.PCM8:
        values = (np.frombuffer(body, dtype=np.uint8).astype(np.float64) - 128.0) / 128.0
    elif sample_format is SampleFormat.PCM16:
        values = np.frombuffer(body, dtype="<i2").astype(np.float64) / 2.0**15
    elif sample_format is SampleFormat.PCM24:
        # little-endian triplets, then sign-extend from bit 23
        raw = np.frombuffer(body, dtype=np.uint8).reshape(-1, 3).astype(np.int32)
        ints = raw[:, 0] | (raw[:, 1] << 8) | (raw[:, 2] << 16)
        ints = np.where(ints >= 1 << 23, ints - (1 << 24), ints)
        values = ints.astype(np.float64) / 2.0**23
    elif sample_format is SampleFormat.PCM32:
        values = np.frombuffer(body, dtype="<i4").astype(np.float64) / 2.0**31
    else:
        values = np.frombuffer(body, dtype="<f4").astype(np.float64)
        if not np.all(np.isfinite(values)):
            raise NonFiniteSampleError("Float payload contains NaN or infinite samples")

    # interleaved frames -> (channels, n_frames)
    return values.reshape(-1, wave_format.channels).T


def encode_wav(clip: AudioClip, sample_format: Optional[SampleFormat] = None) -> Tuple[bytes, int]:
    """
    Encode a clip as a canonical RIFF/WAVE file.

    Samples outside [-1, 1] are clamped before quantization.

    Args:
        clip: Clip to encode
        sample_format: Target encoding; defaults to the clip's own

    Returns:
        (file bytes, number of clamped samples)
    """
    sample_format = sample_format or clip.sample_format
    interleaved = clip.frames.T.ravel()
    clipped = int(np.count_nonzero(np.abs(interleaved) > 1.0))
    values = np.clip(interleaved, -1.0, 1.0)

    if sample_format is SampleFormat.PCM8:
        payload = np.clip(np.round(values * 128.0) + 128.0, 0, 255).astype(np.uint8).tobytes()
    elif sample_format is SampleFormat.PCM16:
        payload = _quantize(values, 16).astype("<i2").tobytes()
    elif sample_format is SampleFormat.PCM24:
        ints = _quantize(values, 24).astype(np.int64) & 0xFFFFFF
        payload = ints.astype("<u4").view(np.uint8).reshape(-1, 4)[:, :3].tobytes()
    elif sample_format is SampleFormat.PCM32:
        payload = _quantize(values, 32).astype("<i4").tobytes()
    else:
        payload = values.astype("<f4").tobytes()

    format_code = WAVE_FORMAT_IEEE_FLOAT if sample_format.is_float else WAVE_FORMAT_PCM
    bits = sample_format.bit_depth
    block_align = clip.channels * bits // 8
    fmt_body = _FMT_FIELDS.pack(
        format_code,
        clip.channels,
        clip.sample_rate,
        clip.sample_rate * block_align,
        block_align,
        bits,
    )
    pad = b"\x00" if len(payload) % 2 else b""
    riff_size = 4 + _CHUNK_HEADER.size + len(fmt_body) + _CHUNK_HEADER.size + len(payload) + len(pad)
    parts = [
        RIFF_ID,
        struct.pack("<I", riff_size),
        WAVE_ID,
        _CHUNK_HEADER.pack(FMT_ID, len(fmt_body)),
        fmt_body,
        _CHUNK_HEADER.pack(DATA_ID, len(payload)),
        payload,
        pad,
    ]
    return b"".join(parts), clipped


def _quantize(values: np.ndarray, bits: int) -> np.ndarray:
    full_scale = 2.0 ** (bits - 1)
    return np.clip(np.round(values * full_scale), -full_scale, full_scale - 1)


def write_wav(clip: AudioClip, sample_format: Optional[SampleFormat] = None) -> bytes:
    """Encode a clip, logging how many samples were clamped."""
    data, clipped = encode_wav(clip, sample_format)
    if clipped:
        logger.warning(f"Clamped {clipped} samples outside [-1, 1] while encoding")
    return data


def read_wav_file(path: Union[str, Path]) -> AudioClip:
    """
    Read and decode a WAV file from disk.

    Raises:
        OSError: If the file cannot be read
        WavError: If the contents are not a supported WAV stream
    """
    data = Path(path).read_bytes()
    try:
        clip = parse_wav(data)
    except WavError as e:
        logger.error(f"Failed to decode {path}: {e}")
        raise
    logger.info(
        f"Decoded {path}: {clip.channels} ch, {clip.sample_rate} Hz, {clip.sample_format.value}, {clip.n_frames} frames"
    )
    return clip


def write_wav_file(path: Union[str, Path], clip: AudioClip, sample_format: Optional[SampleFormat] = None) -> int:
    """Write a clip to disk; returns the number of clamped samples."""
    data, clipped = encode_wav(clip, sample_format)
    if clipped:
        logger.warning(f"Clamped {clipped} samples outside [-1, 1] while writing {path}")
    Path(path).write_bytes(data)
    logger.info(f"Wrote {path} ({len(data)} bytes)")
    return clipped

"""
Exception hierarchy shared by every package of the toolkit.
"""

from typing import Any, List, Optional


class FractalToolkitError(Exception):
    """Base class for all toolkit errors"""


class InputError(FractalToolkitError, ValueError):
    """A precondition on an operation's inputs was violated"""


class InfeasibleConfigError(InputError):
    """Analysis parameters cannot be met by the data length they apply to"""


class EstimationError(FractalToolkitError):
    """A dimension cannot be estimated from the available measurements"""

    def __init__(self, message: str, points: Optional[List[Any]] = None):
        super().__init__(message)
        self.points = points or []


class WavError(FractalToolkitError):
    """Base class for RIFF/WAVE decoding and encoding failures"""


class UnsupportedContainerError(WavError):
    """The byte stream is not a little-endian RIFF/WAVE container"""


class MissingChunkError(WavError):
    """A required chunk (fmt or data) is absent"""


class DuplicateChunkError(WavError):
    """A chunk that must be unique appears more than once"""


class UnsupportedFormatError(WavError):
    """The fmt chunk describes an encoding this codec does not handle"""


class TruncatedDataError(WavError):
    """The byte stream ends before a declared chunk does"""


class InconsistentLengthError(WavError):
    """Header lengths disagree with each other or with the payload"""


class NonFiniteSampleError(WavError):
    """A floating point payload contains NaN or infinity"""


class TrackAnalysisError(FractalToolkitError):
    """No analysis window of a track produced a dimension"""


class ManifestError(FractalToolkitError):
    """The corpus manifest cannot be read or is malformed"""


class ReportFormatError(InputError):
    """Unknown report format token"""

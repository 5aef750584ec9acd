"""
Corpus manifest: one track per line, tab-separated.

    path<TAB>key=value<TAB>key=value ...

Blank lines and lines starting with '#' are ignored. A `title` tag names the
track; otherwise the file stem does. Relative paths are resolved against the
manifest's directory when the track is read.
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

from pydantic import ValidationError

from data.errors import ManifestError
from data.track_record import TrackEntry

logger = logging.getLogger(__name__)

TITLE_TAG = "title"


def parse_manifest(text: str) -> List[TrackEntry]:
    """
    Parse manifest text into entries in file order.

    Raises:
        ManifestError: On a malformed tag, an empty path or a repeated path
    """
    entries: List[TrackEntry] = []
    seen = {}
    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue

        # path first, then key=value tags
        fields = line.split("\t")
        path = fields[0].strip()
        tags = {}
        for field in fields[1:]:
            field = field.strip()
            if not field:
                continue
            key, sep, value = field.partition("=")
            key = key.strip()
            if not sep or not key:
                raise ManifestError(f"Line {line_number}: expected key=value, got {field!r}")
            if key in tags:
                raise ManifestError(f"Line {line_number}: tag {key!r} given twice")
            tags[key] = value.strip()

        if path in seen:
            raise ManifestError(
                f"Line {line_number}: path {path!r} already listed on line {seen[path]}"
            )
        # title is metadata, not a tag
        title = tags.pop(TITLE_TAG, None) or Path(path).stem
        try:
            entries.append(TrackEntry(path=path, title=title, tags=tags))
        except ValidationError as e:
            raise ManifestError(f"Line {line_number}: {e.errors()[0]['msg']}") from e
        seen[path] = line_number

    return entries


def read_manifest(path: Union[str, Path]) -> List[TrackEntry]:
    """
    Read a manifest file.

    Raises:
        ManifestError: If the file cannot be read or is malformed
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ManifestError(f"Cannot read manifest {path}: {e}") from e
    entries = parse_manifest(text)
    logger.info(f"Loaded {len(entries)} tracks from {path}")
    return entries


def resolve_track_path(entry: TrackEntry, base_dir: Optional[Union[str, Path]] = None) -> Path:
    path = Path(entry.path)
    if base_dir is not None and not path.is_absolute():
        return Path(base_dir) / path
    return path

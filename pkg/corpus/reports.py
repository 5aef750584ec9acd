"""
Report emission for corpus runs.

Formats:
    csv       one row per analyzed track, fixed column order
    json      lossless dump of the run, per-window log-log points included
    plotdata  (ln scale, ln measure) pairs of each track's peak window, one
              blank-line-separated block per track

Reports contain no timestamps: identical runs give identical bytes.
"""

import io
import json
import logging
import math
from typing import Dict, List, Sequence, Union

import pandas as pd
from pydantic import ValidationError

from corpus.classification import UNTAGGED
from data.errors import InputError, ReportFormatError
from data.estimates import LogLogPoint
from data.track_record import REPORT_SCHEMA_VERSION, CorpusRun, TagMaximum, TrackRecord

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "title",
    "path",
    "tags",
    "summary_max",
    "summary_mean",
    "classification",
    "window_count",
    "failed_windows",
    "config_fingerprint",
]
REPORT_FORMATS = ("csv", "json", "plotdata")

Records = Union[CorpusRun, Sequence[TrackRecord]]


def _as_run(records: Records) -> CorpusRun:
    if isinstance(records, CorpusRun):
        return records
    records = list(records)
    fingerprint = records[0].config_fingerprint if records else ""
    return CorpusRun(records=records, config_fingerprint=fingerprint)


def format_tags(tags: Dict[str, str]) -> str:
    return ";".join(f"{key}={tags[key]}" for key in sorted(tags))


def emit_report(records: Records, fmt: str) -> str:
    """
    Render records in one of REPORT_FORMATS.

    Raises:
        ReportFormatError: On an unknown format token
        InputError: If plotdata is requested for no records
    """
    fmt = fmt.strip().lower()
    if fmt not in REPORT_FORMATS:
        raise ReportFormatError(f"Unknown report format {fmt!r}; choose one of {', '.join(REPORT_FORMATS)}")
    run = _as_run(records)
    if fmt == "csv":
        return emit_csv(run.records)
    if fmt == "json":
        return emit_json(run)
    return emit_plotdata(run.records)


def emit_csv(records: Sequence[TrackRecord]) -> str:
    rows = [
        {
            "title": r.entry.title if r.entry else "",
            "path": r.entry.path if r.entry else "",
            "tags": format_tags(r.entry.tags) if r.entry else "",
            "summary_max": r.summary_max,
            "summary_mean": r.summary_mean,
            "classification": r.classification.value,
            "window_count": r.window_count,
            "failed_windows": r.failed_windows,
            "config_fingerprint": r.config_fingerprint,
        }
        for r in records
    ]
    df = pd.DataFrame(rows, columns=CSV_COLUMNS)
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def emit_json(run: CorpusRun) -> str:
    document = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "config_fingerprint": run.config_fingerprint,
        "records": [r.model_dump(mode="json") for r in run.records],
        "failures": [f.model_dump(mode="json") for f in run.failures],
    }
    return json.dumps(document, indent=2) + "\n"


def load_json_report(text: str) -> CorpusRun:
    """
    Parse a json report back into a CorpusRun.

    Raises:
        InputError: If the document is not a report of the current schema
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"Report is not valid JSON: {e}") from e
    if not isinstance(document, dict):
        raise InputError("Report must be a JSON object")
    version = document.get("schema_version")
    if version != REPORT_SCHEMA_VERSION:
        raise InputError(f"Unsupported report schema version {version!r}")
    try:
        return CorpusRun(
            records=document.get("records", []),
            failures=document.get("failures", []),
            config_fingerprint=document.get("config_fingerprint", ""),
        )
    except ValidationError as e:
        raise InputError(f"Malformed report: {e.errors()[0]['msg']}") from e


def plot_points(points: Sequence[LogLogPoint]) -> List[str]:
    return [f"{math.log(p.scale)!r} {math.log(p.measure)!r}" for p in points]


def emit_plotdata(records: Sequence[TrackRecord]) -> str:
    if not records:
        raise InputError("plotdata needs at least one record")
    blocks = []
    for record in records:
        peak = record.peak_window()
        title = record.entry.title if record.entry else ""
        lines = [
            f"# {title}",
            f"# window offset={peak.offset!r} dimension={peak.estimate.dimension!r}",
        ]
        lines.extend(plot_points(peak.estimate.points))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def aggregate_by_tag(records: Sequence[TrackRecord], tag_key: str) -> Dict[str, TagMaximum]:
    """
    Largest summary_max per value of a tag.

    Records lacking the tag are grouped under "untagged". Ties keep the
    record listed first.

    Returns:
        Mapping tag value -> TagMaximum, sorted by tag value

    Raises:
        InputError: If there are no records or none carries the tag
    """
    if not records:
        raise InputError("Cannot aggregate an empty record set")

    df = pd.DataFrame(
        {
            "tag_value": [r.entry.tags.get(tag_key, UNTAGGED) if r.entry else UNTAGGED for r in records],
            "summary_max": [r.summary_max for r in records],
            "title": [r.entry.title if r.entry else "" for r in records],
        }
    )
    if not any(r.entry is not None and tag_key in r.entry.tags for r in records):
        raise InputError(f"No record carries the tag {tag_key!r}")

    grouped = df.groupby("tag_value", sort=True)["summary_max"]
    peak_rows = grouped.idxmax()
    # idxmax returns the first row on ties
    counts = grouped.size()
    maxima = {}
    for tag_value, row_index in peak_rows.items():
        row = df.loc[row_index]
        maxima[str(tag_value)] = TagMaximum(
            tag_value=str(tag_value),
            max_dimension=float(row["summary_max"]),
            title=str(row["title"]),
            track_count=int(counts[tag_value]),
        )
    logger.info(f"Aggregated {len(records)} records into {len(maxima)} groups by {tag_key!r}")
    return maxima


def emit_aggregate(maxima: Dict[str, TagMaximum], tag_key: str) -> str:
    """CSV with columns <tag_key>, max_dimension, title, track_count."""
    df = pd.DataFrame(
        [
            {
                tag_key: m.tag_value,
                "max_dimension": m.max_dimension,
                "title": m.title,
                "track_count": m.track_count,
            }
            for m in maxima.values()
        ],
        columns=[tag_key, "max_dimension", "title", "track_count"],
    )
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def emit_agreement(table: pd.DataFrame) -> str:
    buffer = io.StringIO()
    table.to_csv(buffer, lineterminator="\n")
    return buffer.getvalue()

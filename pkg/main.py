"""
Command-line entry point.

    python main.py synth KIND OUT.wav [options]
    python main.py analyze FILE.wav [options]
    python main.py boxdim SOURCE [options]
    python main.py validate [options]
    python main.py corpus MANIFEST [options]

Data goes to standard output, diagnostics to standard error. Exit status is
0 on success, 1 when an analysis or validation fails and 2 on usage, I/O or
parse errors.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from audio.wav_codec import read_wav_file, write_wav_file
from boxcount.box_counting import SWEEP_STEPS, box_dimension, default_box_sizes, dyadic_box_sizes, triadic_box_sizes
from boxcount.fractals import (
    FILLED_SQUARE_POINTS,
    SEGMENT_POINTS,
    SQUARE_BOUNDARY_POINTS,
    gen_filled_square,
    gen_julia_boundary,
    gen_koch,
    gen_segment,
    gen_sierpinski_carpet,
    gen_square_boundary,
    julia_params,
)
from boxcount.point_files import read_point_file, write_point_file
from config.settings import VERSION, load_settings
from corpus.classification import EXPECTATION_TAG, expectation_agreement
from corpus.manifest import read_manifest
from corpus.pipeline import analyze_track, config_fingerprint, run_manifest
from corpus.reports import (
    aggregate_by_tag,
    emit_agreement,
    emit_aggregate,
    emit_report,
    plot_points,
)
from data.audio_clip import AudioClip, SampleFormat, WindowPlan
from data.errors import (
    EstimationError,
    FractalToolkitError,
    TrackAnalysisError,
)
from data.estimates import DimensionEstimate, HiguchiConfig
from data.point_set import RABBIT_C
from data.time_series import TimeSeries, WeierstrassParams
from data.track_record import CorpusRun, TrackEntry
from signals.generators import (
    gen_ramp,
    gen_sine,
    gen_square,
    gen_triangle,
    gen_weierstrass,
    gen_white_noise,
    weierstrass_params,
)
from validation.suite import all_passed, format_results, run_validation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

SYNTH_KINDS = ("sine", "square", "triangle", "weierstrass", "noise", "ramp")
BOX_GENERATORS = ("koch", "carpet", "rabbit", "circle", "julia", "segment", "filled-square", "square-boundary")
DEFAULT_LEVELS = {"koch": 6, "carpet": 5}
LATTICE_POINTS = {
    "segment": SEGMENT_POINTS,
    "filled-square": FILLED_SQUARE_POINTS,
    "square-boundary": SQUARE_BOUNDARY_POINTS,
}


class UsageError(FractalToolkitError):
    """Flags that cannot be combined"""


def build_parser(default_jobs: int, default_report_dir: str, default_log_level: str) -> argparse.ArgumentParser:
    formatter = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="fractaltool",
        description="Fractal dimension of signals, audio files and planar point sets",
        formatter_class=formatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument(
        "--log-level",
        default=default_log_level,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Diagnostics level on standard error",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="Render a reference signal to a WAV file", formatter_class=formatter)
    synth.add_argument("kind", choices=SYNTH_KINDS)
    synth.add_argument("out", help="Output WAV path")
    synth.add_argument("--freq", type=float, default=440.0, help="Frequency in Hz (sine, square, triangle)")
    synth.add_argument("--sample-rate", type=int, default=44100, help="Samples per second")
    synth.add_argument("--duration", type=float, default=2.0, help="Length in seconds")
    synth.add_argument("--amplitude", type=float, default=1.0, help="Peak amplitude (sine, square, triangle, noise)")
    synth.add_argument("--a", type=float, default=None, help="Weierstrass amplitude ratio, 0 < a < 1")
    synth.add_argument("--b", type=float, default=None, help="Weierstrass frequency ratio, b > 1 (5 with --dimension)")
    synth.add_argument("--dimension", type=float, default=None, help="Weierstrass target dimension in (1, 2); solves a from b")
    synth.add_argument("--n-terms", type=int, default=None, help="Weierstrass terms (default: until a^n < 1e-6)")
    synth.add_argument("--seed", type=int, default=0, help="Noise seed")
    synth.add_argument("--samples", type=int, default=1000, help="Ramp length in samples")
    synth.add_argument("--bit-depth", default="16", help="8, 16, 24, 32 or float")

    analyze = sub.add_parser("analyze", help="Higuchi dimension of a WAV file, window by window", formatter_class=formatter)
    analyze.add_argument("path", help="WAV file")
    _add_analysis_flags(analyze)
    analyze.add_argument("--plotdata", default=None, help="Write (ln k, ln L) of the peak window to this file")

    boxdim = sub.add_parser("boxdim", help="Box-counting dimension of a generated set or x,y point file", formatter_class=formatter)
    boxdim.add_argument("source", help=f"One of {', '.join(BOX_GENERATORS)} or a point file")
    boxdim.add_argument("--level", type=int, default=None, help="Construction level (default: koch 6, carpet 5)")
    boxdim.add_argument("--grid", type=int, default=1024, help="Julia grid resolution per side")
    boxdim.add_argument("--max-iter", type=int, default=256, help="Julia escape-time iterations")
    boxdim.add_argument("--c", type=complex, default=RABBIT_C, help="Julia parameter for the julia source, e.g. -0.123+0.745j")
    boxdim.add_argument("--escape-radius", type=float, default=2.0, help="Julia escape radius, at least 2")
    boxdim.add_argument(
        "--points",
        type=int,
        default=None,
        help=f"Lattice points per side (default: {', '.join(f'{k} {v}' for k, v in LATTICE_POINTS.items())})",
    )
    boxdim.add_argument(
        "--steps", type=int, default=SWEEP_STEPS, help="Sizes in the geometric sweep used for Julia sets and point files"
    )
    boxdim.add_argument("--plotdata", default=None, help="Write (ln eps, ln N) pairs to this file")
    boxdim.add_argument("--export", default=None, help="Write the point set to this file")

    validate = sub.add_parser("validate", help="Run the built-in validation matrix", formatter_class=formatter)
    validate.add_argument("--k-max", type=int, default=None, help="Override k_max of every Higuchi row")

    corpus = sub.add_parser("corpus", help="Analyze every track of a manifest", formatter_class=formatter)
    corpus.add_argument("manifest", help="Tab-separated manifest: path then key=value tags")
    _add_analysis_flags(corpus)
    corpus.add_argument("--jobs", type=int, default=default_jobs, help="Worker processes")
    corpus.add_argument("--out-dir", default=default_report_dir, help="Directory for report files")
    corpus.add_argument("--aggregate", default=None, metavar="TAG", help="Also write the per-TAG maximum table")
    corpus.add_argument(
        "--agreement",
        nargs="?",
        const=EXPECTATION_TAG,
        default=None,
        metavar="TAG",
        help=f"Also write the TAG x classification crosstab (TAG defaults to {EXPECTATION_TAG})",
    )
    corpus.add_argument("--plotdata", action="store_true", help="Also write report.plotdata")
    return parser


def _add_analysis_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k-max", type=int, default=None, help="Largest Higuchi step (default: min((N-1)//2, 16))")
    parser.add_argument("--window", type=float, default=2.0, help="Window length in seconds")
    parser.add_argument("--hop", type=float, default=1.0, help="Window hop in seconds")


def _analysis_setup(args) -> tuple:
    try:
        plan = WindowPlan(window_length=args.window, hop=args.hop)
        config = HiguchiConfig(k_max=args.k_max)
    except ValidationError as e:
        raise UsageError(e.errors()[0]["msg"]) from e
    return plan, config


def _print_header(*lines: str) -> None:
    print(f"# fractaltool {VERSION}")
    for line in lines:
        print(f"# {line}")


def _print_estimate(estimate: DimensionEstimate) -> None:
    print(f"dimension\t{estimate.dimension:.6f}")
    print(f"slope\t{estimate.slope:.6f}")
    print(f"intercept\t{estimate.intercept:.6f}")
    print(f"r_squared\t{estimate.r_squared:.6f}")
    print(f"points\t{len(estimate.points)}")
    print(f"excluded\t{estimate.excluded_count}")


def _write_text(path, text: str) -> None:
    Path(path).write_text(text)
    logger.info(f"Wrote {path}")


def cmd_synth(args) -> int:
    try:
        sample_format = SampleFormat.from_token(args.bit_depth)
    except ValueError as e:
        raise UsageError(str(e)) from e
    kind = args.kind
    if kind == "weierstrass":
        series = _synth_weierstrass(args)
    elif kind == "sine":
        series = gen_sine(args.freq, args.sample_rate, args.duration, args.amplitude)
    elif kind == "square":
        series = gen_square(args.freq, args.sample_rate, args.duration, args.amplitude)
    elif kind == "triangle":
        series = gen_triangle(args.freq, args.sample_rate, args.duration, args.amplitude)
    elif kind == "noise":
        series = gen_white_noise(args.seed, args.sample_rate, args.duration, args.amplitude)
    else:
        series = gen_ramp(args.samples)

    peak = float(abs(series.samples).max())
    if peak > 1.0:
        # affine rescaling leaves the dimension unchanged
        logger.info(f"Scaling {kind} by 1/{peak:.6g} to fit the WAV range")
        series = series.scaled(1.0 / peak)

    clip = AudioClip(
        sample_rate=max(1, int(round(series.sample_rate))),
        sample_format=sample_format,
        frames=series.samples,
    )
    write_wav_file(args.out, clip)
    _print_header(f"synth {kind}")
    print(f"file\t{args.out}")
    print(f"samples\t{len(series)}")
    if series.theoretical_dimension is not None:
        print(f"theoretical_dimension\t{series.theoretical_dimension:.4f}")
    return EXIT_OK


def _synth_weierstrass(args) -> TimeSeries:
    if args.dimension is not None:
        if args.a is not None:
            raise UsageError("--dimension and --a are mutually exclusive")
        b = args.b if args.b is not None else 5.0
        try:
            params = WeierstrassParams.for_dimension(args.dimension, b)
        except (ValueError, ValidationError) as e:
            raise UsageError(f"Invalid Weierstrass target: {e}") from e
        if args.n_terms is not None:
            params = weierstrass_params(params.a, params.b, args.n_terms)
    else:
        if args.a is None or args.b is None:
            raise UsageError("weierstrass needs --a and --b, or --dimension")
        params = weierstrass_params(args.a, args.b, args.n_terms)
    return gen_weierstrass(params, args.sample_rate, args.duration)


def cmd_analyze(args) -> int:
    plan, config = _analysis_setup(args)
    fingerprint = config_fingerprint(plan, config)
    clip = read_wav_file(args.path)
    entry = TrackEntry(path=args.path, title=Path(args.path).stem)
    record = analyze_track(clip, plan, config, fingerprint).model_copy(update={"entry": entry})

    _print_header(f"config {fingerprint}", f"file {args.path}")
    print("offset\tdimension\tr_squared")
    for window in record.window_estimates:
        if window.succeeded:
            print(f"{window.offset:.3f}\t{window.estimate.dimension:.6f}\t{window.estimate.r_squared:.6f}")
        else:
            print(f"{window.offset:.3f}\tfailed\t{window.error}")
    print(f"summary_max\t{record.summary_max:.6f}")
    print(f"summary_mean\t{record.summary_mean:.6f}")
    print(f"classification\t{record.classification.value}")

    if args.plotdata:
        _write_text(args.plotdata, emit_report([record], "plotdata"))
    return EXIT_OK


def _box_source(args):
    source = args.source
    if source not in BOX_GENERATORS:
        return read_point_file(source), None
    level = args.level if args.level is not None else DEFAULT_LEVELS.get(source)
    if source == "koch":
        return gen_koch(level), triadic_box_sizes(level) if level >= 2 else None
    if source == "carpet":
        return gen_sierpinski_carpet(level), triadic_box_sizes(level) if level >= 2 else None
    points = args.points if args.points is not None else LATTICE_POINTS.get(source)
    if source == "segment":
        return gen_segment(points), dyadic_box_sizes()
    if source == "filled-square":
        return gen_filled_square(points), dyadic_box_sizes()
    if source == "square-boundary":
        return gen_square_boundary(points), dyadic_box_sizes()
    c = {"rabbit": RABBIT_C, "circle": 0j}.get(source, args.c)
    params = julia_params(
        c=c, grid_resolution=args.grid, max_iter=args.max_iter, escape_radius=args.escape_radius
    )
    return gen_julia_boundary(params), None


def cmd_boxdim(args) -> int:
    if args.level is not None and args.source not in DEFAULT_LEVELS:
        raise UsageError(f"--level applies to {' and '.join(DEFAULT_LEVELS)} only")
    if args.points is not None and args.source not in LATTICE_POINTS:
        raise UsageError(f"--points applies to {', '.join(LATTICE_POINTS)} only")
    point_set, sizes = _box_source(args)
    if sizes is None:
        sizes = default_box_sizes(point_set, args.steps)
    if args.export:
        write_point_file(point_set, args.export)
    estimate = box_dimension(point_set, sizes)

    _print_header(f"boxdim {point_set.label or args.source}")
    _print_estimate(estimate)
    if args.plotdata:
        lines = [f"# {point_set.label or args.source}"] + plot_points(estimate.points)
        _write_text(args.plotdata, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_validate(args) -> int:
    results = run_validation(k_max=args.k_max)
    _print_header("validate" + (f" k_max={args.k_max}" if args.k_max is not None else ""))
    sys.stdout.write(format_results(results))
    return EXIT_OK if all_passed(results) else EXIT_FAILURE


def cmd_corpus(args) -> int:
    plan, config = _analysis_setup(args)
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    manifest_path = Path(args.manifest)
    entries = read_manifest(manifest_path)
    run: CorpusRun = run_manifest(entries, plan, config, jobs=args.jobs, base_dir=manifest_path.parent)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = {
        "report.csv": emit_report(run, "csv"),
        "report.json": emit_report(run, "json"),
    }
    if args.plotdata and run.records:
        written["report.plotdata"] = emit_report(run, "plotdata")
    if args.aggregate and run.records:
        maxima = aggregate_by_tag(run.records, args.aggregate)
        written[f"aggregate_{args.aggregate}.csv"] = emit_aggregate(maxima, args.aggregate)
    if args.agreement and run.records:
        written[f"agreement_{args.agreement}.csv"] = emit_agreement(expectation_agreement(run.records, args.agreement))

    for name, text in written.items():
        _write_text(out_dir / name, text)

    _print_header(f"config {run.config_fingerprint}", f"manifest {args.manifest}")
    print(f"tracks\t{len(entries)}")
    print(f"analyzed\t{len(run.records)}")
    print(f"failed\t{len(run.failures)}")
    for failure in run.failures:
        print(f"failure\t{failure.entry.path}\t{failure.error}")
    for name in written:
        print(f"wrote\t{out_dir / name}")
    return EXIT_FAILURE if run.failures else EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "analyze": cmd_analyze,
    "boxdim": cmd_boxdim,
    "validate": cmd_validate,
    "corpus": cmd_corpus,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        settings = load_settings()
    except FractalToolkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    parser = build_parser(settings.jobs, str(settings.report_dir), settings.log_level)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    logging.basicConfig(stream=sys.stderr, level=args.log_level, format=LOG_FORMAT, force=True)

    try:
        return COMMANDS[args.command](args)
    except (EstimationError, TrackAnalysisError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except (FractalToolkitError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

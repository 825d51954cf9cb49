"""Command-line pipeline: synthesize test scenes, magnify motion between
frames or across sequences, extract line traces, estimate shifts.

Exit codes: 0 success, 1 frame size mismatch, 2 invalid arguments,
3 I/O failure. Results go to stdout, diagnostics to stderr.
"""

import argparse
import sys
from pathlib import Path

from .estimate import estimate_shift
from .magnify import MagnifyParams, SizeMismatchError, iter_magnified, magnify_pair
from .synth import CircleSpec, MotionSignal, render_circles, sample_motion, subpixel_shift
from .video_io import (
    FormatError,
    LineTrace,
    MissingFrameError,
    SequenceManifest,
    extract_line,
    read_frame,
    read_manifest,
    write_frame,
    write_manifest,
    write_trace_csv,
)

EXIT_OK = 0
EXIT_SIZE_MISMATCH = 1
EXIT_BAD_ARGS = 2
EXIT_IO = 3

HIGH_RESIDUAL = 0.5  # radians; above this the shift estimate is unreliable

PAPER42_PRESET = {
    "duration": 5.0,
    "fps": 150.0,
    "height": 709,
    "width": 709,
    "amplitude": 0.5,
    "damping": 0.5,
    "frequency": 10.0,
}


def _parse_circle(text: str) -> CircleSpec:
    parts = text.split(",")
    if len(parts) not in (4, 5):
        raise argparse.ArgumentTypeError(
            "circle must be row,col,radius,sigma[,peak]"
        )
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric circle field in {text!r}") from None
    center = (values[0], values[1])
    if len(values) == 5:
        return CircleSpec(center=center, radius=values[2], sigma=values[3], peak=values[4])
    return CircleSpec(center=center, radius=values[2], sigma=values[3])


def default_circle(height: int, width: int, center=None, radius=None, sigma: float = 3.0) -> CircleSpec:
    """The scene used when no explicit circle is given: one soft disc
    centered on the frame with radius min(N, M)/4."""
    if center is None:
        center = ((height - 1) / 2, (width - 1) / 2)
    if radius is None:
        radius = min(height, width) / 4
    return CircleSpec(center=tuple(center), radius=radius, sigma=sigma)


def _scene_circles(height: int, width: int, args) -> list:
    if args.circle:
        return args.circle
    return [default_circle(height, width, args.center, args.radius, args.sigma)]


def cmd_synth_circle(args) -> int:
    frame = render_circles(args.height, args.width, _scene_circles(args.height, args.width, args))
    write_frame(frame, args.out)
    return EXIT_OK


def cmd_magnify_pair(args) -> int:
    params = MagnifyParams(alpha=args.alpha)
    ref = read_frame(args.ref)
    cur = read_frame(args.in_path)
    write_frame(magnify_pair(ref, cur, params), args.out)
    return EXIT_OK


def cmd_synth_video(args) -> int:
    settings = dict(PAPER42_PRESET) if args.preset else {}
    for key in PAPER42_PRESET:
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    missing = [k for k in PAPER42_PRESET if k not in settings]
    if missing:
        raise ValueError(
            f"missing flags {['--' + k for k in missing]} (or use --preset paper42)"
        )

    common = dict(
        amplitude=settings["amplitude"],
        damping=settings["damping"],
        frequency=settings["frequency"],
        duration=settings["duration"],
        fps=settings["fps"],
    )
    shifts = sample_motion(
        MotionSignal(phase_kind="sine", **common),
        MotionSignal(phase_kind="cosine", **common),
    )
    height = int(settings["height"])
    width = int(settings["width"])
    base = render_circles(height, width, _scene_circles(height, width, args))

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = SequenceManifest(
        directory=outdir,
        frame_count=len(shifts),
        fps=settings["fps"],
        height=height,
        width=width,
    )
    for i, shift in enumerate(shifts):
        write_frame(subpixel_shift(base, shift), manifest.frame_path(i))
        _progress(args, i + 1, len(shifts))
    write_manifest(manifest)
    print(f"wrote {manifest.frame_count} frames to {outdir}")
    return EXIT_OK


def _progress(args, done: int, total: int):
    if getattr(args, "quiet", False):
        return
    if done == total or done % 100 == 0:
        print(f"{done}/{total} frames", file=sys.stderr)


def _iter_sequence_frames(manifest: SequenceManifest):
    for i in range(manifest.frame_count):
        path = manifest.frame_path(i)
        if not path.exists():
            raise MissingFrameError(f"missing frame {i}: {path}")
        frame = read_frame(path)
        if frame.shape != (manifest.height, manifest.width):
            raise FormatError(
                f"{path}: frame is {frame.shape[0]}x{frame.shape[1]}, manifest says "
                f"{manifest.height}x{manifest.width}"
            )
        yield frame


def cmd_magnify_video(args) -> int:
    params = MagnifyParams(alpha=args.alpha)
    manifest = read_manifest(args.indir)
    if manifest.frame_count < 2:
        raise ValueError("sequence must contain at least 2 frames")
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    out_manifest = SequenceManifest(
        directory=outdir,
        frame_count=manifest.frame_count,
        fps=manifest.fps,
        height=manifest.height,
        width=manifest.width,
    )
    magnified = iter_magnified(_iter_sequence_frames(manifest), params, reference=args.mode)
    for i, frame in enumerate(magnified):
        write_frame(frame, out_manifest.frame_path(i))
        _progress(args, i + 1, manifest.frame_count)
    write_manifest(out_manifest)
    print(f"wrote {out_manifest.frame_count} frames to {outdir}")
    return EXIT_OK


def cmd_extract_line(args) -> int:
    manifest = read_manifest(args.indir)
    if not 0 <= args.row < manifest.height:
        raise ValueError(f"row {args.row} out of range for height {manifest.height}")
    trace = extract_line(_iter_sequence_frames(manifest), args.row, fps=manifest.fps)
    write_trace_csv(trace, args.out)
    return EXIT_OK


def cmd_estimate_shift(args) -> int:
    if not 0 < args.band <= 0.5:
        raise ValueError("--band must be in (0, 0.5]")
    ref = read_frame(args.ref)
    cur = read_frame(args.in_path)
    result = estimate_shift(ref, cur, band_fraction=args.band)
    if result.residual > HIGH_RESIDUAL:
        print(
            f"warning: residual {result.residual:.3g} rad is high; the frames "
            "are probably not related by a small global translation",
            file=sys.stderr,
        )
    print(
        f"delta1={result.delta[0]:.12g} delta2={result.delta[1]:.12g} "
        f"residual={result.residual:.12g} bins={result.bins_used}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasemag",
        description="Fourier-phase motion magnification for grayscale frame sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_circle_flags(p):
        p.add_argument("--center", type=float, nargs=2, metavar=("ROW", "COL"),
                       help="circle center (default: frame center)")
        p.add_argument("--radius", type=float, help="circle radius in pixels (default: min(N,M)/4)")
        p.add_argument("--sigma", type=float, default=3.0, help="edge softness in pixels")
        p.add_argument("--circle", type=_parse_circle, action="append",
                       metavar="ROW,COL,RADIUS,SIGMA[,PEAK]",
                       help="explicit circle; repeat for multi-circle scenes "
                            "(overrides --center/--radius/--sigma)")

    p = sub.add_parser("synth-circle", help="render a sigmoid-edged circle frame")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    add_circle_flags(p)
    p.add_argument("--out", required=True, help="output PGM path")
    p.set_defaults(func=cmd_synth_circle)

    p = sub.add_parser("magnify-pair", help="magnify the motion between two frames")
    p.add_argument("--ref", required=True, help="reference frame (PGM)")
    p.add_argument("--in", dest="in_path", required=True, help="moved frame (PGM)")
    p.add_argument("--alpha", type=float, required=True, help="magnification factor")
    p.add_argument("--out", required=True, help="output PGM path")
    p.set_defaults(func=cmd_magnify_pair)

    p = sub.add_parser("synth-video", help="generate a sub-pixel damped-oscillation sequence")
    p.add_argument("--preset", choices=["paper42"],
                   help="paper42: 5 s at 150 fps, 709x709, amplitude 0.5 px, "
                        "damping 0.5 1/s, 10 Hz sine/cosine motion")
    p.add_argument("--duration", type=float, help="seconds")
    p.add_argument("--fps", type=float, help="frames per second")
    p.add_argument("--height", type=int)
    p.add_argument("--width", type=int)
    p.add_argument("--amplitude", type=float, help="motion amplitude in pixels")
    p.add_argument("--damping", type=float, help="exponential decay rate, 1/s")
    p.add_argument("--frequency", type=float, help="oscillation frequency, Hz")
    add_circle_flags(p)
    p.add_argument("--outdir", required=True)
    p.add_argument("--quiet", action="store_true", help="suppress progress output")
    p.set_defaults(func=cmd_synth_video)

    p = sub.add_parser("magnify-video", help="magnify motion across a stored sequence")
    p.add_argument("--indir", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--mode", choices=["first", "previous"], default="first",
                   help="reference frame for each pair (default: first)")
    p.add_argument("--outdir", required=True)
    p.add_argument("--quiet", action="store_true", help="suppress progress output")
    p.set_defaults(func=cmd_magnify_video)

    p = sub.add_parser("extract-line", help="dump one pixel row over time as CSV")
    p.add_argument("--indir", required=True)
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_extract_line)

    p = sub.add_parser("estimate-shift", help="estimate the global shift between two frames")
    p.add_argument("--ref", required=True)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--band", type=float, default=0.125,
                   help="low-frequency band fraction used for the fit (default 0.125)")
    p.set_defaults(func=cmd_estimate_shift)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SizeMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_MISMATCH
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

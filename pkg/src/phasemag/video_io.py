"""Bit-exact frame and sequence persistence plus line-trace extraction.

Frames are stored as binary PGM (magic P5, maxval 255, one byte per
pixel, row-major). A sequence directory holds frame_NNNNNN.pgm files and
a plain-text manifest.txt with one key=value per line. All writes go to
a temporary file first and are renamed into place on success, so a
failure never leaves a truncated output behind.
"""

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .spectral import as_frame, quantize

MAX_SIDE = 16384
MANIFEST_NAME = "manifest.txt"
_MANIFEST_KEYS = ("frame_count", "fps", "height", "width")


class FormatError(ValueError):
    """Malformed PGM or manifest content."""


class MissingFrameError(FileNotFoundError):
    """A frame file referenced by a manifest does not exist."""


def frame_filename(index: int) -> str:
    return f"frame_{index:06d}.pgm"


def _atomic_write(path, data: bytes):
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def encode_frame(frame) -> bytes:
    """Serialize a frame to PGM bytes. Values must already lie in [0, 255];
    fractional values are rounded at the 8-bit boundary."""
    f = as_frame(frame)
    n, m = f.shape
    if n > MAX_SIDE or m > MAX_SIDE:
        raise ValueError(f"frame dimensions {n}x{m} exceed the {MAX_SIDE} limit")
    if not np.all(np.isfinite(f)):
        raise ValueError("frame values must be finite")
    if float(f.min()) < 0.0 or float(f.max()) > 255.0:
        raise ValueError("frame values must lie in [0, 255] before writing")
    header = f"P5\n{m} {n}\n255\n".encode("ascii")
    return header + quantize(f).astype(np.uint8).tobytes()


def write_frame(frame, path):
    _atomic_write(path, encode_frame(frame))


def decode_frame(data: bytes) -> np.ndarray:
    """Parse PGM bytes into a float64 frame. Tolerates header whitespace
    and single-line # comments."""
    pos = 0

    def next_token():
        nonlocal pos
        while pos < len(data):
            ch = data[pos : pos + 1]
            if ch == b"#":
                nl = data.find(b"\n", pos)
                if nl < 0:
                    raise FormatError("unterminated comment in header")
                pos = nl + 1
            elif ch.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError("truncated header")
        return data[start:pos]

    magic = next_token()
    if magic != b"P5":
        raise FormatError(f"not a binary PGM (magic {magic!r}, expected b'P5')")
    try:
        width = int(next_token())
        height = int(next_token())
        maxval = int(next_token())
    except ValueError as exc:
        raise FormatError(f"non-numeric header field: {exc}") from None
    if width < 1 or height < 1:
        raise FormatError(f"invalid dimensions {width}x{height}")
    if width > MAX_SIDE or height > MAX_SIDE:
        raise FormatError(f"dimensions {width}x{height} exceed the {MAX_SIDE} limit")
    if maxval != 255:
        raise FormatError(f"unsupported maxval {maxval} (only 255)")
    pos += 1  # exactly one whitespace byte separates header and payload
    payload = data[pos:]
    if len(payload) != width * height:
        raise FormatError(
            f"payload holds {len(payload)} bytes, expected {width * height}"
        )
    pixels = np.frombuffer(payload, dtype=np.uint8)
    return pixels.reshape(height, width).astype(np.float64)


def read_frame(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return decode_frame(fh.read())


@dataclass(frozen=True)
class SequenceManifest:
    directory: Path
    frame_count: int
    fps: float
    height: int
    width: int

    def __post_init__(self):
        if self.frame_count < 1:
            raise ValueError("frame_count must be >= 1")
        if self.fps <= 0:
            raise ValueError("fps must be > 0")
        if self.height < 1 or self.width < 1:
            raise ValueError("frame dimensions must be >= 1")

    def frame_path(self, index: int) -> Path:
        return Path(self.directory) / frame_filename(index)

    def frame_paths(self):
        return [self.frame_path(i) for i in range(self.frame_count)]


def write_manifest(manifest: SequenceManifest):
    lines = [
        f"frame_count={manifest.frame_count}",
        f"fps={manifest.fps:.12g}",
        f"height={manifest.height}",
        f"width={manifest.width}",
    ]
    _atomic_write(Path(manifest.directory) / MANIFEST_NAME, ("\n".join(lines) + "\n").encode("ascii"))


def read_manifest(directory) -> SequenceManifest:
    directory = Path(directory)
    path = directory / MANIFEST_NAME
    try:
        text = path.read_text(encoding="ascii")
    except FileNotFoundError:
        raise FileNotFoundError(f"no {MANIFEST_NAME} in {directory}") from None
    fields = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or key not in _MANIFEST_KEYS:
            raise FormatError(f"{path}:{lineno}: unrecognized manifest line {line!r}")
        fields[key] = value
    missing = [k for k in _MANIFEST_KEYS if k not in fields]
    if missing:
        raise FormatError(f"{path}: missing manifest keys {missing}")
    try:
        return SequenceManifest(
            directory=directory,
            frame_count=int(fields["frame_count"]),
            fps=float(fields["fps"]),
            height=int(fields["height"]),
            width=int(fields["width"]),
        )
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None


def write_sequence(frames, fps: float, directory) -> SequenceManifest:
    """Store frames under the fixed naming pattern plus a manifest.

    The manifest is written last, so its presence marks a complete
    sequence.
    """
    directory = Path(directory)
    frames = list(frames)
    if not frames:
        raise ValueError("sequence must contain at least one frame")
    first = as_frame(frames[0])
    directory.mkdir(parents=True, exist_ok=True)
    for i, frame in enumerate(frames):
        f = as_frame(frame)
        if f.shape != first.shape:
            raise ValueError(f"frame {i} has shape {f.shape}, expected {first.shape}")
        write_frame(f, directory / frame_filename(i))
    manifest = SequenceManifest(
        directory=directory,
        frame_count=len(frames),
        fps=float(fps),
        height=first.shape[0],
        width=first.shape[1],
    )
    write_manifest(manifest)
    return manifest


def read_sequence(manifest) -> list:
    """Load every frame of a sequence; accepts a manifest or a directory."""
    if not isinstance(manifest, SequenceManifest):
        manifest = read_manifest(manifest)
    frames = []
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
        frames.append(frame)
    return frames


@dataclass(frozen=True)
class LineTrace:
    """One pixel row tracked across a sequence: values[t][m] is the
    intensity of column m at frame t."""

    row_index: int
    values: np.ndarray  # (frame_count, width)
    fps: float


def extract_line(frames, row_index: int, fps: float = 1.0) -> LineTrace:
    """Project one row out of every frame. ``frames`` may be any iterable;
    frames are consumed one at a time and not retained."""
    row_index = int(row_index)
    rows = []
    width = None
    for t, frame in enumerate(frames):
        f = as_frame(frame)
        if not 0 <= row_index < f.shape[0]:
            raise ValueError(
                f"row {row_index} out of range for frame {t} of height {f.shape[0]}"
            )
        if width is None:
            width = f.shape[1]
        elif f.shape[1] != width:
            raise ValueError(f"frame {t} has width {f.shape[1]}, expected {width}")
        rows.append(f[row_index].copy())
    if not rows:
        raise ValueError("no frames to trace")
    return LineTrace(row_index=row_index, values=np.vstack(rows), fps=float(fps))


def write_trace_csv(trace: LineTrace, path):
    """CSV with header "t,m0,m1,..."; one row per frame starting with the
    frame time t = i/fps. Decimal separator is '.', newline is LF."""
    width = trace.values.shape[1]
    lines = ["t," + ",".join(f"m{i}" for i in range(width))]
    for i, row in enumerate(trace.values):
        t = i / trace.fps
        lines.append(",".join(f"{v:.12g}" for v in (t, *row)))
    _atomic_write(path, ("\n".join(lines) + "\n").encode("ascii"))

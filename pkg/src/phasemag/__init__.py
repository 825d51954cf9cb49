"""Global motion magnification of grayscale video frames via the phase of
their 2D discrete Fourier transforms, plus the synthetic scenes, sub-pixel
shift estimation, and trace extraction needed to exercise it end to end."""

from .estimate import ShiftEstimate, estimate_shift
from .magnify import (
    MagnifyParams,
    SizeMismatchError,
    apply_magnification,
    half_spectrum_partition,
    iter_magnified,
    magnify_pair,
    magnify_sequence,
    phase_ratio,
)
from .spectral import (
    HermitianSymmetryError,
    check_hermitian,
    circular_shift,
    dft2,
    idft2,
    quantize,
    self_conjugate_bins,
)
from .synth import (
    CircleSpec,
    MotionSignal,
    generate_video,
    render_circles,
    sample_motion,
    subpixel_shift,
)
from .video_io import (
    FormatError,
    LineTrace,
    MissingFrameError,
    SequenceManifest,
    extract_line,
    read_frame,
    read_manifest,
    read_sequence,
    write_frame,
    write_sequence,
    write_trace_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CircleSpec",
    "FormatError",
    "HermitianSymmetryError",
    "LineTrace",
    "MagnifyParams",
    "MissingFrameError",
    "MotionSignal",
    "SequenceManifest",
    "ShiftEstimate",
    "SizeMismatchError",
    "apply_magnification",
    "check_hermitian",
    "circular_shift",
    "dft2",
    "estimate_shift",
    "extract_line",
    "generate_video",
    "half_spectrum_partition",
    "idft2",
    "iter_magnified",
    "magnify_pair",
    "magnify_sequence",
    "phase_ratio",
    "quantize",
    "read_frame",
    "read_manifest",
    "read_sequence",
    "render_circles",
    "sample_motion",
    "self_conjugate_bins",
    "subpixel_shift",
    "write_frame",
    "write_sequence",
    "write_trace_csv",
]

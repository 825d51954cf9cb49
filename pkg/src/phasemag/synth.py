"""Synthetic test content: sigmoid-edged circles, exact sub-pixel shifts,
and damped-oscillation motion sampling for video sequences."""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .spectral import as_frame, dft2, idft2, quantize


@dataclass(frozen=True)
class CircleSpec:
    """A soft-edged disc: intensity peak inside, falling to zero through a
    logistic edge profile of softness sigma (pixels)."""

    center: tuple[float, float]  # (row, col), pixels
    radius: float
    sigma: float
    peak: float = 255.0

    def __post_init__(self):
        if len(self.center) != 2:
            raise ValueError("center must be a (row, col) pair")
        if self.radius <= 0:
            raise ValueError("radius must be > 0")
        if self.sigma <= 0:
            raise ValueError("sigma must be > 0")
        if not 0 < self.peak <= 255:
            raise ValueError("peak must be in (0, 255]")


@dataclass(frozen=True)
class MotionSignal:
    """Damped oscillation delta(t) = amplitude * exp(-damping*t) * {sin|cos}(2*pi*frequency*t),
    sampled at ``fps`` frames per second over ``duration`` seconds."""

    amplitude: float
    damping: float
    frequency: float
    phase_kind: str  # "sine" | "cosine"
    duration: float
    fps: float

    def __post_init__(self):
        if self.phase_kind not in ("sine", "cosine"):
            raise ValueError(f"phase_kind must be 'sine' or 'cosine', got {self.phase_kind!r}")
        if self.fps <= 0:
            raise ValueError("fps must be > 0")
        if self.duration <= 0:
            raise ValueError("duration must be > 0")
        if self.damping < 0:
            raise ValueError("damping must be >= 0 (shift magnitude may not exceed amplitude)")

    def evaluate(self, t):
        osc = np.sin if self.phase_kind == "sine" else np.cos
        return self.amplitude * np.exp(-self.damping * np.asarray(t)) * osc(
            2.0 * np.pi * self.frequency * np.asarray(t)
        )


def render_circles(height: int, width: int, circles) -> np.ndarray:
    """Render soft circles onto an N x M frame.

    pixel(n, m) = max over circles of peak / (1 + exp((dist - radius) / sigma))
    with dist the Euclidean distance from (n, m) to the circle center, so
    the intensity crosses peak/2 exactly on the circle boundary. Values
    are clamped to [0, 255] but not quantized.
    """
    if height < 1 or width < 1:
        raise ValueError("height and width must be >= 1")
    rows = np.arange(height, dtype=np.float64)[:, None]
    cols = np.arange(width, dtype=np.float64)[None, :]
    out = np.zeros((height, width))
    for spec in circles:
        if not isinstance(spec, CircleSpec):
            spec = CircleSpec(*spec)
        dist = np.hypot(rows - spec.center[0], cols - spec.center[1])
        # peak/(1+e^x) == peak*expit(-x), which never overflows
        np.maximum(out, spec.peak * expit(-(dist - spec.radius) / spec.sigma), out=out)
    return np.clip(out, 0.0, 255.0)


def _shift_factors(size: int, delta: float) -> np.ndarray:
    """Per-bin spectral factors for a translation by ``delta`` along one axis,
    over signed frequencies; the Nyquist bin of an even axis gets the
    real-preserving cos(pi*delta)."""
    signed = np.fft.fftfreq(size, d=1.0 / size)
    factors = np.exp(2j * np.pi * delta * signed / size)
    if size % 2 == 0:
        factors[size // 2] = np.cos(np.pi * delta)
    return factors


def subpixel_shift(frame, delta, quantize_output: bool = True) -> np.ndarray:
    """Translate a frame by a real-valued (delta_row, delta_col) via the
    spectral shift property.

    Multiplies the spectrum by exp(2*pi*i*(d1*k'/N + d2*l'/M)) over signed
    frequency indices, so integer deltas coincide with circular_shift.
    With ``quantize_output`` the result is clamped and rounded at the
    8-bit boundary; otherwise the raw real-valued reconstruction is
    returned (used when quantization noise would swamp sub-pixel phase).
    """
    f = as_frame(frame)
    d1, d2 = float(delta[0]), float(delta[1])
    n, m = f.shape
    spec = dft2(f) * np.outer(_shift_factors(n, d1), _shift_factors(m, d2))
    out = idft2(spec)
    return quantize(out) if quantize_output else out


def sample_motion(signal1: MotionSignal, signal2: MotionSignal) -> np.ndarray:
    """Sample a (row, col) motion-signal pair at t = i/fps.

    Returns a (count, 2) array of shift vectors with
    count = floor(duration * fps) + 1 (both endpoints included).
    """
    if signal1.fps != signal2.fps:
        raise ValueError("motion signals must share the same fps")
    if signal1.duration != signal2.duration:
        raise ValueError("motion signals must share the same duration")
    count = int(np.floor(signal1.duration * signal1.fps)) + 1
    t = np.arange(count) / signal1.fps
    return np.column_stack([signal1.evaluate(t), signal2.evaluate(t)])


def generate_video(base, shifts, quantize_output: bool = True) -> list:
    """One frame per shift vector: frame[i] = subpixel_shift(base, shifts[i])."""
    base = as_frame(base)
    shifts = np.asarray(shifts, dtype=np.float64)
    if shifts.size == 0:
        raise ValueError("shift list must not be empty")
    if shifts.ndim != 2 or shifts.shape[1] != 2:
        raise ValueError("shifts must be a sequence of (d1, d2) pairs")
    return [subpixel_shift(base, s, quantize_output=quantize_output) for s in shifts]

"""Forward/inverse 2D DFT and Hermitian-symmetry utilities.

A frame is a real-valued 2D array indexed (n, m) with n the row and m the
column; its spectrum is the full complex (N, M) array indexed (k, l). The
forward transform uses the negative-exponent convention and the 1/(N*M)
normalization sits entirely on the inverse. All math runs in double
precision; 8-bit quantization happens only at I/O boundaries.
"""

import numpy as np
import scipy.fft


class HermitianSymmetryError(ValueError):
    """A spectrum expected to come from a real image is not Hermitian."""


def as_frame(frame) -> np.ndarray:
    """Coerce to a non-empty 2D float64 array, validating shape."""
    arr = np.asarray(frame, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"frame must be a non-empty 2D array, got shape {arr.shape}")
    return arr


def as_spectrum(spectrum) -> np.ndarray:
    """Coerce to a non-empty 2D complex128 array, validating shape."""
    arr = np.asarray(spectrum, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"spectrum must be a non-empty 2D array, got shape {arr.shape}")
    return arr


def dft2(frame) -> np.ndarray:
    """2D DFT of a real frame.

    Returns the full complex (N, M) spectrum
    S(k, l) = sum_n sum_m frame(n, m) * exp(-2*pi*i*k*n/N) * exp(-2*pi*i*l*m/M).
    """
    return scipy.fft.fft2(as_frame(frame))


def idft2(spectrum, imag_tol: float = 1e-8) -> np.ndarray:
    """Inverse 2D DFT with 1/(N*M) normalization; returns the real part.

    The discarded imaginary parts must not exceed ``imag_tol`` times the
    peak output intensity; a larger residue means the spectrum was not
    Hermitian-symmetric (corrupted input or a symmetry-bookkeeping bug)
    and raises HermitianSymmetryError.
    """
    out = scipy.fft.ifft2(as_spectrum(spectrum))
    max_imag = float(np.max(np.abs(out.imag)))
    if max_imag > imag_tol * float(np.max(np.abs(out.real))):
        raise HermitianSymmetryError(
            f"inverse transform has imaginary residue {max_imag:.3e}; "
            "spectrum violates Hermitian symmetry"
        )
    return np.ascontiguousarray(out.real)


def self_conjugate_bins(height: int, width: int) -> list[tuple[int, int]]:
    """Bins that are their own conjugate partner: DC, plus the Nyquist
    row/column/corner when the respective dimension is even. These are
    necessarily real in the spectrum of a real frame."""
    bins = [(0, 0)]
    if height % 2 == 0:
        bins.append((height // 2, 0))
    if width % 2 == 0:
        bins.append((0, width // 2))
    if height % 2 == 0 and width % 2 == 0:
        bins.append((height // 2, width // 2))
    return bins


def check_hermitian(spectrum, tol: float) -> bool:
    """True iff bin (k, l) conjugate-matches bin ((N-k) mod N, (M-l) mod M)
    within ``tol`` for every bin, and every self-conjugate bin has
    imaginary part at most ``tol``."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    s = as_spectrum(spectrum)
    n, m = s.shape
    mirrored = s[np.ix_(-np.arange(n) % n, -np.arange(m) % m)]
    if float(np.max(np.abs(s - np.conj(mirrored)))) > tol:
        return False
    return all(abs(s[k, l].imag) <= tol for k, l in self_conjugate_bins(n, m))


def circular_shift(frame, d1: int, d2: int) -> np.ndarray:
    """Periodic integer translation: output(n, m) = input((n+d1) mod N, (m+d2) mod M)."""
    return np.roll(as_frame(frame), shift=(-int(d1), -int(d2)), axis=(0, 1))


def quantize(frame) -> np.ndarray:
    """Materialize a frame at the 8-bit boundary: clamp to [0, 255], then
    round half away from zero. Returns integer-valued float64."""
    clipped = np.clip(as_frame(frame), 0.0, 255.0)
    # all values are >= 0 after clamping, so away-from-zero == upward
    return np.floor(clipped + 0.5)

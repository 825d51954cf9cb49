"""Recover the global (d1, d2) shift between two frames from spectral phase.

For a pure global translation the phase of the normalized spectral ratio
is the plane 2*pi*(d1*k'/N + d2*l'/M) over signed frequencies. A weighted
plane fit on principal-value phases, restricted to a low-frequency band,
recovers the shift without phase unwrapping; out-of-band (wrapping)
shifts show up as large residuals.
"""

from dataclasses import dataclass

import numpy as np

from .magnify import SizeMismatchError
from .spectral import as_frame, dft2, self_conjugate_bins


@dataclass(frozen=True)
class ShiftEstimate:
    delta: tuple[float, float]  # (d1, d2), pixels
    residual: float  # weighted RMS phase misfit, radians
    bins_used: int


def estimate_shift(frame1, frame2, band_fraction: float = 0.125) -> ShiftEstimate:
    """Fit the spectral phase plane between two equal-sized frames.

    Uses bins with signed frequencies |k'| <= band_fraction*N and
    |l'| <= band_fraction*M, excluding DC and self-conjugate bins, with
    weights min(|S1|, |S2|). Valid without wrap only while the in-band
    true phase stays within (-pi, pi] (guaranteed for per-component
    shifts below 1/(4*band_fraction)); larger shifts still return an
    estimate but with a large residual that callers must treat as
    unreliable.

    Raises ValueError when fewer than 3 usable bins remain or every
    in-band weight sits below the magnitude floor.
    """
    if not 0 < band_fraction <= 0.5:
        raise ValueError("band_fraction must be in (0, 0.5]")
    f1 = as_frame(frame1)
    f2 = as_frame(frame2)
    if f1.shape != f2.shape:
        raise SizeMismatchError(f"frame sizes differ: {f1.shape} vs {f2.shape}")
    n, m = f1.shape
    s1 = dft2(f1)
    s2 = dft2(f2)

    k_signed = np.fft.fftfreq(n, d=1.0 / n)
    l_signed = np.fft.fftfreq(m, d=1.0 / m)
    in_band = (np.abs(k_signed)[:, None] <= band_fraction * n) & (
        np.abs(l_signed)[None, :] <= band_fraction * m
    )
    for k, l in self_conjugate_bins(n, m):
        in_band[k, l] = False

    weights = np.minimum(np.abs(s1), np.abs(s2))
    floor = 1e-12 * n * m * 255.0
    usable = in_band & (weights > floor)
    bins_used = int(np.count_nonzero(usable))
    if bins_used < 3:
        if np.count_nonzero(in_band) >= 3:
            raise ValueError("all in-band spectral magnitudes below the floor")
        raise ValueError(f"only {bins_used} usable bins; need at least 3")

    phases = np.angle(s2[usable] * np.conj(s1[usable]))
    w = weights[usable]
    kk, ll = np.meshgrid(k_signed, l_signed, indexing="ij")
    design = 2.0 * np.pi * np.column_stack([kk[usable] / n, ll[usable] / m])

    # weighted normal equations, 2 unknowns, no intercept (zero phase at DC)
    wx = design * w[:, None]
    try:
        delta = np.linalg.solve(wx.T @ design, wx.T @ phases)
    except np.linalg.LinAlgError as exc:
        raise ValueError("usable bins do not constrain both shift components") from exc
    misfit = phases - design @ delta
    residual = float(np.sqrt(np.sum(w * misfit**2) / np.sum(w)))
    return ShiftEstimate(delta=(float(delta[0]), float(delta[1])), residual=residual, bins_used=bins_used)

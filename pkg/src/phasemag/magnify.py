"""Global motion magnification between frame pairs in the DFT domain.

The motion between two frames shows up as a unit-modulus phase ratio
between their spectra. Raising that ratio to the power alpha and applying
it to the second frame's spectrum turns a translation delta into
(1 + alpha) * delta. The magnified spectrum is only ever computed on a
half-spectrum index set chosen by the parity of N and M; the remaining
bins are filled by conjugate symmetry so the reconstruction stays real.
"""

from dataclasses import dataclass

import numpy as np

from .spectral import (
    as_frame,
    as_spectrum,
    dft2,
    idft2,
    quantize,
    self_conjugate_bins,
)

RATIO_MODULUS_TOL = 1e-12


class SizeMismatchError(ValueError):
    """The two inputs do not have identical dimensions."""


@dataclass(frozen=True)
class MagnifyParams:
    """Magnification factor plus numerical tolerances.

    alpha may be any real: negative values attenuate or reverse the
    motion, zero reproduces the second frame. mag_floor is the spectral
    magnitude below which a bin carries no usable phase; None picks the
    size-dependent default 1e-12 * N * M * 255. sym_tol scales the
    Hermitian check tolerance of the magnified spectrum.
    """

    alpha: float
    mag_floor: float | None = None
    sym_tol: float = 1e-9

    def __post_init__(self):
        if self.mag_floor is not None and self.mag_floor < 0:
            raise ValueError("mag_floor must be >= 0")
        if self.sym_tol < 0:
            raise ValueError("sym_tol must be >= 0")

    def resolved_mag_floor(self, height: int, width: int) -> float:
        if self.mag_floor is not None:
            return self.mag_floor
        return 1e-12 * height * width * 255.0


def half_spectrum_partition(height: int, width: int):
    """Index bookkeeping for the parity case analysis.

    Returns ``(computed, partner, fixed)``: ``computed`` and ``partner``
    are equal-length pairs of index arrays such that bin partner[i] is the
    conjugate mirror of bin computed[i]; ``fixed`` lists the
    self-conjugate bins (DC plus Nyquist bins for even dimensions) that
    are purely real and never modified. The three sets partition all
    N*M bins exactly once.
    """
    n, m = height, width
    k_half = np.arange(1, (n + 1) // 2)  # rows 1 .. ceil(N/2)-1
    l_half = np.arange(1, (m + 1) // 2)

    k_parts = [np.zeros(l_half.size, dtype=np.intp), k_half]
    l_parts = [l_half, np.zeros(k_half.size, dtype=np.intp)]
    if n % 2 == 0:
        # extra symmetry along the center row k = N/2
        k_parts.append(np.full(l_half.size, n // 2, dtype=np.intp))
        l_parts.append(l_half)
    if m % 2 == 0:
        # extra symmetry along the center column l = M/2
        k_parts.append(k_half)
        l_parts.append(np.full(k_half.size, m // 2, dtype=np.intp))
    # interior block (k, l) and its companion block (k, M-l)
    kk, ll = np.meshgrid(k_half, l_half, indexing="ij")
    k_parts += [kk.ravel(), kk.ravel()]
    l_parts += [ll.ravel(), (m - ll).ravel()]

    k_comp = np.concatenate(k_parts)
    l_comp = np.concatenate(l_parts)
    computed = (k_comp, l_comp)
    partner = ((n - k_comp) % n, (m - l_comp) % m)
    return computed, partner, self_conjugate_bins(n, m)


def phase_ratio(spec1, spec2, params: MagnifyParams) -> np.ndarray:
    """Unit-modulus bin-wise ratio of the normalized spectra.

    E(k, l) = (spec2/|spec2|) / (spec1/|spec1|) wherever both magnitudes
    exceed mag_floor; bins without usable phase get E = 1, as do the DC
    bin and the self-conjugate Nyquist bins (which are never
    phase-modified downstream).
    """
    s1 = as_spectrum(spec1)
    s2 = as_spectrum(spec2)
    if s1.shape != s2.shape:
        raise SizeMismatchError(f"spectrum shapes differ: {s1.shape} vs {s2.shape}")
    n, m = s1.shape
    floor = params.resolved_mag_floor(n, m)

    a1 = np.abs(s1)
    a2 = np.abs(s2)
    usable = (a1 > floor) & (a2 > floor)
    ratio = np.ones((n, m), dtype=np.complex128)
    np.divide(s2 * np.conj(s1), a1 * a2, out=ratio, where=usable)
    for k, l in self_conjugate_bins(n, m):
        ratio[k, l] = 1.0
    return ratio


def apply_magnification(spec2, ratio, params: MagnifyParams) -> np.ndarray:
    """Multiply spec2 by ratio**alpha over the half-spectrum index set and
    fill the rest by conjugate symmetry.

    ratio**alpha is exp(i * alpha * Arg(ratio)) with Arg the principal
    argument in (-pi, pi]. The DC bin and the purely-real Nyquist
    intersection bins are left unchanged, which keeps the inverse
    transform real.
    """
    s2 = as_spectrum(spec2)
    r = as_spectrum(ratio)
    if s2.shape != r.shape:
        raise SizeMismatchError(f"spectrum and ratio shapes differ: {s2.shape} vs {r.shape}")
    if float(np.max(np.abs(np.abs(r) - 1.0))) > RATIO_MODULUS_TOL:
        raise ValueError("ratio is not unit modulus everywhere")
    if r[0, 0] != 1.0:
        raise ValueError("ratio DC bin must be exactly 1")

    (kc, lc), (kj, lj), _fixed = half_spectrum_partition(*s2.shape)
    out = s2.copy()  # fixed bins keep their original (real) values
    out[kc, lc] = s2[kc, lc] * np.exp(1j * params.alpha * np.angle(r[kc, lc]))
    out[kj, lj] = np.conj(out[kc, lc])
    return out


def _magnify_against(spec1, frame2, params: MagnifyParams) -> np.ndarray:
    """Magnify frame2 against a precomputed reference spectrum."""
    s2 = dft2(frame2)
    magnified = apply_magnification(s2, phase_ratio(spec1, s2, params), params)
    return quantize(idft2(magnified))


def magnify_pair(frame1, frame2, params: MagnifyParams) -> np.ndarray:
    """Magnify the motion from frame1 to frame2 by the factor alpha.

    A translation of delta between the inputs becomes (1 + alpha) * delta
    in the output (circularly, since DFT translations wrap around the
    frame edges). The result is clamped to [0, 255] and rounded at the
    8-bit boundary.

    Raises SizeMismatchError when the frames differ in size (the CLI maps
    this to exit code 1).
    """
    f1 = as_frame(frame1)
    f2 = as_frame(frame2)
    if f1.shape != f2.shape:
        raise SizeMismatchError(f"frame sizes differ: {f1.shape} vs {f2.shape}")
    return _magnify_against(dft2(f1), f2, params)


def iter_magnified(frames, params: MagnifyParams, reference: str = "first"):
    """Lazily magnify a frame sequence; yields one output frame per input.

    The first output frame is the first input frame unchanged. In
    ``first`` mode every later frame is magnified against frame 0 (the
    default; a growing trajectory relative to the start is amplified
    cleanly). In ``previous`` mode frame t is magnified against input
    frame t-1.
    """
    if reference not in ("first", "previous"):
        raise ValueError(f"reference must be 'first' or 'previous', got {reference!r}")
    iterator = iter(frames)
    try:
        first = as_frame(next(iterator))
    except StopIteration:
        raise ValueError("sequence must contain at least 2 frames") from None
    yield first
    ref_spec = dft2(first) if reference == "first" else None
    prev = first
    count = 1
    for raw in iterator:
        cur = as_frame(raw)
        if cur.shape != first.shape:
            raise SizeMismatchError(
                f"frame {count} has shape {cur.shape}, expected {first.shape}"
            )
        if reference == "previous":
            ref_spec = dft2(prev)
        yield _magnify_against(ref_spec, cur, params)
        prev = cur
        count += 1
    if count < 2:
        raise ValueError("sequence must contain at least 2 frames")


def magnify_sequence(frames, params: MagnifyParams, reference: str = "first") -> list:
    """Magnify an in-memory frame sequence; see iter_magnified."""
    frames = list(frames)
    if len(frames) < 2:
        raise ValueError("sequence must contain at least 2 frames")
    return list(iter_magnified(frames, params, reference))

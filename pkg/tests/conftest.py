import numpy as np
import pytest

from phasemag import CircleSpec, render_circles


def naive_dft2(frame):
    """Direct O(N^2 M^2) double-sum evaluation of the transform definition.

    Deliberately independent of any fast-transform code path; used as the
    oracle for small sizes.
    """
    f = np.asarray(frame, dtype=np.float64)
    n, m = f.shape
    nn = np.arange(n)
    mm = np.arange(m)
    out = np.empty((n, m), dtype=np.complex128)
    for k in range(n):
        row = np.exp(-2j * np.pi * k * nn / n)[:, None]
        for l in range(m):
            col = np.exp(-2j * np.pi * l * mm / m)[None, :]
            out[k, l] = np.sum(f * row * col)
    return out


def shift_theorem_factors(n, m, d1, d2):
    """exp(2*pi*i*(k*d1/N + l*d2/M)) over the unsigned bin grid."""
    k = np.arange(n)[:, None]
    l = np.arange(m)[None, :]
    return np.exp(2j * np.pi * (k * d1 / n + l * d2 / m))


def circle_frame(height, width, rng=None, n_circles=1):
    """A smooth test scene; random geometry when an rng is given."""
    if rng is None:
        r = min(height, width) / 4
        return render_circles(
            height, width,
            [CircleSpec(center=((height - 1) / 2, (width - 1) / 2), radius=r, sigma=3.0)],
        )
    circles = []
    for _ in range(n_circles):
        radius = rng.uniform(min(height, width) / 8, min(height, width) / 4)
        circles.append(CircleSpec(
            center=(rng.uniform(0.3, 0.7) * height, rng.uniform(0.3, 0.7) * width),
            radius=radius,
            sigma=rng.uniform(2.0, 5.0),
        ))
    return render_circles(height, width, circles)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def paper42_dirs(tmp_path_factory):
    """Full-scale damped-oscillation pipeline run once through the CLI:
    751-frame 709x709 sequence, its alpha=40 magnification, and the
    center-row traces of both. Shared by the CLI tests and the trace
    acceptance criterion."""
    from phasemag.cli import main

    root = tmp_path_factory.mktemp("paper42")
    orig = root / "orig"
    mag = root / "mag"
    assert main(["synth-video", "--preset", "paper42", "--outdir", str(orig), "--quiet"]) == 0
    assert main(["magnify-video", "--indir", str(orig), "--alpha", "40",
                 "--mode", "first", "--outdir", str(mag), "--quiet"]) == 0
    assert main(["extract-line", "--indir", str(orig), "--row", "354",
                 "--out", str(root / "orig_trace.csv")]) == 0
    assert main(["extract-line", "--indir", str(mag), "--row", "354",
                 "--out", str(root / "mag_trace.csv")]) == 0
    return root

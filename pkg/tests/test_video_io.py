import numpy as np
import pytest

from phasemag import (
    FormatError,
    MissingFrameError,
    extract_line,
    quantize,
    read_frame,
    read_manifest,
    read_sequence,
    write_frame,
    write_sequence,
    write_trace_csv,
)
from phasemag.video_io import decode_frame, encode_frame, frame_filename


# ------------------------------------------------------------- PGM frames

def test_frame_roundtrip_is_byte_identical(rng, tmp_path):
    f = quantize(rng.random((23, 31)) * 255)
    path = tmp_path / "frame.pgm"
    write_frame(f, path)
    assert np.array_equal(read_frame(path), f)
    first_bytes = path.read_bytes()
    write_frame(read_frame(path), path)
    assert path.read_bytes() == first_bytes


def test_documented_2x3_encoding():
    frame = [[0, 128, 255], [1, 2, 3]]
    expected = b"P5\n3 2\n255\n" + bytes([0x00, 0x80, 0xFF, 0x01, 0x02, 0x03])
    assert encode_frame(frame) == expected
    assert np.array_equal(decode_frame(expected), frame)


def test_read_rejects_wrong_magic():
    with pytest.raises(FormatError):
        decode_frame(b"P6\n2 2\n255\n" + bytes(12))


def test_read_rejects_bad_maxval():
    with pytest.raises(FormatError):
        decode_frame(b"P5\n2 2\n65535\n" + bytes(8))


def test_read_rejects_truncated_payload():
    with pytest.raises(FormatError):
        decode_frame(b"P5\n3 2\n255\n" + bytes(5))
    with pytest.raises(FormatError):
        decode_frame(b"P5\n3 2\n255\n" + bytes(7))  # trailing garbage


def test_read_rejects_oversized_dimensions():
    with pytest.raises(FormatError):
        decode_frame(b"P5\n20000 2\n255\n")


def test_read_tolerates_comments_and_whitespace():
    data = b"P5\n# made by hand\n  3\t2\n# another note\n255\n" + bytes(range(6))
    frame = decode_frame(data)
    assert frame.shape == (2, 3)
    assert frame[1, 2] == 5


def test_write_rejects_out_of_range_values(tmp_path):
    with pytest.raises(ValueError):
        write_frame(np.full((2, 2), 300.0), tmp_path / "bad.pgm")
    with pytest.raises(ValueError):
        write_frame(np.full((2, 2), -1.0), tmp_path / "bad.pgm")
    with pytest.raises(ValueError):
        write_frame(np.full((2, 2), np.nan), tmp_path / "bad.pgm")
    assert list(tmp_path.iterdir()) == []


def test_write_rejects_oversized_frame(tmp_path):
    with pytest.raises(ValueError):
        write_frame(np.zeros((1, 16385)), tmp_path / "bad.pgm")


def test_failed_write_leaves_no_partial_file(tmp_path):
    target = tmp_path / "nonexistent" / "frame.pgm"
    with pytest.raises(OSError):
        write_frame(np.zeros((2, 2)), target)
    assert list(tmp_path.iterdir()) == []


# -------------------------------------------------------------- sequences

def test_sequence_roundtrip(rng, tmp_path):
    frames = [quantize(rng.random((9, 11)) * 255) for _ in range(3)]
    manifest = write_sequence(frames, fps=150.0, directory=tmp_path / "seq")
    assert manifest.frame_count == 3
    assert manifest.fps == 150.0
    assert sorted(p.name for p in (tmp_path / "seq").iterdir()) == [
        "frame_000000.pgm", "frame_000001.pgm", "frame_000002.pgm", "manifest.txt",
    ]
    loaded = read_sequence(manifest)
    for got, want in zip(loaded, frames):
        assert np.array_equal(got, want)
    # reading via the directory path goes through the manifest
    loaded2 = read_sequence(tmp_path / "seq")
    assert len(loaded2) == 3


def test_manifest_contents(rng, tmp_path):
    write_sequence([quantize(rng.random((4, 6)) * 255)], fps=24.0, directory=tmp_path)
    text = (tmp_path / "manifest.txt").read_text()
    assert text == "frame_count=1\nfps=24\nheight=4\nwidth=6\n"
    manifest = read_manifest(tmp_path)
    assert (manifest.frame_count, manifest.fps, manifest.height, manifest.width) == (1, 24.0, 4, 6)


def test_missing_frame_error_names_the_index(rng, tmp_path):
    frames = [quantize(rng.random((5, 5)) * 255) for _ in range(3)]
    manifest = write_sequence(frames, fps=10.0, directory=tmp_path)
    manifest.frame_path(1).unlink()
    with pytest.raises(MissingFrameError, match="frame 1"):
        read_sequence(manifest)


def test_sequence_dimension_disagreement(rng, tmp_path):
    frames = [quantize(rng.random((5, 5)) * 255) for _ in range(2)]
    manifest = write_sequence(frames, fps=10.0, directory=tmp_path)
    write_frame(np.zeros((4, 5)), manifest.frame_path(1))
    with pytest.raises(FormatError):
        read_sequence(manifest)


def test_write_sequence_rejects_ragged_frames(tmp_path):
    with pytest.raises(ValueError):
        write_sequence([np.zeros((4, 4)), np.zeros((4, 5))], fps=10.0, directory=tmp_path)


def test_write_sequence_rejects_bad_fps(tmp_path):
    with pytest.raises(ValueError):
        write_sequence([np.zeros((4, 4))] * 2, fps=0.0, directory=tmp_path)


def test_manifest_rejects_unknown_and_missing_keys(tmp_path):
    (tmp_path / "manifest.txt").write_text("frame_count=1\nfps=10\nheight=2\nwidth=2\ncolor=red\n")
    with pytest.raises(FormatError):
        read_manifest(tmp_path)
    (tmp_path / "manifest.txt").write_text("frame_count=1\nfps=10\nheight=2\n")
    with pytest.raises(FormatError):
        read_manifest(tmp_path)


def test_frame_filename_pattern():
    assert frame_filename(0) == "frame_000000.pgm"
    assert frame_filename(750) == "frame_000750.pgm"


# ------------------------------------------------------------ line traces

def test_constant_frames_give_identical_csv_rows(tmp_path):
    frames = [np.full((4, 5), 9.0)] * 3
    trace = extract_line(frames, 2, fps=10.0)
    path = tmp_path / "trace.csv"
    write_trace_csv(trace, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,m0,m1,m2,m3,m4"
    assert [l.partition(",")[2] for l in lines[1:]] == ["9,9,9,9,9"] * 3


def test_single_frame_trace_row():
    trace = extract_line([np.array([[7.0, 8.0, 9.0]])], 0, fps=1.0)
    assert trace.values.shape == (1, 3)
    assert np.array_equal(trace.values[0], [7, 8, 9])


def test_trace_csv_documented_row(tmp_path):
    trace = extract_line([np.array([[7.0, 8.0, 9.0]])], 0, fps=1.0)
    write_trace_csv(trace, tmp_path / "t.csv")
    assert (tmp_path / "t.csv").read_text() == "t,m0,m1,m2\n0,7,8,9\n"


def test_trace_times_use_fps(tmp_path):
    frames = [np.array([[1.0]]), np.array([[2.0]]), np.array([[3.0]])]
    write_trace_csv(extract_line(frames, 0, fps=4.0), tmp_path / "t.csv")
    lines = (tmp_path / "t.csv").read_text().splitlines()
    assert [l.split(",")[0] for l in lines[1:]] == ["0", "0.25", "0.5"]


def test_extract_line_is_a_pure_projection(rng):
    frames = [rng.random((6, 7)) * 255 for _ in range(4)]
    trace = extract_line(frames, 3, fps=5.0)
    permuted = []
    for f in frames:
        g = f.copy()
        g[[0, 1]] = g[[1, 0]]  # rows other than 3 may change freely
        permuted.append(g)
    trace2 = extract_line(permuted, 3, fps=5.0)
    assert np.array_equal(trace.values, trace2.values)


def test_extract_line_rejects_bad_rows(rng):
    frames = [rng.random((4, 5))]
    with pytest.raises(ValueError):
        extract_line(frames, 4)
    with pytest.raises(ValueError):
        extract_line(frames, -1)
    with pytest.raises(ValueError):
        extract_line([], 0)


def test_extract_line_consumes_iterables_lazily(rng):
    def gen():
        for _ in range(3):
            yield rng.random((4, 5))

    trace = extract_line(gen(), 1, fps=2.0)
    assert trace.values.shape == (3, 5)

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from uvwdecomp.errors import PGMFormatError, UnsupportedFormatError
from uvwdecomp.pgm import decode_pgm, encode_pgm, encode_pgm_ascii, read_image, to_bytes, write_image

SAMPLE = b"P5\n2 2\n255\n" + bytes([0, 255, 128, 64])


def test_decode_p5():
    np.testing.assert_array_equal(decode_pgm(SAMPLE), [[0, 255], [128, 64]])


def test_decode_p2_equivalent():
    assert np.array_equal(decode_pgm(b"P2\n# comment\n2 2\n255\n0 255\n128 64\n"), decode_pgm(SAMPLE))


def test_header_comments_p5():
    data = b"P5 # made by hand\n2 # width\n2\n255\n" + bytes([1, 2, 3, 4])
    np.testing.assert_array_equal(decode_pgm(data), [[1, 2], [3, 4]])


def test_wrong_magic():
    with pytest.raises(PGMFormatError, match="offset 0"):
        decode_pgm(b"P6\n2 2\n255\n" + bytes(12))


def test_unsupported_maxval():
    with pytest.raises(UnsupportedFormatError) as exc:
        decode_pgm(b"P5\n2 2\n65535\n" + bytes(8))
    assert exc.value.offset == 7


def test_truncated_raster():
    with pytest.raises(PGMFormatError, match="truncated raster") as exc:
        decode_pgm(SAMPLE[:-1])
    assert exc.value.offset == len(SAMPLE) - 1


def test_truncated_header_and_bad_tokens():
    with pytest.raises(PGMFormatError, match="truncated header"):
        decode_pgm(b"P5\n2 2")
    with pytest.raises(PGMFormatError, match="invalid width"):
        decode_pgm(b"P5\nx 2\n255\n")
    with pytest.raises(PGMFormatError, match="exceeds maxval"):
        decode_pgm(b"P2\n1 2\n255\n3 300\n")


def test_quantization_modes():
    img = np.array([[-3.2, 260.0], [0.0, 127.6]])
    np.testing.assert_array_equal(to_bytes(img, "clamp"), [[0, 255], [0, 128]])
    np.testing.assert_array_equal(to_bytes(np.zeros((2, 2)), "center"), 128)
    with pytest.raises(ValueError):
        to_bytes(img, "wrap")


def test_write_read_file(tmp_path):
    img = np.array([[0.0, 255.0, 17.0], [128.0, 64.0, 3.0]])
    path = tmp_path / "x.pgm"
    write_image(path, img)
    assert path.read_bytes() == b"P5\n3 2\n255\n" + bytes([0, 255, 17, 128, 64, 3])
    np.testing.assert_array_equal(read_image(path), img)


def test_write_error_names_path(tmp_path):
    missing = tmp_path / "nope" / "x.pgm"
    with pytest.raises(OSError, match="nope"):
        write_image(missing, np.zeros((2, 2)))


@given(arrays(np.uint8, st.tuples(st.integers(2, 12), st.integers(2, 12))))
def test_roundtrip_byte_exact(q):
    img = q.astype(np.float64)
    assert np.array_equal(decode_pgm(encode_pgm(img)), img)
    assert np.array_equal(decode_pgm(encode_pgm_ascii(img)), img)
    assert encode_pgm(decode_pgm(encode_pgm(img))) == encode_pgm(img)

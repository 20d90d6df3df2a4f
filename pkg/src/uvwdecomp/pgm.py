"""8-bit grayscale PGM (P5 binary, P2 ASCII) reading and P5 writing."""

import numpy as np

from .errors import PGMFormatError, UnsupportedFormatError
from .grid import as_image

_WS = b" \t\r\n\v\f"


def _tokens(data, start, count):
    """Read ``count`` whitespace-separated header tokens, skipping ``#`` comments.

    Returns ``(tokens, offsets, pos)`` with ``pos`` just past the last token.
    """
    toks, offs = [], []
    pos = start
    n = len(data)
    while len(toks) < count:
        while pos < n and data[pos] in _WS:
            pos += 1
        if pos < n and data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        if pos >= n:
            raise PGMFormatError("truncated header", pos)
        begin = pos
        while pos < n and data[pos] not in _WS and data[pos] != ord("#"):
            pos += 1
        toks.append(data[begin:pos])
        offs.append(begin)
    return toks, offs, pos


def _int_token(tok, off, what):
    if not tok.isdigit():
        raise PGMFormatError(f"invalid {what} {tok!r}", off)
    return int(tok)


def decode_pgm(data):
    """Decode PGM bytes into a float64 image with intensities in [0, 255]."""
    if len(data) < 2:
        raise PGMFormatError("truncated magic number", len(data))
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise PGMFormatError(f"wrong magic number {magic!r}, expected P5 or P2", 0)
    toks, offs, pos = _tokens(data, 2, 3)
    width = _int_token(toks[0], offs[0], "width")
    height = _int_token(toks[1], offs[1], "height")
    maxval = _int_token(toks[2], offs[2], "maxval")
    if width < 1 or height < 1:
        raise PGMFormatError(f"invalid dimensions {width}x{height}", offs[0])
    if maxval != 255:
        raise UnsupportedFormatError(f"unsupported maxval {maxval}, only 255 is supported", offs[2])
    count = width * height
    if magic == b"P5":
        if pos >= len(data) or data[pos] not in _WS:
            raise PGMFormatError("missing whitespace after maxval", pos)
        pos += 1
        if len(data) - pos < count:
            raise PGMFormatError(f"truncated raster: need {count} bytes, have {len(data) - pos}",
                                 len(data))
        pixels = np.frombuffer(data, dtype=np.uint8, count=count, offset=pos)
    else:
        vals, voffs, _ = _tokens(data, pos, count)
        pixels = np.empty(count, dtype=np.int64)
        for i, (tok, off) in enumerate(zip(vals, voffs)):
            value = _int_token(tok, off, "sample")
            if value > maxval:
                raise PGMFormatError(f"sample {value} exceeds maxval {maxval}", off)
            pixels[i] = value
    return pixels.reshape(height, width).astype(np.float64)


def read_image(path):
    with open(path, "rb") as fh:
        return decode_pgm(fh.read())


def to_bytes(img, mode="clamp"):
    """Quantize to uint8. ``center`` adds 128 first, for signed components."""
    img = as_image(img)
    if mode == "center":
        img = img + 128.0
    elif mode != "clamp":
        raise ValueError(f"unknown mode {mode!r}, expected 'clamp' or 'center'")
    return np.rint(np.clip(img, 0.0, 255.0)).astype(np.uint8)


def encode_pgm(img, mode="clamp"):
    q = to_bytes(img, mode)
    header = f"P5\n{q.shape[1]} {q.shape[0]}\n255\n".encode("ascii")
    return header + q.tobytes()


def encode_pgm_ascii(img):
    q = to_bytes(img, "clamp")
    rows = "\n".join(" ".join(str(int(x)) for x in row) for row in q)
    return f"P2\n{q.shape[1]} {q.shape[0]}\n255\n{rows}\n".encode("ascii")


def write_image(path, img, mode="clamp"):
    data = encode_pgm(img, mode)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc

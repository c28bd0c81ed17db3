"""Portable greymap (P2/P5, maxval 255) reading and writing.

File samples ``p`` in ``[0, 255]`` map to internal greys ``g = p + 1`` in
``[1, 256]``; writing applies the inverse ``p = g - 1``.
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from .grid import PALETTE_MAX, GreyImage

FORMATS = ("pgm-ascii", "pgm-binary")


class PGMError(OSError):
    """Base class for greymap decoding failures."""


class PGMHeaderError(PGMError):
    pass


class PGMMaxvalError(PGMError):
    pass


class PGMDimensionError(PGMError):
    pass


class PGMTruncatedError(PGMError):
    pass


class UnquantizedImageError(ValueError):
    """Image is not integer-valued in ``[1, 256]``; renormalize before writing."""


def _tokens(data: bytes, count: int, pos: int = 0):
    """Pull ``count`` whitespace-separated header tokens, skipping ``#`` comments."""
    out = []
    n = len(data)
    while len(out) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise PGMHeaderError("unexpected end of header")
        out.append(data[start:pos])
    return out, pos


def decode_pgm(data: bytes) -> GreyImage:
    (magic, w, h, maxval), pos = _tokens(data, 4)
    if magic not in (b"P2", b"P5"):
        raise PGMHeaderError(f"not a P2/P5 greymap (magic {magic!r})")
    try:
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise PGMHeaderError("non-numeric width, height or maxval") from None
    if width <= 0 or height <= 0:
        raise PGMHeaderError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise PGMMaxvalError(f"maxval must be 255, got {maxval}")
    if width != height:
        raise PGMDimensionError(f"image must be square, got {width}x{height}")
    if width < 2:
        raise PGMDimensionError(f"image must be at least 2x2, got {width}x{height}")
    count = width * height
    if magic == b"P5":
        raster = data[pos + 1:pos + 1 + count]
        if len(raster) < count:
            raise PGMTruncatedError(f"expected {count} bytes of raster, got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        words = data[pos:].split()
        if len(words) < count:
            raise PGMTruncatedError(f"expected {count} samples, got {len(words)}")
        try:
            pixels = np.array([int(x) for x in words[:count]])
        except ValueError:
            raise PGMHeaderError("non-numeric sample in ASCII raster") from None
        if pixels.min() < 0 or pixels.max() > 255:
            raise PGMHeaderError("ASCII sample outside [0, 255]")
    return GreyImage(pixels.reshape(height, width).astype(np.float64) + 1.0)


def encode_pgm(img, fmt: str = "pgm-binary") -> bytes:
    g = np.asarray(getattr(img, "values", img), dtype=np.float64)
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if g.ndim != 2 or np.any(g != np.round(g)) or g.min() < 1 or g.max() > PALETTE_MAX:
        raise UnquantizedImageError("image must be integer-valued in [1, 256]; renormalize first")
    p = (g - 1).astype(np.uint8)
    rows, cols = p.shape
    if fmt == "pgm-binary":
        return f"P5\n{cols} {rows}\n255\n".encode() + p.tobytes()
    body = "\n".join(" ".join(str(v) for v in row) for row in p)
    return f"P2\n{cols} {rows}\n255\n{body}\n".encode()


def read_pgm(path) -> GreyImage:
    """Read a square P2/P5 greymap; ``"-"`` reads standard input."""
    if str(path) == "-":
        return decode_pgm(sys.stdin.buffer.read())
    return decode_pgm(Path(path).read_bytes())


def write_pgm(img, path, fmt: str = "pgm-binary") -> None:
    data = encode_pgm(img, fmt)
    if str(path) == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)

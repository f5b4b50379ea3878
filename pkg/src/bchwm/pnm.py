"""Binary PGM (P5) and PBM (P4) reading and writing."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


class PnmError(ValueError):
    pass


def _header(data: bytes, count: int) -> tuple[list[bytes], int]:
    tokens = []
    pos = 0
    for _ in range(count):
        match = _TOKEN.match(data, pos)
        if match is None:
            raise PnmError("truncated header")
        tokens.append(match.group(1))
        pos = match.end()
    # exactly one whitespace byte separates header from raster
    return tokens, pos + 1


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    (magic, w, h, maxval), start = _header(data, 4)
    if magic != b"P5":
        raise PnmError(f"{path}: not a binary PGM (magic {magic!r})")
    width, height, maxval = int(w), int(h), int(maxval)
    if maxval != 255:
        raise PnmError(f"{path}: only maxval 255 is supported, got {maxval}")
    raster = data[start:start + width * height]
    if len(raster) != width * height:
        raise PnmError(f"{path}: raster truncated")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(path, image) -> None:
    image = np.asarray(image)
    if image.dtype != np.uint8 or image.ndim != 2:
        raise PnmError("PGM output needs a 2-D uint8 array")
    height, width = image.shape
    Path(path).write_bytes(b"P5\n%d %d\n255\n" % (width, height) + image.tobytes())


def read_pbm(path) -> np.ndarray:
    """Read a P4 bitmap as a {0,1} uint8 array (1 = black, per PBM)."""
    data = Path(path).read_bytes()
    (magic, w, h), start = _header(data, 3)
    if magic != b"P4":
        raise PnmError(f"{path}: not a binary PBM (magic {magic!r})")
    width, height = int(w), int(h)
    row_bytes = (width + 7) // 8
    raster = np.frombuffer(data[start:start + row_bytes * height], dtype=np.uint8)
    if raster.size != row_bytes * height:
        raise PnmError(f"{path}: raster truncated")
    bits = np.unpackbits(raster.reshape(height, row_bytes), axis=1)
    return bits[:, :width].copy()


def write_pbm(path, bits) -> None:
    bits = np.asarray(bits).astype(np.uint8)
    if bits.ndim != 2:
        raise PnmError("PBM output needs a 2-D array")
    height, width = bits.shape
    packed = np.packbits(bits & 1, axis=1)
    Path(path).write_bytes(b"P4\n%d %d\n" % (width, height) + packed.tobytes())

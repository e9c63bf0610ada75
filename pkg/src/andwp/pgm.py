"""PGM (portable graymap) reader and writer for 8-bit grayscale images.

Supports binary (P5) and ASCII (P2) variants with maxval 255 only. Images
are represented as 2-D ``numpy.ndarray`` of dtype ``uint8``, shape
``(height, width)``.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

_WHITESPACE = b" \t\n\r\x0b\x0c"
# P2 bodies are wrapped so no line exceeds 70 characters (17 * "255 " = 68).
_P2_VALUES_PER_LINE = 17


class PgmError(ValueError):
    """Raised when a PGM stream cannot be parsed or is unsupported."""


class _Tokenizer:
    """Pulls whitespace-separated tokens from a PGM byte stream.

    ``#`` starts a comment running to end of line; comments may appear
    anywhere whitespace may.
    """

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip_filler(self):
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = self.data[self.pos : self.pos + 1]
            if c in (b"#",):
                eol = data.find(b"\n", self.pos)
                self.pos = n if eol < 0 else eol + 1
            elif c in _WHITESPACE:
                self.pos += 1
            else:
                return

    def next_token(self, what: str) -> bytes:
        self._skip_filler()
        if self.pos >= len(self.data):
            raise PgmError(f"truncated PGM stream: missing {what}")
        start = self.pos
        while self.pos < len(self.data):
            c = self.data[self.pos : self.pos + 1]
            if c in _WHITESPACE or c == b"#":
                break
            self.pos += 1
        return self.data[start : self.pos]

    def next_int(self, what: str) -> int:
        tok = self.next_token(what)
        try:
            return int(tok)
        except ValueError:
            raise PgmError(f"invalid {what} in PGM header: {tok!r}") from None

    def skip_single_separator(self):
        # Binary pixel data begins after exactly one whitespace byte.
        if self.pos >= len(self.data):
            raise PgmError("truncated PGM stream: missing pixel data")
        if self.data[self.pos : self.pos + 1] not in _WHITESPACE:
            raise PgmError("malformed PGM header: maxval not followed by whitespace")
        self.pos += 1


def load_pgm(data: bytes) -> np.ndarray:
    """Parse a P5 or P2 PGM byte stream into a (height, width) uint8 array.

    Pixel values are taken verbatim; no rescaling is performed. Raises
    :class:`PgmError` on a malformed header, maxval other than 255, zero
    dimensions, or truncated pixel data.
    """
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise TypeError("load_pgm expects a byte stream")
    tok = _Tokenizer(bytes(data))
    magic = tok.next_token("magic number")
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"not a PGM stream: bad magic number {magic!r}")
    width = tok.next_int("width")
    height = tok.next_int("height")
    if width <= 0 or height <= 0:
        raise PgmError(f"invalid PGM dimensions {width} x {height}")
    maxval = tok.next_int("maxval")
    if maxval != 255:
        raise PgmError(f"unsupported maxval {maxval} (only 255 is supported)")

    count = width * height
    if magic == b"P5":
        tok.skip_single_separator()
        body = tok.data[tok.pos : tok.pos + count]
        if len(body) < count:
            raise PgmError(
                f"truncated PGM pixel data: expected {count} bytes, got {len(body)}"
            )
        flat = np.frombuffer(body, dtype=np.uint8, count=count)
    else:
        values = np.empty(count, dtype=np.uint8)
        for i in range(count):
            v = tok.next_int("pixel value")
            if not 0 <= v <= 255:
                raise PgmError(f"pixel value {v} out of range [0, 255]")
            values[i] = v
        flat = values
    return flat.reshape(height, width).copy()


def save_pgm(img: np.ndarray, format: str = "P5") -> bytes:
    """Serialize a uint8 image to PGM bytes with the canonical header.

    ``format`` is ``"P5"`` (binary, default) or ``"P2"`` (ASCII).
    """
    from .image import check_image

    img = check_image(img)
    if format not in ("P5", "P2"):
        raise ValueError(f"unknown PGM format {format!r}; expected 'P5' or 'P2'")
    h, w = img.shape
    header = f"{format}\n{w} {h}\n255\n".encode("ascii")
    if format == "P5":
        return header + img.tobytes()
    flat = img.ravel()
    lines = []
    for start in range(0, flat.size, _P2_VALUES_PER_LINE):
        chunk = flat[start : start + _P2_VALUES_PER_LINE]
        lines.append(" ".join(str(int(v)) for v in chunk))
    return header + "\n".join(lines).encode("ascii") + b"\n"


def read_pgm(path: str | os.PathLike) -> np.ndarray:
    """Read a PGM file from disk."""
    return load_pgm(Path(path).read_bytes())


def write_pgm(path: str | os.PathLike, img: np.ndarray, format: str = "P5") -> None:
    """Write an image to disk as PGM."""
    Path(path).write_bytes(save_pgm(img, format=format))


def mask_to_image(mask: np.ndarray) -> np.ndarray:
    """Render a boolean mask as a {0, 255} uint8 image for PGM persistence."""
    mask = np.asarray(mask)
    if mask.dtype != bool:
        raise TypeError("mask_to_image expects a boolean array")
    return np.where(mask, np.uint8(255), np.uint8(0))


def image_to_mask(img: np.ndarray) -> np.ndarray:
    """Interpret a grayscale image as a boolean mask (nonzero = True)."""
    from .image import check_image

    return check_image(img) != 0

"""8-bit grayscale images and PGM (P2/P5) serialization."""

from __future__ import annotations

from pathlib import Path

import numpy as np

__all__ = [
    "GrayImage",
    "PgmError",
    "MalformedHeaderError",
    "UnsupportedMaxvalError",
    "TruncatedPayloadError",
    "ZeroDimensionError",
    "MalformedPayloadError",
    "read_pgm",
    "write_pgm",
    "load_pgm",
    "save_pgm",
]


class PgmError(ValueError):
    """Base class for PGM parse failures."""


class MalformedHeaderError(PgmError):
    pass


class UnsupportedMaxvalError(PgmError):
    pass


class TruncatedPayloadError(PgmError):
    pass


class ZeroDimensionError(PgmError):
    pass


class MalformedPayloadError(PgmError):
    pass


class GrayImage:
    """An immutable 8-bit grayscale raster.

    Pixels are held as a read-only ``uint8`` array of shape ``(height, width)``.
    """

    __slots__ = ("_pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D pixel array, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError(f"pixels must be integers, got {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("pixel values must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8, copy=True)
        arr.flags.writeable = False
        self._pixels = arr

    @classmethod
    def from_buffer(cls, width: int, height: int, buffer) -> GrayImage:
        """Build an image from a row-major buffer of ``width * height`` values."""
        if width < 1 or height < 1:
            raise ValueError("width and height must be positive")
        flat = np.asarray(buffer) if not isinstance(buffer, (bytes, bytearray, memoryview)) \
            else np.frombuffer(buffer, dtype=np.uint8)
        if flat.size != width * height:
            raise ValueError(f"buffer holds {flat.size} values, expected {width * height}")
        return cls(flat.reshape(height, width))

    @property
    def pixels(self) -> np.ndarray:
        return self._pixels

    @property
    def width(self) -> int:
        return self._pixels.shape[1]

    @property
    def height(self) -> int:
        return self._pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self._pixels.shape

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._pixels, other._pixels))

    def __hash__(self):
        return hash((self.shape, self._pixels.tobytes()))

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


_WHITESPACE = b" \t\n\r\v\f"


class _Tokens:
    """Header tokenizer honouring '#' comments between tokens."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def next(self, what: str) -> bytes:
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos:self.pos + 1]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == b"#":
                eol = data.find(b"\n", self.pos)
                self.pos = n if eol < 0 else eol + 1
            else:
                break
        start = self.pos
        while self.pos < n and data[self.pos:self.pos + 1] not in _WHITESPACE + b"#":
            self.pos += 1
        if start == self.pos:
            raise MalformedHeaderError(f"unexpected end of data while reading {what}")
        return data[start:self.pos]

    def next_int(self, what: str, error=MalformedHeaderError) -> int:
        tok = self.next(what)
        if not tok.isdigit():
            raise error(f"{what} must be a non-negative integer, got {tok!r}")
        return int(tok)


def read_pgm(data: bytes) -> GrayImage:
    """Parse a binary (P5) or ASCII (P2) PGM stream with maxval <= 255.

    Pixel values are returned as stored; no rescaling to 255 is applied.
    """
    data = bytes(data)
    tokens = _Tokens(data)
    try:
        magic = tokens.next("magic number")
    except MalformedHeaderError:
        raise MalformedHeaderError("empty PGM stream") from None
    if magic not in (b"P2", b"P5"):
        raise MalformedHeaderError(f"unsupported magic number {magic!r}")
    width = tokens.next_int("width")
    height = tokens.next_int("height")
    maxval = tokens.next_int("maxval")
    if width == 0 or height == 0:
        raise ZeroDimensionError(f"zero image dimension {width}x{height}")
    if maxval == 0:
        raise MalformedHeaderError("maxval must be positive")
    if maxval > 255:
        raise UnsupportedMaxvalError(f"unsupported maxval {maxval} (only <= 255 is supported)")
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        if tokens.pos >= len(data) or data[tokens.pos:tokens.pos + 1] not in _WHITESPACE:
            raise TruncatedPayloadError("missing raster after header")
        start = tokens.pos + 1
        raster = data[start:start + count]
        if len(raster) < count:
            raise TruncatedPayloadError(f"raster has {len(raster)} bytes, expected {count}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        values = []
        for i in range(count):
            try:
                values.append(tokens.next_int("pixel", error=MalformedPayloadError))
            except MalformedHeaderError:
                raise TruncatedPayloadError(f"found {i} pixel values, expected {count}") from None
        pixels = np.array(values, dtype=np.int64)

    if pixels.size and pixels.max() > maxval:
        raise MalformedPayloadError(f"pixel value {int(pixels.max())} exceeds maxval {maxval}")
    return GrayImage(pixels.reshape(height, width))


def write_pgm(image: GrayImage) -> bytes:
    """Serialize as binary P5 with maxval 255."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


def load_pgm(path) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path, image: GrayImage) -> None:
    Path(path).write_bytes(write_pgm(image))

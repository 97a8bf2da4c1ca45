"""Binary and grayscale raster images with bit-exact Netpbm I/O.

Images are immutable after construction. Coordinates are (row, col) with
row 0 at the top; queries outside the image bounds answer background.
Foreground means ink: dark pixels, or 1-bits in PBM data.
"""

from __future__ import annotations

import numpy as np

from .errors import MalformedHeader, TruncatedPixelData, UnsupportedMaxval


class BinaryImage:
    """Rectangular grid of foreground/background pixels."""

    __slots__ = ("pixels",)

    def __init__(self, pixels):
        arr = np.ascontiguousarray(pixels, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"binary image must be 2-D and nonempty, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryImage is immutable")

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def pixel(self, row: int, col: int) -> bool:
        """Foreground test; out-of-bounds coordinates are background."""
        if 0 <= row < self.height and 0 <= col < self.width:
            return bool(self.pixels[row, col])
        return False

    def count_foreground(self) -> int:
        return int(self.pixels.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self):
        return hash((self.pixels.shape, self.pixels.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryImage({self.height}x{self.width}, fg={self.count_foreground()})"


class GrayImage:
    """Rectangular grid of intensities in [0, 255]."""

    __slots__ = ("intensities",)

    def __init__(self, intensities):
        arr = np.ascontiguousarray(intensities)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"gray image must be 2-D and nonempty, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("intensities must lie in [0, 255]")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "intensities", arr)

    def __setattr__(self, name, value):
        raise AttributeError("GrayImage is immutable")

    @property
    def height(self) -> int:
        return self.intensities.shape[0]

    @property
    def width(self) -> int:
        return self.intensities.shape[1]

    def intensity(self, row: int, col: int) -> int:
        return int(self.intensities[row, col])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.intensities.shape == other.intensities.shape and bool(
            np.array_equal(self.intensities, other.intensities)
        )

    def __hash__(self):
        return hash((self.intensities.shape, self.intensities.tobytes()))

    def __repr__(self) -> str:
        return f"GrayImage({self.height}x{self.width})"


def binarize(img: GrayImage, threshold: int) -> BinaryImage:
    """Threshold a gray image: foreground iff intensity < threshold (ink is dark)."""
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold must lie in [0, 255], got {threshold}")
    return BinaryImage(img.intensities < threshold)


class _TokenReader:
    """Whitespace/comment-aware reader over Netpbm header and ASCII raster bytes."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip_space_and_comments(self):
        data, n = self.data, len(self.data)
        while self.pos < n:
            ch = data[self.pos]
            if ch in b" \t\r\n\x0b\x0c":
                self.pos += 1
            elif ch == ord("#"):
                nl = data.find(b"\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            else:
                return

    def next_token(self) -> bytes:
        self._skip_space_and_comments()
        if self.pos >= len(self.data):
            raise TruncatedPixelData("unexpected end of data while reading token")
        start = self.pos
        data, n = self.data, len(self.data)
        while self.pos < n and data[self.pos] not in b" \t\r\n\x0b\x0c#":
            self.pos += 1
        return data[start : self.pos]

    def next_int(self, what: str) -> int:
        tok = self.next_token()
        try:
            return int(tok)
        except ValueError:
            raise MalformedHeader(f"expected integer for {what}, got {tok!r}") from None

    def next_bit(self) -> int:
        """Read one P1 raster digit; P1 pixels need no separating whitespace."""
        self._skip_space_and_comments()
        if self.pos >= len(self.data):
            raise TruncatedPixelData("P1 raster ended early")
        ch = self.data[self.pos]
        self.pos += 1
        if ch == ord("0"):
            return 0
        if ch == ord("1"):
            return 1
        raise TruncatedPixelData(f"invalid P1 raster character {chr(ch)!r}")


def parse_netpbm(data: bytes) -> GrayImage | BinaryImage:
    """Parse P1/P2/P4/P5 bytes.

    P1/P4 yield a BinaryImage (1-bits are foreground ink); P2/P5 yield a
    GrayImage with intensities rescaled to [0, 255]. Comments are skipped.
    """
    if not isinstance(data, (bytes, bytearray)):
        raise TypeError("parse_netpbm expects bytes")
    data = bytes(data)
    if len(data) < 2 or data[0:1] != b"P" or data[1:2] not in b"1245":
        raise MalformedHeader("not a supported Netpbm file (magic must be P1, P2, P4, or P5)")
    magic = data[:2].decode("ascii")
    reader = _TokenReader(data)
    reader.pos = 2

    width = reader.next_int("width")
    height = reader.next_int("height")
    if width <= 0 or height <= 0:
        raise MalformedHeader(f"dimensions must be positive, got {width}x{height}")

    if magic in ("P2", "P5"):
        maxval = reader.next_int("maxval")
        if maxval <= 0:
            raise MalformedHeader(f"maxval must be positive, got {maxval}")
        if maxval > 65535:
            raise UnsupportedMaxval(f"maxval {maxval} exceeds 65535")
    else:
        maxval = 1

    if magic == "P1":
        bits = np.empty(width * height, dtype=bool)
        for i in range(width * height):
            bits[i] = reader.next_bit()
        return BinaryImage(bits.reshape(height, width))

    if magic == "P2":
        vals = np.empty(width * height, dtype=np.int64)
        for i in range(width * height):
            tok = reader.next_token()
            try:
                v = int(tok)
            except ValueError:
                raise TruncatedPixelData(f"invalid P2 sample {tok!r}") from None
            if not 0 <= v <= maxval:
                raise TruncatedPixelData(f"P2 sample {v} outside [0, {maxval}]")
            vals[i] = v
        scaled = (vals * 255 + maxval // 2) // maxval
        return GrayImage(scaled.reshape(height, width))

    # Raw formats: exactly one whitespace byte separates header from raster.
    raster = data[reader.pos + 1 :]

    if magic == "P4":
        row_bytes = (width + 7) // 8
        need = row_bytes * height
        if len(raster) < need:
            raise TruncatedPixelData(f"P4 raster has {len(raster)} bytes, needs {need}")
        rows = np.frombuffer(raster[:need], dtype=np.uint8).reshape(height, row_bytes)
        bits = np.unpackbits(rows, axis=1)[:, :width]
        return BinaryImage(bits.astype(bool))

    # P5
    sample_bytes = 1 if maxval < 256 else 2
    need = width * height * sample_bytes
    if len(raster) < need:
        raise TruncatedPixelData(f"P5 raster has {len(raster)} bytes, needs {need}")
    if sample_bytes == 1:
        vals = np.frombuffer(raster[:need], dtype=np.uint8).astype(np.int64)
    else:
        vals = np.frombuffer(raster[:need], dtype=">u2").astype(np.int64)
    if vals.max(initial=0) > maxval:
        raise TruncatedPixelData("P5 sample exceeds maxval")
    scaled = (vals * 255 + maxval // 2) // maxval
    return GrayImage(scaled.reshape(height, width))


def serialize_pbm(img: BinaryImage) -> bytes:
    """Serialize to plain P1 text; parse_netpbm(serialize_pbm(x)) == x exactly."""
    lines = [f"P1\n{img.width} {img.height}\n".encode("ascii")]
    digits = np.where(img.pixels, b"1"[0], b"0"[0]).astype(np.uint8)
    for row in digits:
        lines.append(row.tobytes() + b"\n")
    return b"".join(lines)

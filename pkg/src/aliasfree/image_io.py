"""Binary PGM (P5) and PPM (P6) raster codec.

Only maxval 255 is supported. Decoded bytes map to floats by
v / 127.5 - 1, so 0 -> -1.0, 255 -> +1.0, and 128 -> exactly 0 on the
way back in. Encoding clamps to [-1, 1] and rounds half up, so a float
0.0 lands on byte 128. Tensors are C x H x W with C = 1 for P5 and
C = 3 for P6; P6 payloads interleave RGB per pixel.
"""

import numpy as np

from .resample import check_image

RASTER_FORMATS = ("P5", "P6")

_FORMAT_CHANNELS = {"P5": 1, "P6": 3}
_WHITESPACE = b" \t\r\n"


class RasterParseError(ValueError):
    """Malformed raster input; `offset` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def byte_to_float(values) -> np.ndarray:
    """Map uint8 sample values onto [-1, 1]."""
    return np.asarray(values).astype(float) / 127.5 - 1.0


def float_to_byte(values) -> np.ndarray:
    """Clamp to [-1, 1] and quantize, rounding halves up."""
    v = np.clip(np.asarray(values, dtype=float), -1.0, 1.0)
    return np.floor((v + 1.0) * 127.5 + 0.5).astype(np.uint8)


def _parse_int(data: bytes, pos: int, what: str):
    while pos < len(data) and data[pos] in _WHITESPACE:
        pos += 1
    if pos >= len(data):
        raise RasterParseError(f"header ended before {what}", len(data))
    start = pos
    while pos < len(data) and 48 <= data[pos] <= 57:
        pos += 1
    if pos == start:
        raise RasterParseError(f"expected digits for {what}", start)
    return int(data[start:pos]), pos, start


def read_raster(data: bytes) -> np.ndarray:
    """Decode P5/P6 bytes into a float C x H x W tensor on [-1, 1]."""
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise TypeError(f"expected bytes, got {type(data).__name__}")
    data = bytes(data)
    magic = data[:2].decode("latin-1")
    if magic not in _FORMAT_CHANNELS:
        raise RasterParseError(f"unknown magic {magic!r}", 0)
    channels = _FORMAT_CHANNELS[magic]

    width, pos, at = _parse_int(data, 2, "width")
    if width < 1:
        raise RasterParseError(f"width must be >= 1, got {width}", at)
    height, pos, at = _parse_int(data, pos, "height")
    if height < 1:
        raise RasterParseError(f"height must be >= 1, got {height}", at)
    maxval, pos, at = _parse_int(data, pos, "maxval")
    if maxval != 255:
        raise RasterParseError(f"only maxval 255 is supported, got {maxval}", at)

    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise RasterParseError("expected a whitespace byte after maxval", pos)
    pos += 1  # exactly one separator byte, then the payload

    needed = channels * height * width
    if len(data) - pos < needed:
        raise RasterParseError(
            f"payload holds {len(data) - pos} bytes, needs {needed}", len(data))
    raw = np.frombuffer(data, dtype=np.uint8, count=needed, offset=pos)
    pixels = raw.reshape(height, width, channels)
    return byte_to_float(np.moveaxis(pixels, 2, 0))


def write_raster(img, fmt: str = None) -> bytes:
    """Encode a float tensor as P5 (1 channel) or P6 (3 channels).

    With fmt omitted the channel count picks the format. Supplying a
    format that disagrees with the channel count is an error.
    """
    arr = check_image(img)
    C, H, W = arr.shape
    if fmt is None:
        if C == 1:
            fmt = "P5"
        elif C == 3:
            fmt = "P6"
        else:
            raise ValueError(f"raster output needs 1 or 3 channels, got {C}")
    if fmt not in RASTER_FORMATS:
        raise ValueError(f"unknown raster format {fmt!r}")
    if _FORMAT_CHANNELS[fmt] != C:
        raise ValueError(f"format {fmt} carries {_FORMAT_CHANNELS[fmt]} "
                         f"channel(s), image has {C}")
    payload = np.ascontiguousarray(np.moveaxis(float_to_byte(arr), 0, 2))
    header = f"{fmt}\n{W} {H}\n255\n".encode("ascii")
    return header + payload.tobytes()

"""Netpbm (PGM/PPM) codec, 8-bit only.

Reads P2/P5 grayscale and P3/P6 color files; always writes binary P5.
"""
import re
from pathlib import Path
from typing import List, Tuple, Union
import numpy as np
from utils.exceptions import (
    BadMagicError,
    InvalidDimensionsError,
    MalformedHeaderError,
    MalformedSampleError,
    MaxvalUnsupportedError,
    TruncatedPayloadError,
)
from utils.imaging.raster import ensure_u8
from utils.logging import logger

_logger = logger.bind(module='PnmCodec')

_CHANNELS = {b'P2': 1, b'P5': 1, b'P3': 3, b'P6': 3}
_ASCII = {b'P2', b'P3'}
_WHITESPACE = b' \t\n\r\x0b\x0c'
_COMMENT = re.compile(rb'#[^\n\r]*')


def _header_tokens(data: bytes, pos: int, count: int) -> Tuple[List[bytes], int]:
    """Collect ``count`` whitespace separated header tokens, skipping comments."""
    tokens: List[bytes] = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WHITESPACE:
            pos += 1
        if pos >= n:
            raise TruncatedPayloadError(f"header ended after {len(tokens)} of {count} fields")
        if data[pos] == ord('#'):
            while pos < n and data[pos] not in b'\n\r':
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord('#'):
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def _header_int(token: bytes, field: str) -> int:
    try:
        return int(token.decode('ascii'))
    except (UnicodeDecodeError, ValueError):
        raise MalformedHeaderError(f"{field} is not an integer: {token!r}") from None


def load_pnm(data: bytes) -> np.ndarray:
    """Decode a PNM byte stream into a uint8 raster ((h, w) or (h, w, 3))."""
    magic = bytes(data[:2])
    if magic not in _CHANNELS:
        raise BadMagicError(f"unsupported PNM magic {magic!r}")
    channels = _CHANNELS[magic]

    tokens, pos = _header_tokens(data, 2, 3)
    width = _header_int(tokens[0], 'width')
    height = _header_int(tokens[1], 'height')
    maxval = _header_int(tokens[2], 'maxval')
    if width <= 0 or height <= 0:
        raise InvalidDimensionsError(f"dimensions must be positive, got {width}x{height}")
    if maxval != 255:
        raise MaxvalUnsupportedError(f"only maxval 255 is supported, got {maxval}")

    expected = width * height * channels
    if magic in _ASCII:
        fields = _COMMENT.sub(b' ', bytes(data[pos:])).split()
        if len(fields) < expected:
            raise TruncatedPayloadError(f"expected {expected} samples, found {len(fields)}")
        try:
            samples = np.array([int(f) for f in fields[:expected]], dtype=np.int64)
        except ValueError:
            raise MalformedSampleError("non-numeric sample in ASCII payload") from None
        if samples.min() < 0 or samples.max() > 255:
            raise MalformedSampleError("sample outside [0, 255]")
        pixels = samples.astype(np.uint8)
    else:
        # exactly one whitespace byte separates maxval from the binary payload
        if pos >= len(data) or data[pos] not in _WHITESPACE:
            raise TruncatedPayloadError("missing separator before binary payload")
        payload = bytes(data[pos + 1:pos + 1 + expected])
        if len(payload) < expected:
            raise TruncatedPayloadError(f"expected {expected} payload bytes, found {len(payload)}")
        pixels = np.frombuffer(payload, dtype=np.uint8).copy()

    shape = (height, width) if channels == 1 else (height, width, 3)
    return pixels.reshape(shape)


def save_pgm(r: np.ndarray) -> bytes:
    """Encode an 8-bit raster as binary P5."""
    ensure_u8(r)
    height, width = r.shape
    header = f"P5\n{width} {height}\n255\n".encode('ascii')
    return header + np.ascontiguousarray(r).tobytes()


def read_pnm_file(path: Union[str, Path]) -> np.ndarray:
    path = Path(path)
    _logger.debug(f"📖 Reading image from: {path}")
    return load_pnm(path.read_bytes())


def write_pgm_file(path: Union[str, Path], r: np.ndarray) -> None:
    path = Path(path)
    path.write_bytes(save_pgm(r))
    _logger.debug(f"💾 Wrote {r.shape[1]}x{r.shape[0]} image to {path}")

"""Pixel containers and point operations.

Rasters are plain numpy arrays: ``uint8`` for the 8-bit variant and ``float64``
for intermediate responses, both shaped ``(height, width)``. Color rasters are
``uint8`` arrays shaped ``(height, width, 3)``.
"""
import numpy as np
from utils.exceptions import RasterTypeError
from utils.models.settings_model import RescaleMode

# BT.601 luma weights in thousandths, so rounding stays in integer arithmetic
_LUMA_WEIGHTS = np.array([299, 587, 114], dtype=np.int64)


def ensure_u8(r: np.ndarray) -> np.ndarray:
    if not isinstance(r, np.ndarray) or r.dtype != np.uint8 or r.ndim != 2:
        raise RasterTypeError(f"expected a 2-D uint8 raster, got {_describe(r)}")
    if r.size == 0:
        raise RasterTypeError("raster has no pixels")
    return r


def ensure_f64(r: np.ndarray) -> np.ndarray:
    if not isinstance(r, np.ndarray) or r.dtype != np.float64 or r.ndim != 2:
        raise RasterTypeError(f"expected a 2-D float64 raster, got {_describe(r)}")
    return r


def ensure_color(c: np.ndarray) -> np.ndarray:
    if not isinstance(c, np.ndarray) or c.dtype != np.uint8 or c.ndim != 3 or c.shape[2] != 3:
        raise RasterTypeError(f"expected a (h, w, 3) uint8 raster, got {_describe(c)}")
    return c


def is_color(r: np.ndarray) -> bool:
    return isinstance(r, np.ndarray) and r.ndim == 3


def round_to_u8(r: np.ndarray) -> np.ndarray:
    """Half-up rounding followed by clamping to [0, 255]."""
    return np.clip(np.floor(r + 0.5), 0, 255).astype(np.uint8)


def to_grayscale(c: np.ndarray) -> np.ndarray:
    ensure_color(c)
    weighted = c.astype(np.int64) @ _LUMA_WEIGHTS
    return ((weighted + 500) // 1000).astype(np.uint8)


def complement(r: np.ndarray) -> np.ndarray:
    ensure_u8(r)
    return (255 - r).astype(np.uint8)


def rescale_to_u8(r: np.ndarray, mode: RescaleMode = RescaleMode.CLAMP_ABS_QUARTER) -> np.ndarray:
    """Bring a float response back to viewable 8-bit intensities.

    ``CLAMP_ABS_QUARTER`` maps ``v`` to ``round(min(|v| / 4, 255))``; the largest
    Sobel response on 8-bit input is 4 * 255, so the scale never depends on the
    image. ``CLAMP_ABS`` maps ``v`` to ``round(min(|v|, 255))`` for responses whose
    input was itself a quarter-scaled derivative. ``MIN_MAX`` stretches
    ``[min, max]`` onto ``[0, 255]`` and sends a constant raster to 0.
    """
    ensure_f64(r)
    if mode is RescaleMode.CLAMP_ABS_QUARTER:
        return round_to_u8(np.minimum(np.abs(r) / 4.0, 255.0))
    if mode is RescaleMode.CLAMP_ABS:
        return round_to_u8(np.minimum(np.abs(r), 255.0))
    lo, hi = float(r.min()), float(r.max())
    if hi == lo:
        return np.zeros(r.shape, dtype=np.uint8)
    return round_to_u8((r - lo) * (255.0 / (hi - lo)))


def mask_to_u8(m: np.ndarray) -> np.ndarray:
    """Render a boolean map as a 0/255 image."""
    return np.where(m, 255, 0).astype(np.uint8)


def _describe(r) -> str:
    if isinstance(r, np.ndarray):
        return f"array dtype={r.dtype} shape={r.shape}"
    return type(r).__name__

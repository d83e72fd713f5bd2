"""Sobel operators and the Canny chain.

Naming follows the structure each operator detects: ``sobel_vertical`` uses the
horizontal-derivative mask Gx and responds to vertical grooves, while
``sobel_horizontal`` uses Gy and responds to horizontal grooves.
"""
from collections import deque
import numpy as np
from utils.exceptions import HysteresisThresholdError
from utils.imaging.filters import convolve, gaussian_kernel, smooth
from utils.imaging.raster import ensure_u8
from utils.models.data_models import GradientField, Kernel
from utils.models.settings_model import BorderPolicy, CannyParams

SOBEL_X = Kernel(weights=np.array([[-1, 0, 1],
                                   [-2, 0, 2],
                                   [-1, 0, 1]]))
SOBEL_Y = Kernel(weights=np.array([[-1, -2, -1],
                                   [0, 0, 0],
                                   [1, 2, 1]]))

# (dy, dx) step along each quantized gradient direction: 0, 45, 90, 135 degrees.
# Rows grow downward, so a 45 degree gradient points down and to the right.
_DIRECTION_STEPS = ((0, 1), (1, 1), (1, 0), (1, -1))

_NEIGHBOURS_8 = tuple((dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if dy or dx)


def sobel_vertical(r: np.ndarray, border: BorderPolicy = BorderPolicy.REPLICATE) -> np.ndarray:
    ensure_u8(r)
    return convolve(r, SOBEL_X, border)


def sobel_horizontal(r: np.ndarray, border: BorderPolicy = BorderPolicy.REPLICATE) -> np.ndarray:
    ensure_u8(r)
    return convolve(r, SOBEL_Y, border)


def gradient(r: np.ndarray, border: BorderPolicy = BorderPolicy.REPLICATE) -> GradientField:
    gx = sobel_vertical(r, border)
    gy = sobel_horizontal(r, border)
    return GradientField(magnitude=np.hypot(gx, gy), direction=np.arctan2(gy, gx))


def _shifted(a: np.ndarray, dy: int, dx: int) -> np.ndarray:
    """``out[y, x] = a[y + dy, x + dx]``, zero outside the raster."""
    height, width = a.shape
    out = np.zeros_like(a)
    ys, yd = slice(max(dy, 0), height + min(dy, 0)), slice(max(-dy, 0), height + min(-dy, 0))
    xs, xd = slice(max(dx, 0), width + min(dx, 0)), slice(max(-dx, 0), width + min(-dx, 0))
    out[yd, xd] = a[ys, xs]
    return out


def quantize_direction(direction: np.ndarray) -> np.ndarray:
    """Nearest of 0/45/90/135 degrees after folding modulo 180, as bin index 0..3."""
    degrees = np.mod(np.degrees(direction), 180.0)
    return (np.floor(degrees / 45.0 + 0.5).astype(np.int64)) % 4


def non_max_suppression(g: GradientField) -> np.ndarray:
    """Thin the magnitude to ridges one pixel wide across the gradient.

    A pixel keeps its magnitude when it is strictly greater than the neighbour
    behind it and at least the neighbour ahead of it along the quantized
    direction; on a flat ridge exactly the first pixel survives. Neighbours
    outside the raster count as 0.
    """
    magnitude = g.magnitude
    bins = quantize_direction(g.direction)
    keep = np.zeros(magnitude.shape, dtype=bool)
    for index, (dy, dx) in enumerate(_DIRECTION_STEPS):
        ahead = _shifted(magnitude, dy, dx)
        behind = _shifted(magnitude, -dy, -dx)
        keep |= (bins == index) & (magnitude > behind) & (magnitude >= ahead)
    return np.where(keep, magnitude, 0.0)


def hysteresis(nms: np.ndarray, low: float, high: float) -> np.ndarray:
    """Double threshold: strong pixels seed edges that grow through 8-connected weak ones."""
    if not 0 < low < high:
        raise HysteresisThresholdError(f"need 0 < low < high, got low={low} high={high}")
    candidate = nms >= low
    edges = nms >= high
    height, width = nms.shape
    frontier = deque(zip(*np.nonzero(edges)))
    while frontier:
        y, x = frontier.popleft()
        for dy, dx in _NEIGHBOURS_8:
            ny, nx = y + dy, x + dx
            if 0 <= ny < height and 0 <= nx < width and candidate[ny, nx] and not edges[ny, nx]:
                edges[ny, nx] = True
                frontier.append((ny, nx))
    return edges


def canny(r: np.ndarray, p: CannyParams = CannyParams(),
          border: BorderPolicy = BorderPolicy.REPLICATE) -> np.ndarray:
    smoothed = smooth(r, gaussian_kernel(p.kernel_size, p.sigma), 1, border)
    suppressed = non_max_suppression(gradient(smoothed, border))
    return hysteresis(suppressed, p.low, p.high)

"""2-D convolution with an explicit border policy, and Gaussian smoothing."""
import numpy as np
from utils.exceptions import KernelError
from utils.imaging.raster import ensure_u8, round_to_u8
from utils.models.data_models import Kernel
from utils.models.settings_model import BorderPolicy

IDENTITY_KERNEL = Kernel(weights=np.ones((1, 1)))


def gaussian_kernel(size: int, sigma: float) -> Kernel:
    """Sampled isotropic Gaussian, normalized to unit sum."""
    if size < 3 or size % 2 == 0:
        raise KernelError(f"gaussian kernel size must be odd and >= 3, got {size}")
    if not sigma > 0:
        raise KernelError(f"sigma must be positive, got {sigma}")
    radius = (size - 1) // 2
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    xx, yy = np.meshgrid(offsets, offsets)
    weights = np.exp(-(xx ** 2 + yy ** 2) / (2.0 * sigma ** 2))
    return Kernel(weights=weights / weights.sum())


def _pad(r: np.ndarray, radius: int, border: BorderPolicy) -> np.ndarray:
    if border is BorderPolicy.REPLICATE:
        return np.pad(r, radius, mode='edge')
    return np.pad(r, radius, mode='constant', constant_values=0)


def convolve(r: np.ndarray, k: Kernel, border: BorderPolicy = BorderPolicy.REPLICATE) -> np.ndarray:
    """Correlate ``r`` with the kernel as written.

    ``out[y, x] = sum(k[a, b] * in[y + a - radius, x + b - radius])``. The Gaussian
    is symmetric, and the Sobel masks are meant to be applied in this orientation.
    The output has the input's shape and is always float64.
    """
    if r.ndim != 2 or r.size == 0:
        raise ValueError(f"expected a non-empty 2-D raster, got shape {r.shape}")
    height, width = r.shape
    radius = k.radius
    padded = _pad(r.astype(np.float64), radius, border)
    out = np.zeros((height, width), dtype=np.float64)
    for a in range(k.size):
        for b in range(k.size):
            w = k.weights[a, b]
            if w != 0.0:
                out += w * padded[a:a + height, b:b + width]
    return out


def smooth(r: np.ndarray, k: Kernel, passes: int = 1,
           border: BorderPolicy = BorderPolicy.REPLICATE) -> np.ndarray:
    """Repeated convolution, rounding back to 8 bits after every pass."""
    ensure_u8(r)
    if passes < 1:
        raise ValueError(f"passes must be >= 1, got {passes}")
    out = r
    for _ in range(passes):
        out = round_to_u8(convolve(out, k, border))
    return out

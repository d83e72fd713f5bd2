"""Iterative mean thresholding and object/background segmentation.

Object pixels are the darker cluster (``v < t``); the lips are expected on a
light background.
"""
import numpy as np
from utils.exceptions import DimensionMismatchError
from utils.imaging.raster import ensure_u8
from utils.logging import logger
from utils.models.data_models import ThresholdTrace

_logger = logger.bind(module='Thresholding')


def mean_intensity(r: np.ndarray) -> float:
    """Average gray level: the DC term of the image's DFT divided by the pixel count."""
    ensure_u8(r)
    return int(r.sum(dtype=np.int64)) / r.size


def _cluster_mean(values: np.ndarray, fallback: float) -> float:
    # an empty cluster takes the current threshold as its mean, which halts the loop
    if values.size == 0:
        return fallback
    return int(values.sum(dtype=np.int64)) / values.size


def iterative_threshold(r: np.ndarray, epsilon: float = 1.0) -> ThresholdTrace:
    """Two-cluster k-means on intensities, seeded with the mean gray level.

    Each step splits pixels at ``t`` into ``v < t`` and ``v >= t`` and moves the
    threshold to the midpoint of the two cluster means, stopping once a step moves
    it by at most ``epsilon``.
    """
    ensure_u8(r)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")

    flat = r.ravel()
    t = mean_intensity(r)
    iterations = [t]
    # t stays inside [min, max] of the pixels, so this bound is never the binding one
    max_steps = int(256 / epsilon) + 1
    for _ in range(max_steps):
        below = flat[flat < t]
        above = flat[flat >= t]
        t_next = (_cluster_mean(below, t) + _cluster_mean(above, t)) / 2
        iterations.append(t_next)
        if abs(t - t_next) <= epsilon:
            break
        t = t_next
    else:
        _logger.warning(f"⚠️ Threshold did not settle within {max_steps} steps, keeping {t_next}")

    _logger.debug(f"🎯 Threshold converged to {iterations[-1]:.4f} after {len(iterations) - 1} steps")
    return ThresholdTrace(iterations=iterations, epsilon=epsilon)


def segment(r: np.ndarray, t: float) -> np.ndarray:
    """Object mask: True where the pixel is strictly below ``t``."""
    ensure_u8(r)
    return r < t


def blacken_background(r: np.ndarray, m: np.ndarray) -> np.ndarray:
    ensure_u8(r)
    if m.shape != r.shape:
        raise DimensionMismatchError(f"mask shape {m.shape} does not match raster shape {r.shape}")
    return np.where(m, r, 0).astype(np.uint8)

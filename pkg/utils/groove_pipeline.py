from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Optional, Tuple
import numpy as np
from utils.exceptions import LipGrooveError, StageError
from utils.imaging.edges import canny, sobel_horizontal, sobel_vertical
from utils.imaging.filters import gaussian_kernel, smooth
from utils.imaging.raster import (
    complement,
    ensure_u8,
    is_color,
    mask_to_u8,
    rescale_to_u8,
    to_grayscale,
)
from utils.imaging.thresholding import blacken_background, iterative_threshold, segment
from utils.logging import logger
from utils.models.data_models import GrooveResult
from utils.models.settings_model import FinalDetector, PipelineConfig, RescaleMode

SobelOperator = Callable[..., np.ndarray]

# stage letters of each orientation track, in execution order
HORIZONTAL_TRACK = ('e', 'g', 'i', 'k', 'm')
VERTICAL_TRACK = ('f', 'h', 'j', 'l', 'n')
STAGE_LETTERS = tuple('abcdefghijklmn')


class GroovePipeline:
    """Runs the fourteen-stage groove extraction chain.

    Stages a-d are shared: grayscale, segmentation mask, blackened background and
    repeated smoothing. The horizontal (e, g, i, k, m) and vertical (f, h, j, l, n)
    tracks then apply Sobel, re-smoothing, a second Sobel, complement and a final
    edge detector independently.
    """

    def __init__(self, cfg: PipelineConfig = PipelineConfig()):
        self.cfg = cfg
        self.kernel = gaussian_kernel(cfg.smooth_kernel.size, cfg.smooth_kernel.sigma)
        self._logger = logger.bind(module='GroovePipeline')
        if cfg.swap_sobel_naming:
            self._operators = (sobel_vertical, sobel_horizontal)
        else:
            self._operators = (sobel_horizontal, sobel_vertical)

    @staticmethod
    def _stage(label: str, fn: Callable, *args) -> np.ndarray:
        try:
            return fn(*args)
        except LipGrooveError as e:
            raise StageError(label, e) from e
        except (ValueError, TypeError) as e:
            raise StageError(label, e) from e

    def _sobel_u8(self, operator: SobelOperator, r: np.ndarray,
                  mode: Optional[RescaleMode] = None) -> np.ndarray:
        return rescale_to_u8(operator(r, self.cfg.border), mode or self.cfg.sobel_rescale)

    def _resmooth(self, r: np.ndarray) -> np.ndarray:
        if self.cfg.mid_passes == 0:
            return r
        return smooth(r, self.kernel, self.cfg.mid_passes, self.cfg.border)

    def _final_edges(self, operator: SobelOperator, r: np.ndarray) -> np.ndarray:
        if self.cfg.final_detector is FinalDetector.SOBEL:
            return self._sobel_u8(operator, r) >= self.cfg.sobel_threshold
        return canny(r, self.cfg.canny, self.cfg.border)

    def _run_track(self, smoothed: np.ndarray, operator: SobelOperator,
                   letters: Tuple[str, ...]) -> Tuple[np.ndarray, Dict[str, np.ndarray]]:
        first, resmoothed, second, inverted, final = letters
        stages: Dict[str, np.ndarray] = {}
        stages[first] = self._stage(first, self._sobel_u8, operator, smoothed)
        stages[resmoothed] = self._stage(resmoothed, self._resmooth, stages[first])
        stages[second] = self._stage(second, self._sobel_u8, operator, stages[resmoothed],
                                     self.cfg.second_sobel_rescale)
        stages[inverted] = self._stage(inverted, complement, stages[second])
        edges = self._stage(final, self._final_edges, operator, stages[inverted])
        stages[final] = mask_to_u8(edges)
        return edges, stages

    def extract(self, image: np.ndarray) -> GrooveResult:
        """Extract horizontal and vertical groove maps from a gray or color raster."""
        cfg = self.cfg
        if is_color(image):
            gray = self._stage('a', to_grayscale, image)
        else:
            gray = self._stage('a', ensure_u8, image)
        height, width = gray.shape
        self._logger.info(f"🔍 Extracting grooves from {width}x{height} image")

        trace = self._stage('b', iterative_threshold, gray, cfg.epsilon)
        mask = self._stage('b', segment, gray, trace.final)
        blackened = self._stage('c', blacken_background, gray, mask)
        smoothed = self._stage('d', smooth, blackened, self.kernel, cfg.pre_passes, cfg.border)
        self._logger.debug(
            f"🎯 Threshold {trace.final:.4f} after {len(trace.iterations) - 1} steps, "
            f"{int(mask.sum())} object pixels"
        )

        horizontal_op, vertical_op = self._operators
        if cfg.parallel_tracks:
            with ThreadPoolExecutor(max_workers=2) as pool:
                h_future = pool.submit(self._run_track, smoothed, horizontal_op, HORIZONTAL_TRACK)
                v_future = pool.submit(self._run_track, smoothed, vertical_op, VERTICAL_TRACK)
                (h_edges, h_stages), (v_edges, v_stages) = h_future.result(), v_future.result()
        else:
            h_edges, h_stages = self._run_track(smoothed, horizontal_op, HORIZONTAL_TRACK)
            v_edges, v_stages = self._run_track(smoothed, vertical_op, VERTICAL_TRACK)

        stages: Optional[Dict[str, np.ndarray]] = None
        if cfg.dump_stages:
            collected = {'a': gray, 'b': mask_to_u8(mask), 'c': blackened, 'd': smoothed,
                         **h_stages, **v_stages}
            stages = {letter: collected[letter] for letter in STAGE_LETTERS}

        self._logger.success(
            f"✅ Extracted {int(h_edges.sum())} horizontal and {int(v_edges.sum())} vertical groove pixels"
        )
        return GrooveResult(horizontal=h_edges, vertical=v_edges, mask=mask, trace=trace, stages=stages)


def extract_grooves(image: np.ndarray, cfg: PipelineConfig = PipelineConfig()) -> GrooveResult:
    return GroovePipeline(cfg).extract(image)

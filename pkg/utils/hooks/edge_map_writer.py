from pathlib import Path
from utils.imaging.pnm import write_pgm_file
from utils.imaging.raster import mask_to_u8
from utils.logging import logger
from utils.models.data_models import GrooveResult
from .base import ExtractionHook


class EdgeMapWriter(ExtractionHook):
    """Writes the groove maps and the segmentation mask as 0/255 PGM files."""

    OUTPUTS = ('horizontal', 'vertical', 'mask')

    def __init__(self):
        self._logger = logger.bind(module='EdgeMapWriter')

    def process_result(self, result: GrooveResult, out_dir: Path) -> None:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name in self.OUTPUTS:
            write_pgm_file(out_dir / f'{name}.pgm', mask_to_u8(getattr(result, name)))
        self._logger.info(f"🗄️ Wrote groove maps to {out_dir}")

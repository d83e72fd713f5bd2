from pathlib import Path
from utils.imaging.pnm import write_pgm_file
from utils.logging import logger
from utils.models.data_models import GrooveResult
from .base import ExtractionHook


class StageDumper(ExtractionHook):
    """Writes each stage snapshot as ``stage_<letter>.pgm`` when stages were kept."""

    def __init__(self):
        self._logger = logger.bind(module='StageDumper')

    def process_result(self, result: GrooveResult, out_dir: Path) -> None:
        if not result.stages:
            return
        out_dir.mkdir(parents=True, exist_ok=True)
        for letter, raster in result.stages.items():
            write_pgm_file(out_dir / f'stage_{letter}.pgm', raster)
        self._logger.info(f"🗄️ Dumped {len(result.stages)} stage images to {out_dir}")

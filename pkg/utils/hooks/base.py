from abc import ABC, abstractmethod
from pathlib import Path
from utils.models.data_models import GrooveResult


class ExtractionHook(ABC):
    """Base class for hooks that consume a finished groove extraction."""

    @abstractmethod
    def process_result(self, result: GrooveResult, out_dir: Path) -> None:
        """Handle an extraction result.

        Args:
            result: The pipeline output
            out_dir: Directory the caller asked outputs to be written to
        """
        pass

from .base import ExtractionHook
from .edge_map_writer import EdgeMapWriter
from .stage_dumper import StageDumper

__all__ = ["ExtractionHook", "EdgeMapWriter", "StageDumper"]

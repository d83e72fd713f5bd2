from enum import Enum
from typing import List, Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class BorderPolicy(str, Enum):
    """How convolution resolves reads outside the raster."""
    REPLICATE = "replicate"
    ZERO = "zero"


class RescaleMode(str, Enum):
    """Float to 8-bit conversion used for Sobel responses."""
    CLAMP_ABS_QUARTER = "clamp_abs_quarter"
    CLAMP_ABS = "clamp_abs"
    MIN_MAX = "min_max"


class FinalDetector(str, Enum):
    CANNY = "canny"
    SOBEL = "sobel"


class Logs(BaseModel):
    """Logging configuration model."""
    debug_mode: bool = False
    write_to_files: bool = False
    level: str = "INFO"


class SmoothingConfig(BaseModel):
    """Gaussian kernel used by the pipeline's repeated smoothing."""
    model_config = ConfigDict(frozen=True)

    size: int = 7
    sigma: float = Field(default=1.4, gt=0)

    @field_validator('size')
    @classmethod
    def _odd_size(cls, v: int) -> int:
        if v < 3 or v % 2 == 0:
            raise ValueError(f"kernel size must be odd and >= 3, got {v}")
        return v


class CannyParams(BaseModel):
    """Canny settings; thresholds are on the gradient magnitude scale of 8-bit input."""
    model_config = ConfigDict(frozen=True)

    sigma: float = Field(default=1.0, gt=0)
    kernel_size: int = 5
    low: float = 20.0
    high: float = 50.0

    @field_validator('kernel_size')
    @classmethod
    def _odd_size(cls, v: int) -> int:
        if v < 3 or v % 2 == 0:
            raise ValueError(f"kernel size must be odd and >= 3, got {v}")
        return v

    @model_validator(mode='after')
    def _ordered_thresholds(self) -> 'CannyParams':
        if not 0 < self.low < self.high:
            raise ValueError(f"need 0 < low < high, got low={self.low} high={self.high}")
        return self


class PipelineConfig(BaseModel):
    """Every knob of the groove extraction pipeline."""
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(default=1.0, gt=0)
    smooth_kernel: SmoothingConfig = SmoothingConfig()
    pre_passes: int = Field(default=4, ge=1)
    mid_passes: int = Field(default=1, ge=0)
    border: BorderPolicy = BorderPolicy.REPLICATE
    canny: CannyParams = CannyParams()
    # first Sobel (stages e/f) and the sobel final detector read the smoothed 8-bit image
    sobel_rescale: RescaleMode = RescaleMode.CLAMP_ABS_QUARTER
    # second Sobel (stages i/j) reads a first-derivative image already divided by 4
    second_sobel_rescale: RescaleMode = RescaleMode.CLAMP_ABS
    dump_stages: bool = False
    swap_sobel_naming: bool = False
    final_detector: FinalDetector = FinalDetector.CANNY
    sobel_threshold: float = Field(default=32.0, gt=0, le=255)
    parallel_tracks: bool = False

    @field_validator('sobel_rescale', 'second_sobel_rescale')
    @classmethod
    def _chainable_rescale(cls, v: RescaleMode) -> RescaleMode:
        # min-max output depends on image content and is kept for debug dumps only
        if v is RescaleMode.MIN_MAX:
            raise ValueError("pipeline stages only support fixed-scale rescaling")
        return v


class MatchConfig(BaseModel):
    """Two-stage matching thresholds."""
    model_config = ConfigDict(frozen=True)

    ratio_tol: float = Field(default=0.15, ge=0)
    accept: float = Field(default=0.60, ge=0, le=1)


class StoreConfig(BaseModel):
    """Template store location."""
    path: Optional[str] = None


class Settings(BaseModel):
    """Main settings configuration model."""
    logs: Logs = Logs()
    pipeline: PipelineConfig = PipelineConfig()
    matching: MatchConfig = MatchConfig()
    store: StoreConfig = StoreConfig()


class HookDefinition(BaseModel):
    """Extraction hook configuration model."""
    name: str
    module: str
    class_name: str


class HookConfig(BaseModel):
    """Extraction hook configuration model."""
    hooks: List[HookDefinition]

import math
from typing import Dict, List, Optional, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

TEMPLATE_WIDTH = 128
TEMPLATE_HEIGHT = 64


class ThresholdTrace(BaseModel):
    """Every threshold visited by the iterative mean algorithm, final one last."""
    model_config = ConfigDict(frozen=True)

    iterations: List[float] = Field(..., min_length=1)
    epsilon: float = Field(..., gt=0)

    @field_validator('iterations')
    @classmethod
    def _in_range(cls, v: List[float]) -> List[float]:
        for t in v:
            if not 0.0 <= t <= 255.0:
                raise ValueError(f"threshold {t} outside [0, 255]")
        return v

    @property
    def final(self) -> float:
        return self.iterations[-1]


class Kernel(BaseModel):
    """Odd-sized square matrix of finite weights."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weights: np.ndarray

    @field_validator('weights')
    @classmethod
    def _odd_square(cls, v: np.ndarray) -> np.ndarray:
        v = np.array(v, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] % 2 == 0:
            raise ValueError(f"kernel must be an odd-sized square matrix, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("kernel weights must be finite")
        v.setflags(write=False)
        return v

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    @property
    def radius(self) -> int:
        return self.size // 2


class GradientField(BaseModel):
    """Sobel gradient magnitude and direction (radians, atan2(gy, gx))."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    magnitude: np.ndarray
    direction: np.ndarray

    @model_validator(mode='after')
    def _same_shape(self) -> 'GradientField':
        if self.magnitude.shape != self.direction.shape:
            raise ValueError("magnitude and direction shapes differ")
        return self


class BoundingBox(BaseModel):
    """Inclusive pixel box."""
    model_config = ConfigDict(frozen=True)

    top: int = Field(..., ge=0)
    left: int = Field(..., ge=0)
    bottom: int
    right: int

    @model_validator(mode='after')
    def _ordered(self) -> 'BoundingBox':
        if self.top > self.bottom or self.left > self.right:
            raise ValueError(f"inverted box {self}")
        return self

    @property
    def height(self) -> int:
        return self.bottom - self.top + 1

    @property
    def width(self) -> int:
        return self.right - self.left + 1


class LipRatios(BaseModel):
    model_config = ConfigDict(frozen=True)

    upper_lower_height_ratio: float = Field(..., gt=0)
    upper_height_width_ratio: float = Field(..., gt=0)

    @field_validator('upper_lower_height_ratio', 'upper_height_width_ratio')
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("ratio must be finite")
        return v


class Template(BaseModel):
    """Enrollment record: statistical ratios plus size-normalized groove maps."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: str = Field(..., min_length=1)
    ratios: LipRatios
    h_map: np.ndarray
    v_map: np.ndarray
    # (width, height) of the image the template was built from; not persisted
    source_dims: Optional[Tuple[int, int]] = None

    @field_validator('id')
    @classmethod
    def _printable_id(cls, v: str) -> str:
        if any(ord(ch) < 32 or ord(ch) == 127 for ch in v):
            raise ValueError("template id contains control characters")
        return v

    @field_validator('h_map', 'v_map')
    @classmethod
    def _normalized_map(cls, v: np.ndarray) -> np.ndarray:
        v = np.array(v, dtype=bool)
        if v.shape != (TEMPLATE_HEIGHT, TEMPLATE_WIDTH):
            raise ValueError(
                f"template maps must be {TEMPLATE_WIDTH}x{TEMPLATE_HEIGHT}, got {v.shape[::-1]}"
            )
        v.setflags(write=False)
        return v


class MatchReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    ratio_gate_passed: bool
    ratio_distance: float = Field(..., ge=0)
    groove_score: float = Field(..., ge=0, le=1)
    accepted: bool
    ratio_tol: float
    accept: float

    @model_validator(mode='after')
    def _accept_needs_gate(self) -> 'MatchReport':
        if self.accepted and not self.ratio_gate_passed:
            raise ValueError("a match cannot be accepted without passing the ratio gate")
        return self


class GrooveResult(BaseModel):
    """Horizontal and vertical groove maps plus the segmentation they came from."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    horizontal: np.ndarray
    vertical: np.ndarray
    mask: np.ndarray
    trace: ThresholdTrace
    stages: Optional[Dict[str, np.ndarray]] = None

    @model_validator(mode='after')
    def _same_dims(self) -> 'GrooveResult':
        if not (self.horizontal.shape == self.vertical.shape == self.mask.shape):
            raise ValueError("groove maps and mask must share the input's dimensions")
        return self

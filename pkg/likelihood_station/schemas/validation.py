"""
Pydantic schemas for input validation
"""

from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..config import settings
from ..exceptions.custom import DimensionMismatchError, InvalidDataError


class DataVector(BaseModel):
    """Observed counts u_0, ..., u_n"""

    model_config = ConfigDict(frozen=True)

    counts: Tuple[int, ...] = Field(..., min_length=1, description="Non-negative counts")

    @field_validator("counts")
    @classmethod
    def validate_counts(cls, v):
        if any(c < 0 for c in v):
            raise ValueError("counts must be non-negative")
        if sum(v) <= 0:
            raise ValueError("counts must have a positive total")
        return v

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float)

    def check_length(self, expected: int) -> "DataVector":
        if len(self.counts) != expected:
            raise DimensionMismatchError("data vector length", expected, len(self.counts))
        return self

    @classmethod
    def of(cls, counts: Sequence[int]) -> "DataVector":
        """Validated construction raising InvalidDataError instead of pydantic errors."""
        if isinstance(counts, DataVector):
            return counts
        try:
            return cls(counts=tuple(int(c) for c in counts))
        except (ValueError, TypeError) as exc:
            raise InvalidDataError(str(exc).splitlines()[0], list(counts)) from None

    @classmethod
    def from_csv(cls, text: str) -> "DataVector":
        pieces = [p.strip() for p in text.split(",")]
        if not all(pieces) or not all(p.lstrip("-").isdigit() for p in pieces):
            raise InvalidDataError(f"expected comma-separated integers, got {text!r}")
        return cls.of([int(p) for p in pieces])

    @classmethod
    def random(cls, length: int, rng: np.random.Generator) -> "DataVector":
        """Generic data: independent uniform integers in [DATA_MIN, DATA_MAX]."""
        draw = rng.integers(settings.DATA_MIN, settings.DATA_MAX + 1, size=length)
        return cls(counts=tuple(int(x) for x in draw))


class Tolerances(BaseModel):
    """Numerical tolerances of the solver and the certification"""

    model_config = ConfigDict(frozen=True)

    residual: float = Field(default_factory=lambda: settings.TOL_RESIDUAL, gt=0)
    imag: float = Field(default_factory=lambda: settings.TOL_IMAG, gt=0)
    positive: float = Field(default_factory=lambda: settings.TOL_POSITIVE, gt=0)
    separation: float = Field(default_factory=lambda: settings.EIGEN_SEPARATION, gt=0)
    rank: float = Field(default_factory=lambda: settings.RANK_TOL, gt=0)
    multipliers: float = Field(default_factory=lambda: settings.MULTIPLIER_TOL, gt=0)
    definiteness: float = Field(default_factory=lambda: settings.DEFINITENESS_TOL, gt=0)

    def override(self, residual: Optional[float] = None, imag: Optional[float] = None) -> "Tolerances":
        updates = {}
        if residual is not None:
            updates["residual"] = residual
        if imag is not None:
            updates["imag"] = imag
        return self.model_copy(update=updates) if updates else self


class CIShapeRequest(BaseModel):
    """Arguments of the complete-intersection bound"""

    n: int = Field(..., ge=1, description="Ambient projective dimension")
    degrees: Tuple[int, ...] = Field(..., min_length=1)

    @field_validator("degrees")
    @classmethod
    def validate_degrees(cls, v):
        if any(d < 1 for d in v):
            raise ValueError("degrees must be positive")
        return v

    @field_validator("degrees")
    @classmethod
    def validate_count(cls, v, info):
        n = info.data.get("n")
        if n is not None and len(v) > n:
            raise ValueError("number of degrees must not exceed n")
        return v

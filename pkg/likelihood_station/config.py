"""
Configuration settings for Likelihood Station.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


ROOT_DIR = Path(__file__).resolve().parents[1]


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=str(ROOT_DIR / ".env"),
        case_sensitive=True,
        extra="ignore",
    )

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: Literal["console", "json"] = "console"

    # Seeding and generic data
    DEFAULT_SEED: int = 0
    DATA_MIN: int = 1
    DATA_MAX: int = 10007
    SCALE_MIN: int = 2
    SCALE_MAX: int = 97
    CI_COEFF_BOUND: int = 50

    # Groebner engine
    GROEBNER_METHOD: Literal["buchberger", "f5b"] = "buchberger"
    GROEBNER_TIMEOUT: Optional[float] = Field(
        default=None,
        description="Seconds allowed per Groebner basis computation",
    )
    Q_SATURATION: Literal["combination", "sequential"] = "combination"

    # Pipeline defaults
    DEFAULT_ROUTE: Literal["auto", "minors", "syzygy"] = "auto"
    DEFAULT_STEP4: Literal["full", "prime"] = "full"
    MINOR_ATTEMPTS: int = 5

    # Solver tolerances
    TOL_RESIDUAL: float = 1e-8
    TOL_IMAG: float = 1e-7
    TOL_POSITIVE: float = 1e-10
    EIGEN_SEPARATION: float = 1e-6
    LINEAR_FORM_ATTEMPTS: int = 5
    NEWTON_ITERATIONS: int = 20

    # Certification tolerances
    RANK_TOL: float = 1e-9
    MULTIPLIER_TOL: float = 1e-6
    DEFINITENESS_TOL: float = 1e-9

    @model_validator(mode="after")
    def _finalize(self) -> "Settings":
        tolerances = {
            "TOL_RESIDUAL": self.TOL_RESIDUAL,
            "TOL_IMAG": self.TOL_IMAG,
            "TOL_POSITIVE": self.TOL_POSITIVE,
            "EIGEN_SEPARATION": self.EIGEN_SEPARATION,
            "RANK_TOL": self.RANK_TOL,
            "MULTIPLIER_TOL": self.MULTIPLIER_TOL,
            "DEFINITENESS_TOL": self.DEFINITENESS_TOL,
        }
        for key, value in tolerances.items():
            if value <= 0:
                raise ValueError(f"{key} must be positive, got {value}")

        if self.DATA_MIN < 1 or self.DATA_MIN > self.DATA_MAX:
            raise ValueError("DATA_MIN must be >= 1 and not exceed DATA_MAX")

        if self.SCALE_MIN < 1 or self.SCALE_MIN > self.SCALE_MAX:
            raise ValueError("SCALE_MIN must be >= 1 and not exceed SCALE_MAX")

        if self.GROEBNER_TIMEOUT is not None and self.GROEBNER_TIMEOUT <= 0:
            raise ValueError("GROEBNER_TIMEOUT must be positive when set")

        for key in ("LINEAR_FORM_ATTEMPTS", "MINOR_ATTEMPTS", "NEWTON_ITERATIONS"):
            if getattr(self, key) < 1:
                raise ValueError(f"{key} must be at least 1")

        return self


# Singleton instance
settings = Settings()

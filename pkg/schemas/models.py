from __future__ import annotations

from pydantic import BaseModel, Field, field_validator

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class RuntimeSettings(BaseModel):
    """Ambient settings read from the environment; never inputs to a computation."""
    log_dir: str = Field(default="logs", description="DP1_LCT_LOG_DIR: directory of the rotating log file")
    log_level: str = Field(default="INFO", description="DP1_LCT_LOG_LEVEL: console log level")
    workers: int = Field(default=4, ge=1, le=64, description="DP1_LCT_WORKERS: worker threads for certify --all")

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, level: str) -> str:
        level = level.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {LOG_LEVELS}")
        return level

"""
Process settings read from the environment, with an optional .env file in the
project root supplying defaults.

Analysis parameters come from command-line flags only.
"""

import logging
import os
from pathlib import Path
from typing import Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from data.errors import InputError

logger = logging.getLogger(__name__)

VERSION = "0.1.0"
PROJECT_ROOT = Path(__file__).resolve().parent.parent

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _available_parallelism() -> int:
    return os.cpu_count() or 1


class Settings(BaseModel):
    log_level: str = "WARNING"
    jobs: int = Field(default_factory=_available_parallelism)
    report_dir: Path = Path(".")

    @field_validator("log_level")
    @classmethod
    def log_level_must_be_known(cls, v):
        v = v.strip().upper()
        if v not in LOG_LEVELS:
            raise ValueError(f"Log level must be one of {', '.join(LOG_LEVELS)}")
        return v

    @field_validator("jobs")
    @classmethod
    def jobs_must_be_positive(cls, v):
        if v < 1:
            raise ValueError("Job count must be at least 1")
        return v


def load_settings(env_file: Optional[Union[str, Path]] = None) -> Settings:
    """
    Build Settings from FRACTAL_LOG_LEVEL, FRACTAL_JOBS and FRACTAL_REPORT_DIR.

    Variables already set in the environment win over the .env file.

    Raises:
        InputError: If a variable holds an invalid value
    """
    load_dotenv(env_file or PROJECT_ROOT / ".env", override=False)

    values = {}
    if os.getenv("FRACTAL_LOG_LEVEL"):
        values["log_level"] = os.getenv("FRACTAL_LOG_LEVEL")
    if os.getenv("FRACTAL_JOBS"):
        values["jobs"] = os.getenv("FRACTAL_JOBS")
    if os.getenv("FRACTAL_REPORT_DIR"):
        values["report_dir"] = os.getenv("FRACTAL_REPORT_DIR")

    try:
        return Settings(**values)
    except ValidationError as e:
        raise InputError(f"Invalid environment setting: {e.errors()[0]['msg']}") from e

"""Runtime settings read from the environment."""

import os
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from qdich.errors import ConfigurationError

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class Settings(BaseModel):
    """Validated settings; none of them changes machine-readable output."""

    log_level: LogLevel = "WARNING"
    max_qubits: int = Field(default=24, ge=1, le=30)
    float_zero: float = Field(default=1e-12, gt=0.0)
    sampler_cache: int = Field(default=4096, ge=4)


def settings_from_env() -> Settings:
    """
    Read every QDICH_* variable.

    Raises:
        ConfigurationError: a variable is set to a value outside its range
    """
    raw = {
        "log_level": os.getenv("QDICH_LOG_LEVEL", "WARNING").upper(),
        "max_qubits": os.getenv("QDICH_MAX_QUBITS", "24"),
        "float_zero": os.getenv("QDICH_FLOAT_ZERO", "1e-12"),
        "sampler_cache": os.getenv("QDICH_SAMPLER_CACHE", "4096"),
    }
    try:
        return Settings.model_validate(raw)
    except ValidationError as e:
        fields = ", ".join("QDICH_" + str(err["loc"][0]).upper() for err in e.errors())
        raise ConfigurationError(f"invalid environment variable {fields}") from e


try:
    settings = settings_from_env()
except ConfigurationError:
    # library imports fall back to defaults; the CLI reports the bad variable
    settings = Settings()

# Format tag carried by every JSON file
FORMAT_TAG = "qdich-v1"

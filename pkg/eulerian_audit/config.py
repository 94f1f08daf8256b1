import os
from typing import Literal, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field

from .padic_lab import DEFAULT_CAP

ENV_PREFIX = "EULERIAN_AUDIT_"


class Settings(BaseModel):
    """Run-time knobs; CLI flags win over environment values."""

    model_config = ConfigDict(frozen=True)

    n_max: int = Field(default=10, ge=0)
    padic_cap: int = Field(default=DEFAULT_CAP, ge=1)
    workers: int = Field(default=4, ge=1)
    output_format: Literal["json", "csv"] = "json"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, **overrides) -> "Settings":
        environ = os.environ if environ is None else environ
        values = {}
        for name in cls.model_fields:
            key = ENV_PREFIX + name.upper()
            if key in environ:
                values[name] = environ[key]
        values.update({k: v for k, v in overrides.items() if v is not None})
        if isinstance(values.get("log_level"), str):
            values["log_level"] = values["log_level"].upper()
        return cls(**values)

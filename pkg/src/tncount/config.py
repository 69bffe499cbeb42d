"""Configuration models and loading."""

from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

METHODS = ("greedy", "lg", "ft", "portfolio")
TD_STRATEGIES = ("min-fill", "min-degree")


class AppSettings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="TNCOUNT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="INFO", description="Log level")
    log_file: Optional[str] = Field(default=None, description="Optional log file path")
    log_json: bool = Field(default=False, description="Emit JSON log lines")

    # Planning and contraction defaults
    mem_cap: int = Field(default=2**30, gt=0, description="Most tensor entries held at once during contraction")
    seconds_per_flop: float = Field(default=1e-10, gt=0, description="Cost model calibration")
    timeout: float = Field(default=1000.0, gt=0, description="Wall-clock budget in seconds")
    td_restarts: int = Field(default=16, ge=0, description="Restarts of the anytime TD search")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Accept standard level names only."""
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Invalid log level: {v}")
        return level


class RunConfig(BaseModel):
    """Options for one `count` run."""

    method: Literal["greedy", "lg", "ft", "portfolio"] = "lg"
    td_strategies: list[str] = Field(default_factory=lambda: list(TD_STRATEGIES))
    seed: int = 0
    timeout: float = Field(default=1000.0, gt=0)
    mem_cap: int = Field(default=2**30, gt=0)
    seconds_per_flop: float = Field(default=1e-10, gt=0)
    td_restarts: Optional[int] = Field(default=16, ge=0)
    weights: Literal["file", "unit"] = "file"
    import_td: Optional[Path] = None
    emit_tree: Optional[Path] = None
    emit_plan: Optional[Path] = None

    @field_validator("td_strategies", mode="before")
    @classmethod
    def split_strategies(cls, v: object) -> object:
        """Allow a comma separated string as well as a list."""
        if isinstance(v, str):
            return [part.strip() for part in v.split(",") if part.strip()]
        return v

    @field_validator("td_strategies")
    @classmethod
    def validate_strategies(cls, v: list[str]) -> list[str]:
        """Ensure a non-empty list of known strategies."""
        if not v:
            raise ValueError("at least one TD strategy is required")
        for name in v:
            if name not in TD_STRATEGIES:
                raise ValueError(f"Unknown TD strategy: {name}")
        return v

    @classmethod
    def from_settings(cls, settings: AppSettings, **overrides: object) -> "RunConfig":
        """Build a run config from settings, letting explicit values win."""
        base = {
            "timeout": settings.timeout,
            "mem_cap": settings.mem_cap,
            "seconds_per_flop": settings.seconds_per_flop,
            "td_restarts": settings.td_restarts,
        }
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(base)


def load_run_config(config_path: str | Path) -> dict:
    """Load run options from a YAML file.

    The result is a plain mapping so that command-line flags can be layered
    over it before validation.

    Args:
        config_path: Path to the YAML run file.

    Returns:
        Mapping of RunConfig field names to values.

    Raises:
        FileNotFoundError: If config file doesn't exist.
        ValueError: If the file holds unknown keys or is not a mapping.
    """
    config_path = Path(config_path)
    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}

    if not isinstance(data, dict):
        raise ValueError(f"Run config must be a mapping: {config_path}")
    unknown = set(data) - set(RunConfig.model_fields)
    if unknown:
        raise ValueError(f"Unknown run config keys: {', '.join(sorted(unknown))}")
    return data


def get_app_settings() -> AppSettings:
    """Load application settings from environment.

    Returns:
        AppSettings object with validated settings.
    """
    return AppSettings()

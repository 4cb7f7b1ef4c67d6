"""Configuration management using Pydantic Settings."""

import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ToolkitSettings(BaseSettings):
    """Toolkit settings, read from SUPERMODULI_* environment variables or a .env file."""

    model_config = SettingsConfigDict(
        env_prefix="SUPERMODULI_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "WARNING"
    log_format: str = "console"
    default_nr: str = "4,6,8,10"  # Comma-separated Ramond puncture counts
    extended_nr: str = "12"
    window_radius: int | None = None  # Overrides the automatic Cech window radius
    max_window_doublings: int = 4
    max_workers: int = Field(default=4, ge=1)
    report_timings: bool = False
    no_color: bool = False

    def get_default_nr(self) -> list[int]:
        """Parse the default puncture counts into a list."""
        return _parse_int_list(self.default_nr)

    def get_extended_nr(self) -> list[int]:
        """Parse the puncture counts only run with --extended."""
        return _parse_int_list(self.extended_nr)

    @property
    def colors_enabled(self) -> bool:
        """Colored output unless disabled here or through the NO_COLOR convention."""
        return not self.no_color and "NO_COLOR" not in os.environ


def _parse_int_list(raw: str) -> list[int]:
    return [int(part.strip()) for part in raw.split(",") if part.strip()]


# Global settings instance
_settings: ToolkitSettings | None = None


def get_settings() -> ToolkitSettings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = ToolkitSettings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next access re-reads the environment."""
    global _settings
    _settings = None

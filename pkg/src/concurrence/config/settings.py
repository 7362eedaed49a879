"""
Environment settings for the concurrence toolkit.

Work budgets and the default thread count are read from ``CT_``-prefixed
environment variables (or a local ``.env`` file) so that long batch runs can
be tuned without touching command lines.
"""

import os
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def _default_threads() -> int:
    return os.cpu_count() or 1


class ConcurrenceSettings(BaseSettings):
    """Process-wide tunables."""

    model_config = SettingsConfigDict(
        env_prefix="CT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    work_budget: int = Field(default=10**9, ge=1, description="Subset visits allowed when building a complex")
    euler_budget: int = Field(default=10**8, ge=1, description="Node visits allowed for inclusion-exclusion")
    threads: int = Field(default_factory=_default_threads, ge=1)
    lattice_max_vars: int = Field(default=25, ge=1, le=30)


@lru_cache(maxsize=1)
def get_settings() -> ConcurrenceSettings:
    """Return the cached settings instance."""
    return ConcurrenceSettings()


def reset_settings() -> None:
    """Drop the cached settings so the environment is re-read."""
    get_settings.cache_clear()

"""Toolkit configuration via pydantic-settings.

Reads from a .env file or MONAD_-prefixed environment variables. Only
budgets and logging are meant to be overridden from the environment;
matrices and seeds come from command-line flags or fixture files so that
every artifact records where its randomness came from.

Usage:
    from monad_surfaces.config import get_settings
    settings = get_settings()
    print(settings.groebner_pair_budget)
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Central configuration for monad-surfaces."""

    model_config = SettingsConfigDict(
        env_prefix="MONAD_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # --- Logging ---
    log_level: str = "INFO"
    json_logs: bool = False

    # --- Fields ---
    default_prime: int = 5

    # --- Search ---
    master_seed: int = 0
    trials: int = 100
    workers: int = 1
    sampling_scheme: Literal["grassmannian", "raw"] = "grassmannian"
    resample_attempts: int = 25

    # --- Budgets ---
    groebner_pair_budget: int = 200_000
    groebner_max_degree: int = 24
    smoothness_minor_combinations: int = 4
    prefilter_extension_degree: int = Field(default=2, ge=1, le=2)
    enumeration_max_extension: int = Field(default=3, ge=1, le=3)
    ideal_max_degree: int = 7

    # --- Output ---
    output_dir: Path = Path("runs")

    def budgets(self) -> dict[str, int]:
        """Budget snapshot recorded into every run artifact."""
        return {
            "groebner_pair_budget": self.groebner_pair_budget,
            "groebner_max_degree": self.groebner_max_degree,
            "smoothness_minor_combinations": self.smoothness_minor_combinations,
            "prefilter_extension_degree": self.prefilter_extension_degree,
            "enumeration_max_extension": self.enumeration_max_extension,
            "ideal_max_degree": self.ideal_max_degree,
            "resample_attempts": self.resample_attempts,
        }


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return a cached singleton of the toolkit settings."""
    return Settings()

"""Run configuration snapshot embedded in every artifact."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

from monad_surfaces.config import Settings


class RunConfig(BaseModel):
    """What a command was asked to do and with which budgets."""

    command: str = Field(..., description="CLI subcommand that produced the artifact")
    p: int = Field(..., ge=2, description="Prime of the coefficient field")
    master_seed: int = Field(default=0, description="Seed all trial seeds are split from")
    trials: int = Field(default=0, ge=0, description="Trial budget")
    sampling_scheme: str | None = Field(default=None, description="How B2 was drawn")
    workers: int = Field(default=1, ge=1)
    budgets: dict[str, int] = Field(default_factory=dict, description="Stage budgets")
    inputs: dict[str, str] = Field(default_factory=dict, description="Input matrix paths")
    output_dir: str | None = None

    @classmethod
    def from_settings(cls, settings: Settings, command: str, **overrides: Any) -> RunConfig:
        values: dict[str, Any] = {
            "command": command,
            "p": settings.default_prime,
            "master_seed": settings.master_seed,
            "trials": settings.trials,
            "sampling_scheme": settings.sampling_scheme,
            "workers": settings.workers,
            "budgets": settings.budgets(),
            "output_dir": str(settings.output_dir),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

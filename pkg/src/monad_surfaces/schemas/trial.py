"""Per-trial records streamed as JSON lines by the construction commands."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from monad_surfaces.domain.enums import BettiClass, TrialStage


class TrialRecord(BaseModel):
    """Outcome of one construction trial.

    A record is reproducible from (master seed, trial index); ``timings``
    is the only field that differs between replays and is left out of
    :meth:`canonical_json`.
    """

    model_config = ConfigDict(use_enum_values=False)

    trial_index: int = Field(..., ge=0)
    seed: int = Field(..., description="Per-trial seed split from the master seed")
    p: int = Field(..., ge=2)
    construction: Literal["I", "II"] = "I"
    scheme: str | None = Field(default=None, description="B2 sampling scheme")
    stage: TrialStage = Field(..., description="Last stage reached (REJECTED on failure)")
    failed_stage: TrialStage | None = Field(
        default=None, description="Stage the trial was in when it was rejected"
    )
    reason: str | None = None
    quick_filter_rank: int | None = None
    betti_class: BettiClass | None = None
    betti: dict[str, dict[str, int]] | None = None
    N: int | None = None
    B2: list[list[str]] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.stage is not TrialStage.REJECTED

    def canonical_json(self) -> str:
        return self.model_dump_json(exclude={"timings"})


class RunSummary(BaseModel):
    """Aggregate of a batch of trial records."""

    trials: int = 0
    stages: dict[str, int] = Field(default_factory=dict)
    betti_classes: dict[str, int] = Field(default_factory=dict)
    quick_filter_passed: int = 0
    hits: int = 0
    certified: int = 0
    hit_rate: float = 0.0
    band: tuple[int, int] | None = None
    in_band: bool | None = None

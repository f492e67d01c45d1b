"""Aggregate statistics over construction-I trial records."""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

from monad_surfaces.domain.enums import BettiClass, TrialStage
from monad_surfaces.schemas.trial import RunSummary, TrialRecord
from monad_surfaces.search import QUICK_FILTER_RANK

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator
    from pathlib import Path

# Two-sided Poisson 99% band around 18 expected hits in 5^4 * 10 trials over F_5.
HIT_BAND_TRIALS = 6250
HIT_BAND = (6, 36)


def load_records(path: Path) -> Iterator[TrialRecord]:
    with path.open(encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                yield TrialRecord.model_validate_json(line)


def summarize(
    records: Iterable[TrialRecord], band: tuple[int, int] | None = None
) -> RunSummary:
    """Counts by stage and Betti class; the hit band applies to a full 6250-trial run."""
    batch = list(records)
    stages: Counter[str] = Counter()
    classes: Counter[str] = Counter()
    passed_filter = 0
    for record in batch:
        # A rejected trial counts at the stage it failed in.
        stages[(record.failed_stage or record.stage).value] += 1
        if record.betti_class is not None:
            classes[record.betti_class.value] += 1
        if record.quick_filter_rank == QUICK_FILTER_RANK:
            passed_filter += 1
    hits = classes.get(BettiClass.HIT.value, 0)
    certified = stages.get(TrialStage.CERTIFIED.value, 0)
    if band is None and len(batch) == HIT_BAND_TRIALS:
        band = HIT_BAND
    return RunSummary(
        trials=len(batch),
        stages=dict(sorted(stages.items())),
        betti_classes=dict(sorted(classes.items())),
        quick_filter_passed=passed_filter,
        hits=hits,
        certified=certified,
        hit_rate=hits / len(batch) if batch else 0.0,
        band=band,
        in_band=band[0] <= hits <= band[1] if band else None,
    )

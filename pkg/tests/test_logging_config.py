"""Tests for the structlog setup: JSON lines on stderr, trial context, numpy fields."""

from __future__ import annotations

import json
import logging
from typing import TYPE_CHECKING

import numpy as np
import pytest
import structlog

from monad_surfaces.logging_config import get_logger, setup_logging, trial_context

if TYPE_CHECKING:
    from collections.abc import Iterator


@pytest.fixture
def restore_logging() -> Iterator[None]:
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    structlog.reset_defaults()


def _make_event(capsys: pytest.CaptureFixture[str]) -> dict[str, object]:
    lines = [line for line in capsys.readouterr().err.splitlines() if line.strip()]
    return json.loads(lines[-1])


@pytest.mark.usefixtures("restore_logging")
class TestSetupLogging:
    def test_trial_context_and_numpy_fields(self, capsys: pytest.CaptureFixture[str]) -> None:
        setup_logging("INFO", json_logs=True, to_stderr=True)
        with trial_context(trial_index=3, seed=77):
            get_logger("test").info(
                "search.trial.rejected", rank=np.int64(30), twists=np.array([3, 4])
            )
        event = _make_event(capsys)
        assert event["event"] == "search.trial.rejected"
        assert (event["trial_index"], event["seed"]) == (3, 77)
        assert event["rank"] == 30
        assert event["twists"] == [3, 4]
        assert "process" in event
        assert capsys.readouterr().out == ""

    def test_context_is_dropped_after_the_trial(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        setup_logging("INFO", json_logs=True, to_stderr=True)
        with trial_context(trial_index=1, seed=2):
            pass
        get_logger("test").info("search.done")
        assert "trial_index" not in _make_event(capsys)

    def test_level_filters_and_quiets_sympy(self, capsys: pytest.CaptureFixture[str]) -> None:
        setup_logging("WARNING", json_logs=True, to_stderr=True)
        get_logger("test").info("hidden")
        assert capsys.readouterr().err == ""
        assert logging.getLogger("sympy").level == logging.WARNING

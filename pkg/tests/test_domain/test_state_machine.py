"""Tests for the TrialStateMachine domain guard.

These tests verify that:
    1. The stages can only be passed in order.
    2. A trial can be rejected from every non-final stage.
    3. Final stages allow no further events.
    4. The convenience function validate_transition works.
"""

from __future__ import annotations

import pytest
from statemachine.exceptions import TransitionNotAllowed

from monad_surfaces.domain.enums import TrialStage
from monad_surfaces.domain.state_machine import TrialStateMachine, validate_transition

NON_FINAL = ["SAMPLED", "FILTERED", "BETTI_OK", "MONAD_BUILT", "IDEAL_EXTRACTED"]


class TestHappyPath:
    """Test the full lifecycle: SAMPLED -> CERTIFIED."""

    def test_full_lifecycle(self) -> None:
        sm = TrialStateMachine()
        assert sm.status == "SAMPLED"

        sm.rank_filter_passed()
        assert sm.status == "FILTERED"

        sm.betti_accepted()
        assert sm.status == "BETTI_OK"

        sm.monad_assembled()
        assert sm.status == "MONAD_BUILT"

        sm.ideal_extracted()
        assert sm.status == "IDEAL_EXTRACTED"

        sm.certified()
        assert sm.status == "CERTIFIED"
        assert sm.is_finished

    def test_status_matches_stage_enum(self) -> None:
        sm = TrialStateMachine("BETTI_OK")
        assert TrialStage(sm.status) is TrialStage.BETTI_OK


class TestRejection:
    """Every non-final stage can be rejected."""

    @pytest.mark.parametrize("stage", NON_FINAL)
    def test_reject(self, stage: str) -> None:
        sm = TrialStateMachine(stage)
        assert not sm.is_finished
        sm.reject()
        assert sm.status == "REJECTED"
        assert sm.is_finished


class TestIllegalTransitions:
    """Verify that illegal transitions raise TransitionNotAllowed."""

    def test_cannot_skip_filter(self) -> None:
        sm = TrialStateMachine("SAMPLED")
        with pytest.raises(TransitionNotAllowed):
            sm.betti_accepted()

    def test_cannot_certify_without_ideal(self) -> None:
        sm = TrialStateMachine("MONAD_BUILT")
        with pytest.raises(TransitionNotAllowed):
            sm.certified()

    def test_rejected_cannot_resume(self) -> None:
        sm = TrialStateMachine("REJECTED")
        with pytest.raises(TransitionNotAllowed):
            sm.rank_filter_passed()

    @pytest.mark.parametrize("stage", ["CERTIFIED", "REJECTED"])
    def test_final_stages(self, stage: str) -> None:
        assert TrialStateMachine(stage).get_allowed_events() == []


class TestAllowedEvents:
    """Test the get_allowed_events helper."""

    def test_sampled_allowed(self) -> None:
        allowed = TrialStateMachine("SAMPLED").get_allowed_events()
        assert set(allowed) == {"rank_filter_passed", "reject"}

    def test_ideal_extracted_allowed(self) -> None:
        allowed = TrialStateMachine("IDEAL_EXTRACTED").get_allowed_events()
        assert set(allowed) == {"certified", "reject"}

    def test_allowed_events_fire_by_name(self) -> None:
        for event in TrialStateMachine("BETTI_OK").get_allowed_events():
            sm = TrialStateMachine("BETTI_OK")
            getattr(sm, event)()
            assert sm.status in {"MONAD_BUILT", "REJECTED"}


class TestValidateTransitionFunction:
    """Test the convenience function."""

    def test_valid_transition(self) -> None:
        assert validate_transition("FILTERED", "betti_accepted") == "BETTI_OK"

    def test_illegal_transition(self) -> None:
        with pytest.raises(TransitionNotAllowed):
            validate_transition("FILTERED", "certified")

    def test_invalid_event_name(self) -> None:
        with pytest.raises(ValueError, match="Unknown event"):
            validate_transition("FILTERED", "nonexistent_event")

    def test_invalid_stage(self) -> None:
        with pytest.raises(ValueError, match="Unknown stage"):
            TrialStateMachine("INVALID_STAGE")

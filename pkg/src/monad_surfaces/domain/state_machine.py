"""Construction Trial State Machine Guard.

Uses python-statemachine to enforce the stage order of a construction trial.
A pipeline can only record a certified surface after every cheaper filter
has passed, and a rejected trial cannot be resumed.

Transition table:
    SAMPLED          -> FILTERED          (rank_filter_passed)
    FILTERED         -> BETTI_OK          (betti_accepted)
    BETTI_OK         -> MONAD_BUILT       (monad_assembled)
    MONAD_BUILT      -> IDEAL_EXTRACTED   (ideal_extracted)
    IDEAL_EXTRACTED  -> CERTIFIED         (certified)
    any non-final    -> REJECTED          (reject)
"""

from __future__ import annotations

from statemachine import State, StateMachine


class TrialStateMachine(StateMachine):
    """State machine that guards construction trial stages.

    Usage:
        sm = TrialStateMachine()
        sm.rank_filter_passed()  # transitions to FILTERED
        sm.status                # "FILTERED"
    """

    # --- States ---
    SAMPLED = State("SAMPLED", initial=True)
    FILTERED = State("FILTERED")
    BETTI_OK = State("BETTI_OK")
    MONAD_BUILT = State("MONAD_BUILT")
    IDEAL_EXTRACTED = State("IDEAL_EXTRACTED")
    CERTIFIED = State("CERTIFIED", final=True)
    REJECTED = State("REJECTED", final=True)

    # --- Events / Transitions ---
    rank_filter_passed = SAMPLED.to(FILTERED)
    betti_accepted = FILTERED.to(BETTI_OK)
    monad_assembled = BETTI_OK.to(MONAD_BUILT)
    ideal_extracted = MONAD_BUILT.to(IDEAL_EXTRACTED)
    certified = IDEAL_EXTRACTED.to(CERTIFIED)

    reject = (
        SAMPLED.to(REJECTED)
        | FILTERED.to(REJECTED)
        | BETTI_OK.to(REJECTED)
        | MONAD_BUILT.to(REJECTED)
        | IDEAL_EXTRACTED.to(REJECTED)
    )

    def __init__(self, current_status: str = "SAMPLED") -> None:
        """Initialize the state machine at a given stage.

        Args:
            current_status: A TrialStage value (e.g., "BETTI_OK").
        """
        valid_values = {s.value for s in self.states}
        if current_status not in valid_values:
            valid = ", ".join(sorted(valid_values))
            raise ValueError(f"Unknown stage '{current_status}'. Valid stages: {valid}")
        super().__init__(start_value=current_status)

    @property
    def status(self) -> str:
        """Return the current stage value as a string (matches TrialStage)."""
        return str(self.current_state.value)

    @property
    def is_finished(self) -> bool:
        return bool(self.current_state.final)

    def get_allowed_events(self) -> list[str]:
        """Return the identifiers of the events that can fire from the current stage."""
        # Event.id is the identifier where it exists; Event.name became a display label there.
        return [getattr(event, "id", None) or event.name for event in self.allowed_events]


def validate_transition(current_status: str, event_name: str) -> str:
    """Validate a stage transition and return the new stage.

    Args:
        current_status: Current TrialStage value.
        event_name: The event to fire (e.g., "betti_accepted").

    Returns:
        The new stage string after the transition.

    Raises:
        TransitionNotAllowed: If the transition is illegal.
        ValueError: If the stage or event name is invalid.
    """
    sm = TrialStateMachine(current_status=current_status)

    event_method = getattr(sm, event_name, None)
    if event_method is None or not callable(event_method):
        raise ValueError(
            f"Unknown event '{event_name}'. "
            f"Allowed events from {current_status}: {sm.get_allowed_events()}"
        )

    event_method()
    return sm.status

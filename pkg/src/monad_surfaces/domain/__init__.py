"""Domain layer: enums, exceptions, the trial state machine and the check protocol."""

from monad_surfaces.domain.check_protocol import CertificateCheck, CheckRequest, CheckResult
from monad_surfaces.domain.enums import (
    BettiClass,
    CheckType,
    SamplingScheme,
    TrialStage,
    Verdict,
)
from monad_surfaces.domain.exceptions import MonadSurfacesError
from monad_surfaces.domain.state_machine import TrialStateMachine, validate_transition

__all__ = [
    "BettiClass",
    "CheckType",
    "SamplingScheme",
    "TrialStage",
    "Verdict",
    "MonadSurfacesError",
    "TrialStateMachine",
    "validate_transition",
    "CertificateCheck",
    "CheckRequest",
    "CheckResult",
]

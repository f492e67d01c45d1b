"""Domain enumerations for monad-surfaces.

These enums name the canonical stages, verdicts and check types used by the
pipelines, the certificate schema and the CLI.
"""

import enum


class TrialStage(enum.StrEnum):
    """Lifecycle stages of a construction trial.

    Transitions are enforced by the TrialStateMachine guard.
    See domain/state_machine.py for the transition table.
    """

    SAMPLED = "SAMPLED"
    FILTERED = "FILTERED"
    BETTI_OK = "BETTI_OK"
    MONAD_BUILT = "MONAD_BUILT"
    IDEAL_EXTRACTED = "IDEAL_EXTRACTED"
    CERTIFIED = "CERTIFIED"
    REJECTED = "REJECTED"


class BettiClass(enum.StrEnum):
    """Classification of the syzygy shape of a candidate B.

    HIT is the shape with a1=5 and a2=0. A1_10 is the shape that passes the
    rank filter but has ten linear second syzygies and no monad of the
    desired type.
    """

    HIT = "hit"
    A1_10 = "a1_10"
    OTHER = "other"


class Verdict(enum.StrEnum):
    """Outcome of a Jacobian smoothness test.

    UNDETERMINED is returned when a Groebner budget runs out; it is never
    reported as smooth or singular.
    """

    SMOOTH = "smooth"
    NOT_SMOOTH = "not_smooth"
    UNDETERMINED = "undetermined"


class SamplingScheme(enum.StrEnum):
    """How construction I draws the quadratic block B2."""

    GRASSMANNIAN = "grassmannian"
    RAW = "raw"


class CheckType(enum.StrEnum):
    """Certificate checks re-run by the verify command, in execution order."""

    BETTI = "betti"
    COMPLEX = "complex"
    SECTIONS = "sections"
    HILBERT = "hilbert"
    TATE = "tate"
    TANGENT = "tangent"
    ADJUNCTION = "adjunction"

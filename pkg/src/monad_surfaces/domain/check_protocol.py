"""Certificate check protocol.

Every check re-derives one group of certificate fields from the stored
matrices and compares. Checks are structural (Protocol): a concrete check
only needs a matching ``run`` method and a ``check_type``.

The objects that several checks share (the monad, the surface ideal) are
built lazily by the context and reused across checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Protocol, runtime_checkable

if TYPE_CHECKING:
    from monad_surfaces.domain.enums import CheckType


@dataclass(frozen=True)
class CheckRequest:
    """Input to a check.

    Attributes:
        certificate: The SurfaceCertificate under verification.
        context: Lazily built shared objects (see services.verification).
    """

    certificate: Any
    context: Any


@dataclass(frozen=True)
class CheckResult:
    """Output from a check.

    Attributes:
        check: Which check produced the result.
        passed: Whether every recomputed value matched.
        skipped: True when the certificate has no fields for this check.
        details: One-line human-readable summary.
        mismatches: field -> {"stored": ..., "computed": ...} for each disagreement.
        error: Error code when the recomputation itself failed.
    """

    check: CheckType
    passed: bool
    skipped: bool = False
    details: str = ""
    mismatches: dict[str, dict[str, Any]] = field(default_factory=dict)
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check.value,
            "passed": self.passed,
            "skipped": self.skipped,
            "details": self.details,
            "mismatches": self.mismatches,
            "error": self.error,
        }


@runtime_checkable
class CertificateCheck(Protocol):
    """Protocol that all certificate checks satisfy.

    Concrete implementations live in verifiers/.
    """

    check_type: CheckType

    def run(self, request: CheckRequest) -> CheckResult:
        """Recompute the fields this check owns and compare with the stored ones."""
        ...

"""Helpers shared by the certificate checks."""

from __future__ import annotations

from collections.abc import Callable, Mapping
from typing import Any

from monad_surfaces.domain.check_protocol import CheckRequest, CheckResult
from monad_surfaces.domain.enums import CheckType
from monad_surfaces.domain.exceptions import MonadSurfacesError
from monad_surfaces.logging_config import get_logger

logger = get_logger(__name__)

Mismatches = dict[str, dict[str, Any]]


def compare(
    stored: Mapping[str, Any], computed: Mapping[str, Any], prefix: str = ""
) -> Mismatches:
    """Mismatches for every stored key that is not None; extra computed keys are ignored."""
    out: Mismatches = {}
    for key, value in stored.items():
        if value is None:
            continue
        got = computed.get(key)
        if got != value:
            out[f"{prefix}{key}"] = {"stored": value, "computed": got}
    return out


def guarded(
    check_type: CheckType,
    body: Callable[[CheckRequest], Mismatches | None],
    request: CheckRequest,
) -> CheckResult:
    """Run ``body``; None means nothing to check, a library error fails the check."""
    try:
        mismatches = body(request)
    except MonadSurfacesError as exc:
        logger.warning(f"verifier.{check_type.value}.error", code=exc.code, error=exc.message)
        return CheckResult(check_type, False, details=exc.message, error=exc.code)
    if mismatches is None:
        return CheckResult(check_type, True, skipped=True, details="nothing stored to check")
    if mismatches:
        fields = ", ".join(sorted(mismatches))
        return CheckResult(check_type, False, details=f"mismatch in {fields}", mismatches=mismatches)
    return CheckResult(check_type, True, details="all stored values reproduced")

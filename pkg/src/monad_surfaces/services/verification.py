"""Verification service: re-run certificate checks from the stored matrices.

Coordinates between:
    - CertificateContext (monad, sections and ideal, built once and shared)
    - CheckFactory (one check per CheckType)
    - VerificationReport (ordered results, first failure)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Any

import numpy as np

from monad_surfaces.domain.check_protocol import CheckRequest, CheckResult
from monad_surfaces.domain.enums import CheckType
from monad_surfaces.logging_config import get_logger
from monad_surfaces.monad import (
    EmbeddingFunctional,
    HomologySections,
    Monad,
    SurfaceIdeal,
    assemble_B,
    build_AB,
    embedding_functional,
    homology_sections,
    ideal_of_surface,
)
from monad_surfaces.verifiers import CheckFactory

if TYPE_CHECKING:
    from collections.abc import Iterable

    from monad_surfaces.algebra.emod import EMatrix
    from monad_surfaces.schemas.certificate import SurfaceCertificate

logger = get_logger(__name__)


class CertificateContext:
    """Objects derived from a certificate's matrices, built on first use."""

    def __init__(self, certificate: SurfaceCertificate, max_deg: int = 7) -> None:
        self.certificate = certificate
        self.max_deg = max_deg
        self._sections: dict[int, HomologySections] = {}

    @cached_property
    def B1(self) -> EMatrix:
        return self.certificate.B1.to_ematrix()

    @cached_property
    def B(self) -> EMatrix:
        return assemble_B(self.certificate.B2.to_ematrix(), self.B1)

    @cached_property
    def A(self) -> EMatrix:
        if self.certificate.A is not None:
            return self.certificate.A.to_ematrix()
        return build_AB(self.B)

    @cached_property
    def monad(self) -> Monad:
        return Monad(self.A, self.B)

    @cached_property
    def functional(self) -> EmbeddingFunctional:
        return embedding_functional(self.monad)

    def sections(self, k: int) -> HomologySections:
        if k not in self._sections:
            self._sections[k] = homology_sections(self.monad, k, self.functional)
        return self._sections[k]

    @cached_property
    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.certificate.seed or 0)

    @cached_property
    def surface(self) -> SurfaceIdeal:
        return ideal_of_surface(self.monad, self.max_deg, rng=self.rng)


@dataclass
class VerificationReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.passed), None)

    def to_dict(self) -> dict[str, Any]:
        failure = self.first_failure
        return {
            "passed": self.passed,
            "first_failure": failure.check.value if failure else None,
            "results": [r.to_dict() for r in self.results],
        }


class VerificationService:
    """Runs the requested checks, in CheckType order, against one certificate."""

    def __init__(self, certificate: SurfaceCertificate, max_deg: int = 7) -> None:
        self._certificate = certificate
        self._context = CertificateContext(certificate, max_deg)

    @property
    def context(self) -> CertificateContext:
        return self._context

    def verify(self, checks: Iterable[CheckType | str] | None = None) -> VerificationReport:
        requested = {CheckType(c) for c in checks} if checks is not None else set(CheckType)
        request = CheckRequest(self._certificate, self._context)
        report = VerificationReport()
        for check_type in CheckType:
            if check_type not in requested:
                continue
            result = CheckFactory.create(check_type).run(request)
            report.results.append(result)
            if result.skipped:
                logger.debug("verification.skipped", check=check_type.value)
            elif result.passed:
                logger.info("verification.passed", check=check_type.value)
            else:
                logger.info(
                    "verification.failed",
                    check=check_type.value,
                    error=result.error,
                    details=result.details[:100],
                )
        return report

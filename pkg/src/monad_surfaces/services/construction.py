"""Construction pipelines: batches of construction-I trials, construction II, replay.

Trials are independent given their seeds, so a batch may fan out over a
process pool. Results come back in trial-index order and every file write
goes through one RecordWriter in the parent process.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from monad_surfaces.domain.enums import TrialStage
from monad_surfaces.domain.exceptions import CertificateMismatchError
from monad_surfaces.logging_config import get_logger
from monad_surfaces.schemas.certificate import SurfaceCertificate
from monad_surfaces.schemas.matrices import EMatrixModel
from monad_surfaces.search import construct1_trial, construct2_pipeline
from monad_surfaces.services.certification import build_certificate
from monad_surfaces.services.stats import summarize

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path
    from types import TracebackType

    from monad_surfaces.algebra.emod import EMatrix
    from monad_surfaces.schemas.run import RunConfig
    from monad_surfaces.schemas.trial import RunSummary, TrialRecord
    from monad_surfaces.search import TrialOutcome

logger = get_logger(__name__)

RECORDS_FILE = "trials.jsonl"


class RecordWriter:
    """Appends trial records as JSON lines and certificates as files under one directory."""

    def __init__(self, output_dir: Path | None) -> None:
        self._dir = output_dir
        self._handle: Any = None

    def __enter__(self) -> RecordWriter:
        if self._dir is not None:
            self._dir.mkdir(parents=True, exist_ok=True)
            self._handle = (self._dir / RECORDS_FILE).open("w", encoding="utf-8")
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def record(self, record: TrialRecord) -> None:
        if self._handle is not None:
            self._handle.write(record.model_dump_json() + "\n")

    def certificate(self, certificate: SurfaceCertificate) -> Path | None:
        if self._dir is None:
            return None
        path = self._dir / f"certificate_{certificate.trial_index:06d}.json"
        certificate.dump(path)
        return path


@dataclass
class ConstructionResult:
    records: list[TrialRecord] = field(default_factory=list)
    certificates: list[SurfaceCertificate] = field(default_factory=list)
    summary: RunSummary | None = None


@dataclass(frozen=True)
class _Job:
    trial_index: int
    master_seed: int
    B1: EMatrixModel
    scheme: str
    until: TrialStage
    certify: bool
    run: RunConfig | None


def _certify(outcome: TrialOutcome, B1: EMatrix, job: _Job) -> SurfaceCertificate | None:
    if not job.certify or outcome.record.stage is not TrialStage.CERTIFIED:
        return None
    return build_certificate(outcome, B1, run=job.run, residual=False)


def _run_job(job: _Job) -> tuple[TrialRecord, SurfaceCertificate | None]:
    """Process-pool entry point; returns only picklable pydantic models."""
    B1 = job.B1.to_ematrix()
    outcome = construct1_trial(
        job.trial_index, job.master_seed, B1, scheme=job.scheme, until=job.until
    )
    return outcome.record, _certify(outcome, B1, job)


def _results(
    jobs: list[_Job], workers: int
) -> Iterator[tuple[TrialRecord, SurfaceCertificate | None]]:
    if workers <= 1 or len(jobs) <= 1:
        yield from map(_run_job, jobs)
        return
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        # map keeps submission order, so results arrive sorted by trial index.
        yield from pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (4 * workers)))
    finally:
        pool.shutdown(cancel_futures=True)


def run_construct1(
    config: RunConfig,
    B1: EMatrix,
    *,
    until: TrialStage = TrialStage.CERTIFIED,
    certify: bool = True,
    first: bool = False,
    output_dir: Path | None = None,
) -> ConstructionResult:
    """Run ``config.trials`` construction-I trials and summarize them.

    With ``first`` the batch stops at the first trial that reaches ``until``.
    """
    jobs = [
        _Job(i, config.master_seed, EMatrixModel.from_ematrix(B1),
             config.sampling_scheme or "grassmannian", until, certify, config)
        for i in range(config.trials)
    ]
    logger.info("construction.construct1.start", trials=len(jobs), workers=config.workers)
    result = ConstructionResult()
    with RecordWriter(output_dir) as writer:
        for record, certificate in _results(jobs, config.workers):
            writer.record(record)
            result.records.append(record)
            if certificate is not None:
                writer.certificate(certificate)
                result.certificates.append(certificate)
            if first and record.stage is until:
                logger.info("construction.construct1.first", trial_index=record.trial_index)
                break
    result.summary = summarize(result.records)
    logger.info("construction.construct1.done", **result.summary.model_dump(include={
        "trials", "quick_filter_passed", "hits", "certified",
    }))
    return result


def run_construct2(
    config: RunConfig,
    A1: EMatrix,
    B1: EMatrix,
    *,
    until: TrialStage = TrialStage.CERTIFIED,
    hyperplane_class: str | None = None,
    six_secants: int | None = None,
    output_dir: Path | None = None,
) -> tuple[TrialOutcome, SurfaceCertificate | None]:
    """One construction-II pipeline run with trial index 0 of the master seed."""
    outcome = construct2_pipeline(A1, B1, master_seed=config.master_seed, until=until)
    certificate = None
    if outcome.record.stage in (TrialStage.IDEAL_EXTRACTED, TrialStage.CERTIFIED):
        certificate = build_certificate(
            outcome, B1, A1=A1, run=config,
            hyperplane_class=hyperplane_class, six_secants=six_secants,
        )
    with RecordWriter(output_dir) as writer:
        writer.record(outcome.record)
        if certificate is not None:
            writer.certificate(certificate)
    return outcome, certificate


def replay(certificate: SurfaceCertificate) -> SurfaceCertificate:
    """Re-derive a certificate from its stored matrices and seed; raise on any difference."""
    if certificate.seed is None:
        raise CertificateMismatchError("certificate has no trial seed to replay from")
    B1 = certificate.B1.to_ematrix()
    adjunction = certificate.adjunction
    if certificate.construction == "I":
        outcome = construct1_trial(
            certificate.trial_index, 0, B1,
            B2=certificate.B2.to_ematrix(), seed=certificate.seed,
        )
        A1 = None
    else:
        if certificate.A1 is None:
            raise CertificateMismatchError("construction II certificate without A1")
        A1 = certificate.A1.to_ematrix()
        outcome = construct2_pipeline(
            A1, B1, trial_index=certificate.trial_index, seed=certificate.seed,
        )
    rebuilt = build_certificate(
        outcome, B1, A1=A1, run=certificate.run,
        hyperplane_class=adjunction.hyperplane_class if adjunction else None,
        six_secants=adjunction.six_secants if adjunction else None,
        tangent=certificate.tangent is not None,
        residual=certificate.residual is not None,
    )
    if rebuilt.canonical_json() != certificate.canonical_json():
        raise CertificateMismatchError(
            "replay differs from the stored certificate",
            {"stored": certificate.canonical_json(), "replayed": rebuilt.canonical_json()},
        )
    return rebuilt


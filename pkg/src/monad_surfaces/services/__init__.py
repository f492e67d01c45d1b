"""Application services: construction pipelines, certification, verification, statistics."""

from monad_surfaces.services.certification import build_certificate
from monad_surfaces.services.construction import replay, run_construct1, run_construct2
from monad_surfaces.services.stats import summarize
from monad_surfaces.services.verification import VerificationService

__all__ = [
    "VerificationService",
    "build_certificate",
    "replay",
    "run_construct1",
    "run_construct2",
    "summarize",
]

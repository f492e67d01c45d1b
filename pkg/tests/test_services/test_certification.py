"""Tests for certificate building, certificate files and replay."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pytest

from monad_surfaces.domain.enums import TrialStage
from monad_surfaces.domain.exceptions import CertificateMismatchError, ParseError
from monad_surfaces.schemas.certificate import SurfaceCertificate
from monad_surfaces.schemas.matrices import EMatrixModel
from monad_surfaces.schemas.trial import TrialRecord
from monad_surfaces.search import TrialOutcome, construct1_trial
from monad_surfaces.services.certification import build_certificate
from monad_surfaces.services.construction import RecordWriter, replay

if TYPE_CHECKING:
    from pathlib import Path

    from monad_surfaces.algebra.emod import EMatrix


class TestCertificateFiles:
    def test_matrices_round_trip(
        self, published_certificate: SurfaceCertificate, b1: EMatrix, b2_published: EMatrix
    ) -> None:
        assert published_certificate.B1.to_ematrix() == b1
        assert published_certificate.B2.to_ematrix() == b2_published
        assert published_certificate.quick_filter_rank is None

    def test_twist_keys_on_disk(
        self, published_certificate: SurfaceCertificate, tmp_path: Path
    ) -> None:
        path = tmp_path / "cert.json"
        published_certificate.dump(path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload["B1"]["source_twists"] == [1, 1]
        assert payload["B1"]["target_twists"] == [0, 0, 0]
        assert "source" not in payload["B1"]

    def test_dump_and_load(self, published_certificate: SurfaceCertificate, tmp_path: Path) -> None:
        with RecordWriter(tmp_path) as writer:
            path = writer.certificate(published_certificate)
        assert path is not None
        assert path.name == "certificate_000000.json"
        loaded = SurfaceCertificate.load(path)
        assert loaded.canonical_json() == published_certificate.canonical_json()

    def test_schema_alias(self, published_certificate: SurfaceCertificate) -> None:
        assert '"schema":"monad-surfaces/certificate"' in published_certificate.canonical_json()

    def test_invalid_file(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.json"
        path.write_text('{"p": 5}', encoding="utf-8")
        with pytest.raises(ParseError):
            SurfaceCertificate.load(path)


class TestBuildCertificate:
    def test_rejected_trial_is_refused(self, b1: EMatrix, b2_published: EMatrix) -> None:
        outcome = construct1_trial(0, 0, b1, B2=b2_published)
        with pytest.raises(CertificateMismatchError) as excinfo:
            build_certificate(outcome, b1)
        assert excinfo.value.details["stage"] == "REJECTED"
        assert excinfo.value.details["reason"] == "quick filter rank 30"

    def test_early_stage_is_refused(self, b1: EMatrix) -> None:
        record = TrialRecord(trial_index=0, seed=0, p=5, stage=TrialStage.FILTERED)
        with pytest.raises(CertificateMismatchError) as excinfo:
            build_certificate(TrialOutcome(record), b1)
        assert excinfo.value.details["stage"] == "FILTERED"

    def test_replay_needs_seed(self, published_certificate: SurfaceCertificate) -> None:
        unseeded = published_certificate.model_copy(update={"seed": None})
        with pytest.raises(CertificateMismatchError, match="no trial seed"):
            replay(unseeded)


class TestMatrixFiles:
    ENTRIES = [["e_{0}", "e_{1}"], ["e_{1}", "e_{2}"], ["e_{3}", "e_{4}"]]

    def test_twist_keys_and_field_names_both_load(self, b1: EMatrix) -> None:
        keyed = EMatrixModel.model_validate(
            {"p": 5, "source_twists": [1, 1], "target_twists": [0, 0, 0], "entries": self.ENTRIES}
        )
        named = EMatrixModel(p=5, source=[1, 1], target=[0, 0, 0], entries=self.ENTRIES)
        assert keyed == named
        assert keyed.to_ematrix() == b1

    def test_dump_uses_twist_keys(self, b1: EMatrix) -> None:
        payload = EMatrixModel.from_ematrix(b1).model_dump(by_alias=True)
        assert payload["source_twists"] == [1, 1]
        assert payload["target_twists"] == [0, 0, 0]

    def test_load_reports_path(self, tmp_path: Path) -> None:
        path = tmp_path / "b.json"
        path.write_text('{"p": 5, "source_twists": [1]}', encoding="utf-8")
        with pytest.raises(ParseError):
            EMatrixModel.load(path)

"""Pydantic schema for E-matrices on disk.

The JSON form of an E-matrix lists the module twists and the entries as
exterior-algebra literals:

    {"p": 5, "source_twists": [1, 1], "target_twists": [0, 0, 0],
     "entries": [["e_{0}", "e_{1}"], ["e_{1}", "e_{2}"], ["e_{3}", "e_{4}"]]}

Fixture files, certificates and the CLI all use this one format. The
Python attributes stay ``source``/``target``; both spellings load.
"""

from __future__ import annotations

from pathlib import Path  # noqa: TC003 - needed at runtime by Pydantic

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from monad_surfaces.algebra.emod import EMatrix
from monad_surfaces.domain.exceptions import ParseError


class EMatrixModel(BaseModel):
    """A homogeneous matrix sum_c E(source[c]) -> sum_r E(target[r])."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    p: int = Field(..., ge=2, description="Characteristic of the coefficient field")
    source: list[int] = Field(
        ..., alias="source_twists", description="Twists of the source summands"
    )
    target: list[int] = Field(
        ..., alias="target_twists", description="Twists of the target summands"
    )
    entries: list[list[str]] = Field(
        ...,
        description="Row-major entries as exterior literals",
        examples=[[["e_{23}-e_{34}", "2e_{23}+e_{24}-2e_{34}"]]],
    )
    label: str | None = Field(default=None, description="Free-form provenance note")

    @classmethod
    def from_ematrix(cls, M: EMatrix, label: str | None = None) -> EMatrixModel:
        return cls(
            p=M.p,
            source=list(M.source),
            target=list(M.target),
            entries=M.to_strings(),
            label=label,
        )

    def to_ematrix(self) -> EMatrix:
        return EMatrix.from_strings(self.p, self.source, self.target, self.entries)

    @classmethod
    def load(cls, path: Path) -> EMatrixModel:
        text = path.read_text(encoding="utf-8")
        try:
            return cls.model_validate_json(text)
        except ValidationError as exc:
            raise ParseError(str(path), f"{exc.error_count()} validation errors") from exc

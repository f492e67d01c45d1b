"""Versioned JSON certificate of a constructed surface.

A certificate stores the input matrices and every number the pipeline
derived from them. Blocks that were not computed are left out; ``verify``
re-runs exactly the checks whose blocks are present, so a certificate may
hold published values alone and still be checked end to end.
"""

from __future__ import annotations

from pathlib import Path  # noqa: TC003 - needed at runtime by Pydantic
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from monad_surfaces.domain.enums import BettiClass, Verdict
from monad_surfaces.domain.exceptions import ParseError
from monad_surfaces.schemas.matrices import EMatrixModel
from monad_surfaces.schemas.run import RunConfig

CERTIFICATE_SCHEMA = "monad-surfaces/certificate"
CERTIFICATE_VERSION = 1


class HilbertBlock(BaseModel):
    polynomial: str = Field(..., examples=["6*t**2 - 6*t + 1"])
    dimension: int
    degree: int
    sectional_genus: int | None = None
    chi: int | None = None
    generator_degrees: dict[str, int] | None = Field(
        default=None, description="Minimal generator count per degree"
    )
    generators: list[str] | None = Field(default=None, description="Saturated ideal generators")


class SmoothnessBlock(BaseModel):
    verdict: Verdict
    method: str
    singular_dimension: int | None = None


class ResidualBlock(BaseModel):
    """Residual scheme of the surface in the base locus of the quintics."""

    dimension: int
    degree: int
    linear_forms: list[str] = Field(default_factory=list)


class TateBlock(BaseModel):
    """Twist counts of the Tate resolution, left to right, ending at the target of B."""

    left_window: list[dict[str, int]]
    right_step: dict[str, int] | None = None


class TangentBlock(BaseModel):
    kernel_dim: int
    group_dim: int
    tangent_dim: int
    moduli_dim: int | None = None
    N: int | None = None
    family_dim: int | None = None
    codimension: int | None = None


class AdjunctionBlock(BaseModel):
    hyperplane_class: str = Field(..., examples=["12L - 2*4E - 9*3E - 3*2E - 7*1E"])
    six_secants: int | None = None
    degree: int = 12
    sectional_genus: int = 13
    chain_length: int | None = None
    final_degree: int | None = None


class SurfaceCertificate(BaseModel):
    """Inputs plus derived invariants of one monad surface."""

    model_config = ConfigDict(populate_by_name=True)

    schema_id: Literal["monad-surfaces/certificate"] = Field(
        default=CERTIFICATE_SCHEMA, alias="schema"
    )
    version: int = CERTIFICATE_VERSION
    construction: Literal["I", "II"] = "I"
    p: int = Field(..., ge=2)
    trial_index: int = 0
    seed: int | None = Field(default=None, description="Trial seed the sample was drawn with")
    run: RunConfig | None = None

    B1: EMatrixModel
    B2: EMatrixModel
    A1: EMatrixModel | None = Field(default=None, description="Fixed linear block of A")
    A: EMatrixModel | None = Field(default=None, description="A_B; rebuilt from B when absent")

    betti: dict[str, dict[str, int]] | None = None
    betti_class: BettiClass | None = None
    ab_passed: bool | None = None
    quick_filter_rank: int | None = None
    N: int | None = None
    sections: dict[str, dict[str, int]] | None = Field(
        default=None, description="Per offset k: dimensions of the section complex in degree 4 + k"
    )
    natural_table: dict[str, dict[str, int]] | None = None
    tate: TateBlock | None = None
    hilbert: HilbertBlock | None = None
    smoothness: SmoothnessBlock | None = None
    residual: ResidualBlock | None = None
    tangent: TangentBlock | None = None
    adjunction: AdjunctionBlock | None = None

    def canonical_json(self) -> str:
        """Serialization used for replay comparison; the run snapshot is left out."""
        return self.model_dump_json(by_alias=True, exclude={"run"}, exclude_none=True)

    def dump(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            self.model_dump_json(by_alias=True, exclude_none=True, indent=2) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: Path) -> SurfaceCertificate:
        try:
            return cls.model_validate_json(path.read_text(encoding="utf-8"))
        except ValidationError as exc:
            raise ParseError(str(path), f"{exc.error_count()} validation errors") from exc

"""Published matrices, shipped as package data."""

from __future__ import annotations

from importlib import resources

from monad_surfaces.algebra.emod import EMatrix
from monad_surfaces.schemas.matrices import EMatrixModel

# Fixed linear blocks A1 of construction II, keyed like adjunction.FAMILIES.
A1_FIXTURES: dict[str, str] = {
    "i": "a1_i",
    "ii": "a1_ii",
    "iii": "a1_iii",
    "iv": "a1_iv",
    "f3": "a1_f3",
}


def _read(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_model(name: str) -> EMatrixModel:
    return EMatrixModel.model_validate_json(_read(name))


def load_matrix(name: str, p: int | None = None) -> EMatrix:
    """Load a fixture matrix; ``p`` re-reads its integer literals over another prime."""
    model = load_model(name)
    if p is not None and p != model.p:
        model = model.model_copy(update={"p": p})
    return model.to_ematrix()

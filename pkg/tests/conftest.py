"""Shared test fixtures for the monad-surfaces test suite.

Provides:
    - The published matrices B1, B2 and the fixed blocks A1 over F_5 / F_3
    - Deterministic random generators
    - Certificates: the printed matrices with their adjunction ledger, and
      the first surface a seeded construction-I search certifies
    - Accepted construction-II monads per family

The searched surface and the family monads are session-scoped and only
requested from tests marked slow.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from monad_surfaces.adjunction import FAMILIES
from monad_surfaces.domain.enums import TrialStage
from monad_surfaces.fixtures import A1_FIXTURES, load_matrix
from monad_surfaces.schemas.certificate import SurfaceCertificate
from monad_surfaces.schemas.matrices import EMatrixModel
from monad_surfaces.search import construct1_trial, construct2_pipeline
from monad_surfaces.services.certification import adjunction_block, build_certificate

if TYPE_CHECKING:
    from collections.abc import Callable

    from monad_surfaces.algebra.emod import EMatrix
    from monad_surfaces.search import TrialOutcome

SEARCH_SEED = 2024
SEARCH_TRIALS = 6250
FAMILY_ATTEMPTS = 5

# ---------------------------------------------------------------------------
# Matrix Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def b1() -> EMatrix:
    """The linear block B1: E(1)^2 -> E^3 over F_5."""
    return load_matrix("b1")


@pytest.fixture
def b1_cone() -> EMatrix:
    """A B1 whose linear forms span a cone; every B built on it is rejected."""
    return load_matrix("b1_cone")


@pytest.fixture
def b2_published() -> EMatrix:
    """The quadratic block B2: E(2)^2 -> E^3 over F_5 as printed; its B fails the filter."""
    return load_matrix("b2_published")


@pytest.fixture
def a1_family_i() -> EMatrix:
    """Fixed linear block A1 of the first construction-II family."""
    return load_matrix("a1_i")


@pytest.fixture
def a1_f3() -> EMatrix:
    """Fixed linear block A1 over F_3."""
    return load_matrix("a1_f3")


# ---------------------------------------------------------------------------
# Randomness Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def rng() -> np.random.Generator:
    """A seeded generator so random-draw tests are reproducible."""
    return np.random.default_rng(20240517)


# ---------------------------------------------------------------------------
# Certificate Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def published_certificate(b1: EMatrix, b2_published: EMatrix) -> SurfaceCertificate:
    """The printed matrices with the adjunction ledger of family (i); no monad blocks."""
    return SurfaceCertificate(
        p=5,
        B1=EMatrixModel.from_ematrix(b1),
        B2=EMatrixModel.from_ematrix(b2_published),
        adjunction=adjunction_block(FAMILIES["i"], six_secants=1),
    )


@pytest.fixture(scope="session")
def found_outcome() -> TrialOutcome:
    """The first certified trial of the seeded construction-I search over F_5."""
    b1 = load_matrix("b1")
    for trial_index in range(SEARCH_TRIALS):
        outcome = construct1_trial(trial_index, SEARCH_SEED, b1)
        if outcome.record.stage is TrialStage.CERTIFIED:
            return outcome
    pytest.fail(f"no certified surface in {SEARCH_TRIALS} trials with seed {SEARCH_SEED}")


@pytest.fixture(scope="session")
def found_certificate(found_outcome: TrialOutcome) -> SurfaceCertificate:
    return build_certificate(found_outcome, load_matrix("b1"))


# ---------------------------------------------------------------------------
# Construction-II Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def family_monad() -> Callable[[str], TrialOutcome]:
    """Outcome with an accepted monad for a named family, built once per family."""
    cache: dict[str, TrialOutcome] = {}
    b1 = load_matrix("b1")

    def build(family: str) -> TrialOutcome:
        if family not in cache:
            A1 = load_matrix(A1_FIXTURES[family])
            for trial_index in range(FAMILY_ATTEMPTS):
                outcome = construct2_pipeline(
                    A1, b1, trial_index=trial_index, master_seed=SEARCH_SEED,
                    until=TrialStage.MONAD_BUILT,
                )
                if outcome.record.stage is TrialStage.MONAD_BUILT:
                    cache[family] = outcome
                    break
            else:
                pytest.fail(f"family {family}: no accepted monad in {FAMILY_ATTEMPTS} samples")
        return cache[family]

    return build

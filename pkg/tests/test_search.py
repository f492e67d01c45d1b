"""Tests for the construction drivers, the linear system and the deformation count."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from monad_surfaces.algebra.emod import EMatrix, compose, flatten_array
from monad_surfaces.domain.enums import BettiClass, TrialStage
from monad_surfaces.domain.exceptions import DegenerateSampleError
from monad_surfaces.fixtures import A1_FIXTURES, load_matrix
from monad_surfaces.monad import assemble_B, betti_of_B, classify_betti
from monad_surfaces.search import (
    B1_COMBINATIONS,
    GROUP_DIM,
    N_invariant,
    b1_combinations,
    build_linear_system,
    cokernel_projection,
    construct1_trial,
    construct2_pipeline,
    ematrix_from_vector,
    endomorphism_basis,
    kernel_g_dimension,
    left_composition_matrix,
    quick_filter,
    quick_filter_rank,
    quotient_kernel_dimension,
    random_A1_with_N,
    random_B2,
    right_composition_matrix,
    sample_B2_from_solutions,
    shared_column_A1,
    tangent_dimension,
    trial_rngs,
    trial_seed,
    unknown_vector,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from monad_surfaces.search import TrialOutcome

P = 5


class TestSeeds:
    def test_trial_seed_is_deterministic(self) -> None:
        assert trial_seed(7, 3) == trial_seed(7, 3)
        assert trial_seed(7, 3) != trial_seed(7, 4)
        assert trial_seed(7, 3) != trial_seed(8, 3)

    def test_streams_are_reproducible(self) -> None:
        first = [g.integers(0, 1000, size=4).tolist() for g in trial_rngs(11)]
        second = [g.integers(0, 1000, size=4).tolist() for g in trial_rngs(11)]
        assert first == second
        assert first[0] != first[1]


class TestCompositionMatrices:
    def test_left_composition(self, b1: EMatrix, rng: np.random.Generator) -> None:
        X = EMatrix.random(P, [3, 3, 3, 3], list(b1.source), rng)
        M = left_composition_matrix(b1, X.source)
        assert np.array_equal((M @ unknown_vector(X)) % P, unknown_vector(compose(b1, X)))

    def test_right_composition(self, a1_family_i: EMatrix, rng: np.random.Generator) -> None:
        Y = EMatrix.random(P, list(a1_family_i.target), [0, 0, 0], rng)
        M = right_composition_matrix(a1_family_i, Y.target)
        assert np.array_equal(
            (M @ unknown_vector(Y)) % P, unknown_vector(compose(Y, a1_family_i))
        )

    def test_vector_coordinates(self, b2_published: EMatrix) -> None:
        vec = unknown_vector(b2_published)
        assert vec.shape == (60,)
        assert ematrix_from_vector(P, b2_published.source, b2_published.target, vec) == b2_published


class TestQuickFilter:
    def test_printed_B_fails(self, b1: EMatrix, b2_published: EMatrix) -> None:
        B = assemble_B(b2_published, b1)
        assert quick_filter_rank(B) == 30
        assert not quick_filter(B)
        with pytest.raises(DegenerateSampleError, match="dimension 0"):
            kernel_g_dimension(B)

    def test_random_quotient_kernel(self, b1: EMatrix, rng: np.random.Generator) -> None:
        assert quotient_kernel_dimension(b1, rng) == 10

    def test_cokernel_rows_annihilate_the_image(
        self, b1: EMatrix, rng: np.random.Generator
    ) -> None:
        B = assemble_B(random_B2(b1, rng, "raw"), b1)
        f = cokernel_projection(B)
        assert f.shape == (30 - quick_filter_rank(B), 30)
        assert not ((f @ flatten_array(B, -3)) % P).any()

    @pytest.mark.parametrize("scheme", ["grassmannian", "raw"])
    def test_random_B2_shape(self, b1: EMatrix, rng: np.random.Generator, scheme: str) -> None:
        B2 = random_B2(b1, rng, scheme)
        assert (B2.source, B2.target) == ((2, 2), (0, 0, 0))
        assert all(e.degree in (None, -2) for row in B2.entries for e in row)


class TestLinearSystem:
    def test_shape_and_rank_family_i(self, a1_family_i: EMatrix, b1: EMatrix) -> None:
        system = build_linear_system(a1_family_i, b1)
        assert (system.rows, system.cols) == (120, 140)
        assert system.rank == 114
        assert system.solutions.shape[0] == 140 - 114

    def test_rank_f3_family(self, a1_f3: EMatrix) -> None:
        assert N_invariant(a1_f3, load_matrix("b1", p=3)) == 113

    def test_b1_combinations(self, b1: EMatrix) -> None:
        basis, _ = b1_combinations(b1)
        assert basis.shape == (20, 60)

    def test_solution_sample_family_i(
        self, a1_family_i: EMatrix, b1: EMatrix, rng: np.random.Generator
    ) -> None:
        sample = sample_B2_from_solutions(a1_family_i, b1, rng)
        assert sample.N == 114
        assert sample.projection_dim > B1_COMBINATIONS
        assert sample.effective_parameters == 140 - 114 - 1 - 20
        assert (sample.B2.source, sample.B2.target) == ((2, 2), (0, 0, 0))

    def test_shared_columns(self, b1: EMatrix, rng: np.random.Generator) -> None:
        A1 = shared_column_A1(b1, 2, rng)
        assert (A1.source, A1.target) == ((3, 3, 3, 3), (2, 2))
        assert all(not e.is_zero() for row in A1.entries for e in row)


class TestTrials:
    def test_printed_B2_is_rejected_by_the_filter(
        self, b1: EMatrix, b2_published: EMatrix
    ) -> None:
        outcome = construct1_trial(0, 0, b1, B2=b2_published)
        record = outcome.record
        assert record.stage is TrialStage.REJECTED
        assert record.failed_stage is TrialStage.SAMPLED
        assert record.reason == "quick filter rank 30"
        assert record.quick_filter_rank == 30
        assert outcome.monad is None
        assert record.scheme == "fixed"
        assert record.B2 == b2_published.to_strings()
        assert "quick_filter" in record.timings

    def test_trials_replay(self, b1: EMatrix) -> None:
        first = construct1_trial(4, 9, b1, until=TrialStage.FILTERED).record
        second = construct1_trial(4, 9, b1, until=TrialStage.FILTERED).record
        assert first.canonical_json() == second.canonical_json()
        assert first.seed == trial_seed(9, 4)

    def test_seed_override(self, b1: EMatrix) -> None:
        record = construct1_trial(4, 9, b1, seed=123, until=TrialStage.FILTERED).record
        assert record.seed == 123


class TestEndomorphisms:
    def test_group_dimension(self) -> None:
        dims = [len(endomorphism_basis(P, t)) for t in ((3, 3, 3, 3), (2, 2, 1, 1), (0, 0, 0))]
        # GL4, the automorphisms of 2E(2) + 2E(1), GL3
        assert dims == [16, 4 + 4 + 20, 9]
        assert sum(dims) == GROUP_DIM



class TestLinearSystemFamilies:
    def test_families_cover_N_114_to_117(self, b1: EMatrix) -> None:
        values = {N_invariant(load_matrix(A1_FIXTURES[f]), b1) for f in ("i", "ii", "iii", "iv")}
        assert values == {114, 115, 116, 117}

    def test_shared_columns_raise_N(self, b1: EMatrix, rng: np.random.Generator) -> None:
        A1 = random_A1_with_N(b1, 119, rng)
        assert N_invariant(A1, b1) == 119


@pytest.mark.slow
class TestNegativeControls:
    """Samples with N = 119 and N = 118 have the wrong syzygies and no surface."""

    @pytest.mark.parametrize(
        ("N", "step2", "linear_third"),
        [(119, {3: 6, 4: 5}, 10), (118, {3: 5, 4: 3}, 3)],
    )
    def test_betti_tables(
        self, b1: EMatrix, rng: np.random.Generator, N: int, step2: dict[int, int],
        linear_third: int,
    ) -> None:
        A1 = random_A1_with_N(b1, N, rng)
        sample = sample_B2_from_solutions(A1, b1, rng)
        assert sample.N == N
        _, table = betti_of_B(assemble_B(sample.B2, b1))
        assert table.step(1) == {1: 2, 2: 2}
        assert table.step(2) == step2
        assert table.count(3, 4) == linear_third
        assert classify_betti(table) is BettiClass.OTHER

    @pytest.mark.parametrize("N", [119, 118])
    def test_rejected_before_the_ideal(
        self, b1: EMatrix, rng: np.random.Generator, N: int
    ) -> None:
        A1 = random_A1_with_N(b1, N, rng)
        record = construct2_pipeline(A1, b1, master_seed=N).record
        assert record.stage is TrialStage.REJECTED
        assert record.N == N
        assert record.failed_stage in (
            TrialStage.SAMPLED, TrialStage.FILTERED, TrialStage.BETTI_OK, TrialStage.MONAD_BUILT,
        )


@pytest.mark.slow
class TestSearch:
    def test_found_B_has_twelve_dimensional_kernel(self, found_outcome: TrialOutcome) -> None:
        assert found_outcome.B is not None
        assert kernel_g_dimension(found_outcome.B) == 12

    def test_found_trial_replays(self, found_outcome: TrialOutcome, b1: EMatrix) -> None:
        record = found_outcome.record
        again = construct1_trial(record.trial_index, 0, b1, seed=record.seed).record
        assert again.canonical_json() == record.canonical_json()
        assert record.betti_class is BettiClass.HIT


@pytest.mark.slow
class TestDeformations:
    def test_tangent_space_of_found_monad(self, found_outcome: TrialOutcome) -> None:
        m = found_outcome.monad
        assert m is not None
        report = tangent_dimension(m.A, m.B)
        assert report.kernel_dim == 90
        assert report.group_dim == GROUP_DIM
        assert report.lie_in_kernel
        assert (report.tangent_dim, report.moduli_dim) == (38, 20)
        assert report.family_dim is None

    @pytest.mark.parametrize("family", ["i", "ii", "iii", "iv"])
    def test_family_monads(
        self, family_monad: Callable[[str], TrialOutcome], family: str
    ) -> None:
        outcome = family_monad(family)
        m, N = outcome.monad, outcome.record.N
        assert m is not None and N is not None
        report = tangent_dimension(m.A, m.B, N)
        assert report.tangent_dim == 38
        assert report.family_dim == N - 99
        assert report.codimension == 120 - N

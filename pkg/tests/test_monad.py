"""Tests for monads, their Betti conditions and the surfaces they define.

The surface found by the seeded construction-I search is built once per
session; everything that touches its syzygies or its ideal is marked slow.
"""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

import numpy as np
import pytest

from monad_surfaces import monad as monad_module
from monad_surfaces.algebra.emod import BettiTable, EMatrix, compose
from monad_surfaces.algebra.polyring import hilbert_polynomial
from monad_surfaces.domain.enums import BettiClass, Verdict
from monad_surfaces.domain.exceptions import (
    HomologyError,
    IncompleteWindowError,
    NotAComplexError,
    ShapeMismatchError,
    WrongBettiShapeError,
)
from monad_surfaces.fixtures import load_matrix
from monad_surfaces.monad import (
    Monad,
    assemble_B,
    betti_of_B,
    check_AB,
    classify_betti,
    homology_sections,
    ideal_chi,
    natural_table,
    residual_line,
    surface_hilbert_value,
    tate_left_window,
    tate_right_step,
)

if TYPE_CHECKING:
    from monad_surfaces.search import TrialOutcome


@pytest.fixture
def found_monad(found_outcome: TrialOutcome) -> Monad:
    assert found_outcome.monad is not None
    return found_outcome.monad


def _make_table(step2: list[int], step3: list[int] | None = None) -> BettiTable:
    steps = [[0, 0, 0], [1, 1, 2, 2], step2]
    if step3 is not None:
        steps.append(step3)
    return BettiTable.from_steps(steps)


class TestNaturalCohomology:
    def test_table(self) -> None:
        table = natural_table()
        assert table.to_dict() == {
            "-1": {"3": 13},
            "0": {},
            "1": {"2": 4},
            "2": {"2": 2},
            "3": {"1": 2},
            "4": {"1": 3},
            "5": {"0": 5},
        }
        assert table.h(0, 5) == 5

    def test_surface_hilbert_values(self) -> None:
        assert surface_hilbert_value(0) == 1
        assert surface_hilbert_value(1) == 1
        assert ideal_chi(5) == 5
        assert ideal_chi(0) == 0

    def test_render_has_a_row_per_cohomology_index(self) -> None:
        lines = natural_table().render().splitlines()
        assert len(lines) == 6
        assert lines[0].startswith("4:")


class TestBettiClassification:
    def test_hit(self) -> None:
        assert classify_betti(_make_table([3] * 4 + [4] * 5, [5] * 13)) is BettiClass.HIT

    def test_linear_third_syzygy_is_not_a_hit(self) -> None:
        assert classify_betti(_make_table([3] * 4 + [4] * 5, [4])) is BettiClass.OTHER

    def test_ten_linear_second_syzygies(self) -> None:
        assert classify_betti(_make_table([3] * 4 + [4] * 10)) is BettiClass.A1_10

    def test_wrong_first_step(self) -> None:
        table = BettiTable.from_steps([[0, 0, 0], [1, 1, 1, 2], [3] * 4])
        assert classify_betti(table) is BettiClass.OTHER


class TestMonadShape:
    def test_mismatched_terms(self, b1: EMatrix) -> None:
        with pytest.raises(ShapeMismatchError):
            Monad(b1, b1)

    def test_not_a_complex(self, b1: EMatrix, rng: np.random.Generator) -> None:
        A = EMatrix.random(5, [2, 2], [1, 1], rng)
        m = Monad(A, b1)
        assert not m.is_complex()
        with pytest.raises(NotAComplexError):
            m.check_complex()

    def test_zero_offset_unsupported(self, b1: EMatrix, rng: np.random.Generator) -> None:
        m = Monad(EMatrix.random(5, [2, 2], [1, 1], rng), b1)
        with pytest.raises(HomologyError):
            homology_sections(m, 0)


    def test_wrong_first_tate_term(
        self, b1: EMatrix, rng: np.random.Generator, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        m = Monad(EMatrix.random(5, [2, 2], [1, 1], rng), b1)
        syzygies = EMatrix.random(5, [4, 4, 4], [2, 2], rng)
        monkeypatch.setattr(monad_module, "syzygy_matrix", lambda _: syzygies)
        with pytest.raises(WrongBettiShapeError) as excinfo:
            tate_left_window(m, 1)
        assert excinfo.value.observed == {"4": 3}

    def test_empty_tate_step(
        self, b1: EMatrix, rng: np.random.Generator, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        m = Monad(EMatrix.random(5, [2, 2], [1, 1], rng), b1)
        monkeypatch.setattr(monad_module, "syzygy_matrix", lambda _: EMatrix.zero(5, [], [2, 2]))
        with pytest.raises(IncompleteWindowError):
            tate_left_window(m, 1)

    def test_no_steps_is_the_monad(self, b1: EMatrix, rng: np.random.Generator) -> None:
        m = Monad(EMatrix.random(5, [2, 2], [1, 1], rng), b1)
        assert tate_left_window(m, 0) == [{2: 2}, {1: 2}, {0: 3}]


@pytest.mark.slow
class TestPrintedMatrices:
    """B2 as printed: the filter rank is 30 and there is no monad."""

    def test_syzygies_are_not_a_hit(self, b1: EMatrix, b2_published: EMatrix) -> None:
        B = assemble_B(b2_published, b1)
        _, table = betti_of_B(B)
        assert table.step(1) == {1: 2, 2: 2}
        assert classify_betti(table) is BettiClass.OTHER


@pytest.mark.slow
class TestFoundMonad:
    """The first construction-I surface of the seeded search over F_5."""

    def test_betti_table_of_B(self, found_monad: Monad) -> None:
        _, table = betti_of_B(found_monad.B)
        assert table.step(0) == {0: 3}
        assert table.step(1) == {1: 2, 2: 2}
        assert table.step(2) == {3: 4, 4: 5}
        assert table.count(3, 4) == 0
        assert classify_betti(table) is BettiClass.HIT

    def test_A_is_a_complex_with_B(self, found_monad: Monad) -> None:
        assert found_monad.A.source == (3, 3, 3, 3)
        assert found_monad.A.target == (2, 2, 1, 1)
        assert compose(found_monad.B, found_monad.A).is_zero()
        report = check_AB(found_monad.A)
        assert report.passed
        assert (report.linear, report.quadratic) == (0, 13)

    def test_blocks(self, found_monad: Monad) -> None:
        assert found_monad.B1 == load_matrix("b1")
        assert (found_monad.B2.source, found_monad.B2.target) == ((2, 2), (0, 0, 0))
        assert found_monad.A1.target == (2, 2)

    def test_tate_left_window(self, found_monad: Monad) -> None:
        assert tate_left_window(found_monad, 1) == [{5: 13}, {3: 4}, {2: 2, 1: 2}, {0: 3}]

    def test_tate_right_step(self, found_monad: Monad) -> None:
        step = tate_right_step(found_monad.A)
        assert step.source == found_monad.A.target
        assert Counter(step.target) == Counter({0: 3, -1: 5})
        assert compose(step, found_monad.A).is_zero()

    @pytest.mark.parametrize(
        ("k", "expected"),
        [
            (1, {"source": 20, "middle": 40, "target": 15, "kernel": 25, "image": 20,
                 "homology": 5}),
            (2, {"source": 96, "middle": 170, "target": 45, "kernel": 125, "image": 96,
                 "homology": 29}),
        ],
    )
    def test_homology_sections(self, found_monad: Monad, k: int, expected: dict) -> None:
        sections = homology_sections(found_monad, k)
        assert sections.dimensions() == expected
        assert sections.degree == 4 + k
        assert sections.alternating_sum == expected["homology"]

    def test_septic_sections(self, found_monad: Monad) -> None:
        sections = homology_sections(found_monad, 3)
        assert sections.degree == 7
        assert sections.dimensions()["homology"] == 77
        assert sections.dimensions()["homology"] == ideal_chi(7)

    def test_surface_and_residual_line(self, found_outcome: TrialOutcome) -> None:
        surface = found_outcome.surface
        assert surface is not None
        data = hilbert_polynomial(surface.ideal)
        assert data.polynomial_str() == "6*t**2 - 6*t + 1"
        assert (data.dimension, data.degree, data.sectional_genus) == (2, 12, 13)
        line = residual_line(surface.quintics(), surface.ideal, rng=np.random.default_rng(0))
        assert line.is_line
        assert len(line.linear_forms) == 3

    def test_smooth(self, found_outcome: TrialOutcome) -> None:
        assert found_outcome.smoothness is not None
        assert found_outcome.smoothness.verdict is Verdict.SMOOTH

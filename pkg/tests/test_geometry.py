"""Tests for rank-one loci, Veronese images and the Z_A / Z_B intersection."""

from __future__ import annotations

import numpy as np
import pytest

from monad_surfaces.algebra.emod import EMatrix
from monad_surfaces.algebra.polyring import PolyIdeal, dimension_degree
from monad_surfaces.domain.exceptions import InfiniteIntersectionError, ShapeMismatchError
from monad_surfaces.fixtures import A1_FIXTURES, load_matrix
from monad_surfaces.geometry import (
    LemmaReport,
    LinearMatrixOfForms,
    VeroneseImage,
    disjoint,
    geometric_count,
    lemma_bounds_check,
    rank1_locus,
    zazb_intersection,
)
from monad_surfaces.search import N_invariant, random_A1


class TestLinearMatrices:
    def test_forms_of_b1(self, b1: EMatrix) -> None:
        L = LinearMatrixOfForms.from_ematrix(b1)
        assert L.shape == (3, 2)
        assert L.row_pairs_have_rank_two()
        assert L.coeffs[2, 1].tolist() == [0, 0, 0, 0, 1]

    def test_nonlinear_entry_rejected(self, b2_published: EMatrix) -> None:
        with pytest.raises(ShapeMismatchError):
            LinearMatrixOfForms.from_ematrix(b2_published)

    def test_cubic_scroll(self, b1: EMatrix) -> None:
        assert dimension_degree(rank1_locus(b1)) == (2, 3)

    def test_rational_normal_quartic(self, a1_family_i: EMatrix) -> None:
        assert dimension_degree(rank1_locus(a1_family_i)) == (1, 4)

    def test_disjoint(self) -> None:
        line = PolyIdeal.from_strings(5, ["x0", "x1", "x2"])
        assert disjoint(line, PolyIdeal.from_strings(5, ["x3", "x4"]))
        assert not disjoint(line, PolyIdeal.from_strings(5, ["x3"]))


class TestVeroneseImages:
    def test_rows_of_b1_give_a_veronese_surface(self, b1: EMatrix) -> None:
        Z = VeroneseImage.of_rows(b1)
        assert Z.dimension == 2
        assert Z.is_embedding()
        assert dimension_degree(Z.ideal()) == (2, 4)

    def test_columns_of_a1_give_a_veronese_threefold(self, a1_family_i: EMatrix) -> None:
        Z = VeroneseImage.of_columns(a1_family_i)
        assert Z.dimension == 3
        assert dimension_degree(Z.ideal()) == (3, 8)


class TestCounts:
    def test_geometric_count_from_rational_counts(self) -> None:
        # one rational point and two conjugate triples over F_{p^3}
        assert geometric_count({1: 1, 2: 1, 3: 7}) == 7
        assert geometric_count({1: 2, 2: 4}) == 4

    def test_lemma_report(self) -> None:
        report = LemmaReport(N=113, r=7, curve_smooth=True, scroll_smooth=True, disjoint=False)
        assert report.rank_bound_ok
        assert not report.point_bound_applies
        assert report.passed
        violating = LemmaReport(N=114, r=7, curve_smooth=True, scroll_smooth=True, disjoint=True)
        assert not violating.rank_bound_ok
        assert not violating.point_bound_ok
        assert not violating.passed
        assert violating.to_dict()["point_bound_applies"] is True


@pytest.mark.slow
class TestIntersection:
    def test_f3_family_meets_in_seven_points(self, a1_f3: EMatrix) -> None:
        report = zazb_intersection(a1_f3, load_matrix("b1", p=3))
        assert report.r == 7
        assert report.agree

    def test_bounds_for_family_i(self, a1_family_i: EMatrix, b1: EMatrix) -> None:
        report = lemma_bounds_check(a1_family_i, b1, 114)
        assert report.passed
        assert report.r + report.N <= 120

    @pytest.mark.parametrize("family", ["i", "ii", "iii", "iv"])
    def test_point_count_complements_N(self, b1: EMatrix, family: str) -> None:
        A1 = load_matrix(A1_FIXTURES[family])
        N = N_invariant(A1, b1)
        assert 114 <= N <= 117
        assert zazb_intersection(A1, b1, method="groebner").r == 120 - N


@pytest.mark.slow
class TestRandomBlocks:
    SAMPLES = 200

    @pytest.mark.parametrize("p", [3, 5])
    def test_bounds_hold_for_random_A1(self, p: int) -> None:
        B1 = load_matrix("b1", p=p)
        rng = np.random.default_rng(1000 + p)
        checked = 0
        while checked < self.SAMPLES:
            A1 = random_A1(p, rng)
            try:
                r = zazb_intersection(A1, B1, method="groebner").r
            except (InfiniteIntersectionError, ShapeMismatchError):
                continue
            report = lemma_bounds_check(A1, B1, N_invariant(A1, B1), r=r, rng=rng)
            assert report.passed, report.to_dict()
            checked += 1

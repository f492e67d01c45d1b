"""Tests for Bott's formula and the section spaces of twisted cotangent bundles."""

from __future__ import annotations

import numpy as np
import pytest

from monad_surfaces.algebra.bott import (
    bott_dimension,
    bott_h0,
    induced_section_map,
    koszul_matrix,
    omega_sections,
)
from monad_surfaces.algebra.emod import EMatrix
from monad_surfaces.algebra.fields import get_field
from monad_surfaces.domain.exceptions import UnsupportedSectionError

P = 5


class TestBottFormula:
    @pytest.mark.parametrize(
        ("i", "t", "expected"),
        [(0, 2, 15), (0, -1, 0), (1, 2, 10), (1, 3, 40), (2, 3, 10), (3, 4, 5), (4, 5, 1), (2, 2, 0)],
    )
    def test_h0(self, i: int, t: int, expected: int) -> None:
        assert bott_h0(i, t) == expected

    def test_middle_cohomology(self) -> None:
        assert bott_dimension(2, 2, 0) == 1
        assert bott_dimension(2, 1, 0) == 0
        assert bott_dimension(1, 1, 1) == 0

    def test_top_cohomology_by_duality(self) -> None:
        # h^4(O(-5)) = h^0(O) = 1
        assert bott_dimension(4, 0, -5) == 1
        assert bott_dimension(4, 0, -4) == 0


class TestSectionSpaces:
    @pytest.mark.parametrize("i", range(5))
    @pytest.mark.parametrize("k", range(3))
    def test_dimension_matches_bott(self, i: int, k: int) -> None:
        assert omega_sections(i, k, P).dim == bott_h0(i, i + k)

    def test_sections_are_koszul_cycles(self) -> None:
        space = omega_sections(2, 1, P)
        kappa = koszul_matrix(2, 1, P)
        assert not np.any(get_field(P).matmul(kappa, space.basis.T))

    def test_koszul_is_a_complex(self) -> None:
        F = get_field(P)
        assert not np.any(F.matmul(koszul_matrix(1, 2, P), koszul_matrix(2, 1, P)))

    def test_unsupported(self) -> None:
        with pytest.raises(UnsupportedSectionError):
            omega_sections(5, 1, P)
        with pytest.raises(UnsupportedSectionError):
            omega_sections(1, -1, P)


class TestInducedMaps:
    def test_identity_induces_identity(self) -> None:
        M = induced_section_map(EMatrix.identity(P, [1, 2]), 1)
        # h^0(Omega^1(2)) + h^0(Omega^2(3)) = 10 + 10
        assert (M.rows, M.cols) == (20, 20)
        assert np.array_equal(M.entries, np.eye(20, dtype=np.int64))

    def test_shape_of_b1_map(self, b1: EMatrix) -> None:
        M = induced_section_map(b1, 1)
        assert (M.rows, M.cols) == (3 * 5, 2 * 10)

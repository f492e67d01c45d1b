"""Tests for the exterior algebra E on five generators."""

from __future__ import annotations

import numpy as np
import pytest

from monad_surfaces.algebra.extalg import (
    DualElem,
    ExtElem,
    contract,
    contraction_matrix,
    dim_E,
    graded_basis,
    multiplication_matrix,
    random_elem,
    wedge,
)
from monad_surfaces.domain.exceptions import DegreeOutOfRangeError, ParseError

P = 5


def _e(text: str) -> ExtElem:
    return ExtElem.parse(text, P)


class TestGrading:
    def test_dimensions(self) -> None:
        assert [dim_E(d) for d in range(0, -6, -1)] == [1, 5, 10, 10, 5, 1]
        assert dim_E(1) == 0
        assert dim_E(-6) == 0

    def test_basis_out_of_range(self) -> None:
        with pytest.raises(DegreeOutOfRangeError):
            graded_basis(-6)

    def test_generators_have_degree_minus_one(self) -> None:
        assert ExtElem.generator(P, 3).degree == -1
        assert ExtElem.zero(P).degree is None

    def test_mixed_degree_rejected(self) -> None:
        with pytest.raises(DegreeOutOfRangeError):
            ExtElem(P, {0b1: 1, 0b11: 1})


class TestWedge:
    """Anticommutativity, nilpotence and associativity of the product."""

    def test_anticommutative_generators(self) -> None:
        e0, e1 = ExtElem.generator(P, 0), ExtElem.generator(P, 1)
        assert wedge(e0, e1) == -wedge(e1, e0)
        assert wedge(e0, e0).is_zero()

    def test_square_of_odd_element_vanishes(self, rng: np.random.Generator) -> None:
        for d in (-1, -3):
            x = random_elem(P, d, rng)
            assert wedge(x, x).is_zero()

    def test_graded_commutativity(self, rng: np.random.Generator) -> None:
        a, b = random_elem(P, -1, rng), random_elem(P, -2, rng)
        assert wedge(a, b) == wedge(b, a)

    def test_associative(self, rng: np.random.Generator) -> None:
        a, b, c = (random_elem(P, -1, rng) for _ in range(3))
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    def test_top_degree(self) -> None:
        top = _e("e_{01234}")
        assert top.degree == -5
        assert wedge(top, ExtElem.generator(P, 2)).is_zero()

    @pytest.mark.slow
    def test_axioms_on_random_triples(self) -> None:
        rng = np.random.default_rng(7)
        for _ in range(10_000):
            da, db, dc = (int(d) for d in rng.integers(-3, 0, size=3))
            a, b, c = random_elem(P, da, rng), random_elem(P, db, rng), random_elem(P, dc, rng)
            assert wedge(a, b) == wedge(b, a).scale((-1) ** (da * db))
            assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
            if da % 2:
                assert wedge(a, a).is_zero()


class TestParseFormat:
    def test_reordered_indices_carry_sign(self) -> None:
        assert _e("e_{10}") == _e("-e_{01}")
        assert _e("e_{210}") == _e("-e_{012}")

    def test_repeated_index_is_zero(self) -> None:
        assert _e("e_{11}").is_zero()

    def test_accepted_spellings(self) -> None:
        assert _e("e_1") == _e("e1") == _e("e_{1}") == ExtElem.generator(P, 1)

    def test_symmetric_coefficients(self) -> None:
        assert str(_e("4e_{3}")) == "-e_{3}"
        assert str(_e("2e_{01}-e_{23}")) == "2e_{01}-e_{23}"
        assert str(ExtElem.zero(P)) == "0"

    def test_constant(self) -> None:
        assert _e("3").degree == 0

    @pytest.mark.parametrize("text", ["e_{05}", "e_{1}+e_{12}", "f_{1}", "e_{1}*e_{2}"])
    def test_malformed(self, text: str) -> None:
        with pytest.raises(ParseError):
            _e(text)

    def test_dual_symbol(self) -> None:
        assert str(DualElem.parse("x_{02}", P)) == "x_{02}"


class TestMatrices:
    def test_multiplication_matrix_matches_wedge(self, rng: np.random.Generator) -> None:
        omega = random_elem(P, -2, rng)
        x = random_elem(P, -1, rng)
        M = multiplication_matrix(omega, -1)
        assert M.shape == (10, 5)
        product = (M @ x.to_vector(-1)) % P
        assert np.array_equal(product, wedge(omega, x).to_vector(-3))

    def test_right_multiplication(self, rng: np.random.Generator) -> None:
        omega = random_elem(P, -1, rng)
        x = random_elem(P, -2, rng)
        M = multiplication_matrix(omega, -2, side="right")
        assert np.array_equal((M @ x.to_vector(-2)) % P, wedge(x, omega).to_vector(-3))

    def test_out_of_range_target_has_no_rows(self) -> None:
        M = multiplication_matrix(_e("e_{01}"), -4)
        assert M.shape == (0, 5)

    def test_contraction_lowers_degree(self) -> None:
        x = DualElem.parse("x_{01}", P)
        assert contract(ExtElem.generator(P, 0), x) == DualElem.parse("x_{1}", P)
        assert contract(ExtElem.generator(P, 1), x) == DualElem.parse("-x_{0}", P)
        assert contract(ExtElem.generator(P, 2), x).is_zero()

    def test_contraction_matrix(self, rng: np.random.Generator) -> None:
        omega = random_elem(P, -1, rng)
        tau = DualElem.from_vector(P, 2, rng.integers(0, P, size=10))
        C = contraction_matrix(omega, 2)
        assert C.shape == (5, 10)
        assert np.array_equal((C @ tau.to_vector(2)) % P, contract(omega, tau).to_vector(1))

    def test_reverse_is_involution(self, rng: np.random.Generator) -> None:
        x = random_elem(P, -2, rng)
        assert x.reverse() == -x
        assert x.reverse().reverse() == x

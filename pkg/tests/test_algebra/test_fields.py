"""Tests for prime and extension field arithmetic."""

from __future__ import annotations

import numpy as np
import pytest

from monad_surfaces.algebra.fields import ExtField, PrimeField, get_field, projective_points
from monad_surfaces.domain.exceptions import FieldError


class TestPrimeField:
    def test_order_and_degree(self) -> None:
        F = get_field(5)
        assert isinstance(F, PrimeField)
        assert (F.order, F.degree) == (5, 1)

    def test_inverse_table(self) -> None:
        F = get_field(7)
        units = np.arange(1, 7)
        assert np.all(F.mul(units, F.inv(units)) == 1)

    def test_inverse_of_zero_raises(self) -> None:
        with pytest.raises(ZeroDivisionError):
            get_field(5).inv(0)

    def test_not_a_prime(self) -> None:
        with pytest.raises(FieldError):
            PrimeField(9)

    def test_matmul_is_reduced(self) -> None:
        F = get_field(5)
        a = np.array([[4, 4], [3, 1]])
        assert np.array_equal(F.matmul(a, a), np.array([[3, 0], [0, 3]]))

    def test_fields_are_cached(self) -> None:
        assert get_field(5) is get_field(5)


class TestExtField:
    """F_{p^k} as integer codes with table arithmetic."""

    @pytest.mark.parametrize(("p", "k"), [(3, 2), (5, 2), (3, 3), (2, 3)])
    def test_multiplicative_group(self, p: int, k: int) -> None:
        F = get_field(p, k)
        assert isinstance(F, ExtField)
        units = np.arange(1, F.order)
        assert np.all(F.mul(units, F.inv(units)) == 1)
        assert np.all(F.power(units, F.order - 1) == 1)

    def test_prime_subfield_is_fixed_by_frobenius(self) -> None:
        F = get_field(5, 2)
        elements = F.elements()
        fixed = F.frobenius(elements) == elements
        assert np.array_equal(fixed, F.in_prime_field(elements))
        assert int(fixed.sum()) == 5

    def test_constants_add_like_prime_field(self) -> None:
        F = get_field(5, 2)
        a, b = np.arange(5), np.array([4, 3, 2, 1, 0])
        assert np.array_equal(F.add(a, b), (a + b) % 5)

    def test_distributive(self) -> None:
        F = get_field(3, 2)
        x = F.elements()
        a, b = 4, 7
        lhs = F.mul(x, F.add(a, b))
        rhs = F.add(F.mul(x, a), F.mul(x, b))
        assert np.array_equal(lhs, rhs)

    def test_degree_out_of_range(self) -> None:
        with pytest.raises(FieldError):
            ExtField(5, 4)

    def test_reducible_modulus_rejected(self) -> None:
        # x^2 - 1 has the root 1
        with pytest.raises(FieldError):
            ExtField(5, 2, modulus=(4, 0, 1))

    def test_codes_out_of_range(self) -> None:
        with pytest.raises(FieldError):
            get_field(3, 2).reduce(np.array([9]))


class TestProjectivePoints:
    @pytest.mark.parametrize(("q", "k", "n"), [(5, 1, 2), (3, 2, 2), (3, 1, 4)])
    def test_count(self, q: int, k: int, n: int) -> None:
        F = get_field(q, k)
        order = F.order
        points = projective_points(F, n)
        assert points.shape == ((order ** (n + 1) - 1) // (order - 1), n + 1)

    def test_normalized_and_ordered(self) -> None:
        points = projective_points(get_field(5), 2)
        leads = [int(np.flatnonzero(row)[0]) for row in points]
        assert all(row[lead] == 1 for row, lead in zip(points, leads, strict=True))
        assert leads == sorted(leads)
        assert points[0].tolist() == [1, 0, 0]
        assert points[-1].tolist() == [0, 0, 1]

    def test_points_are_distinct(self) -> None:
        points = projective_points(get_field(3), 3)
        assert len({tuple(row) for row in points}) == points.shape[0]

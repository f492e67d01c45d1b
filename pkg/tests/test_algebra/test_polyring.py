"""Tests for polynomial ideals: Hilbert data, quotients, saturation and smoothness."""

from __future__ import annotations

import numpy as np
import pytest
import sympy

from monad_surfaces.algebra.polyring import (
    HP_VARIABLE,
    PolyIdeal,
    dimension_degree,
    format_poly,
    groebner,
    hilbert_function,
    hilbert_polynomial,
    ideal_quotient,
    is_smooth,
    is_smooth_surface,
    jacobian_prefilter,
    minimal_generators,
    parse_poly,
    saturate,
)
from monad_surfaces.domain.enums import Verdict
from monad_surfaces.domain.exceptions import NonHomogeneousError, ParseError

P = 5

RATIONAL_NORMAL_QUARTIC = [
    "x0*x2-x1^2", "x0*x3-x1*x2", "x0*x4-x2^2",
    "x1*x3-x2^2", "x1*x4-x2*x3", "x2*x4-x3^2",
]
QUADRIC_PAIR = ["x0*x1-x2*x3", "x2*x4-x0^2"]


def _make_ideal(texts: list[str]) -> PolyIdeal:
    return PolyIdeal.from_strings(P, texts)


def _leading(I: PolyIdeal) -> set[tuple[int, ...]]:
    return set(groebner(I).leading_monomials)


class TestFormatParse:
    def test_descending_grevlex(self) -> None:
        f = parse_poly("-2*x3^3 + x0^2*x1", P)
        assert format_poly(f, P) == "x0^2*x1-2*x3^3"

    def test_zero(self) -> None:
        assert format_poly({}, P) == "0"

    def test_malformed(self) -> None:
        with pytest.raises(ParseError):
            parse_poly("x0 +* x1", P)

    def test_inhomogeneous_generator(self) -> None:
        with pytest.raises(NonHomogeneousError):
            _make_ideal(["x0^2+x1"])

    def test_ideal_strings_and_degrees(self) -> None:
        I = _make_ideal(QUADRIC_PAIR + ["x3^3"])
        assert I.to_strings()[0] == "x0*x1-x2*x3"
        assert I.generator_degrees() == {2: 2, 3: 1}


class TestHilbert:
    def test_rational_normal_quartic(self) -> None:
        data = hilbert_polynomial(_make_ideal(RATIONAL_NORMAL_QUARTIC))
        assert sympy.expand(data.polynomial - (4 * HP_VARIABLE + 1)) == 0
        assert (data.dimension, data.degree) == (1, 4)
        assert data.sectional_genus is None
        assert data.chi == 1

    def test_quartic_surface_of_two_quadrics(self) -> None:
        I = _make_ideal(QUADRIC_PAIR)
        data = hilbert_polynomial(I)
        assert data.to_dict() == {
            "polynomial": "2*t**2 + 2*t + 1",
            "dimension": 2,
            "degree": 4,
            "sectional_genus": 1,
            "chi": 1,
        }
        assert hilbert_function(I, 2) == 13
        assert data.values[2] == 13

    def test_empty_support(self) -> None:
        I = _make_ideal([f"x{i}" for i in range(5)])
        assert dimension_degree(I) == (-1, 0)


class TestQuotients:
    def test_quotient_by_variable(self) -> None:
        Q = ideal_quotient(_make_ideal(["x0*x1", "x0*x2"]), _make_ideal(["x0"]))
        assert set(Q.to_strings()) == {"x1", "x2"}

    def test_quotient_continues_past_low_bound(self) -> None:
        I = _make_ideal(["x0*x1", "x0*x2"])
        Q = ideal_quotient(I, _make_ideal(["x0"]), degree_bound=0)
        assert set(Q.to_strings()) == {"x1", "x2"}

    def test_saturate_by_linear_form(self) -> None:
        I = _make_ideal(["x0*x1", "x0*x2"])
        J = saturate(I, parse_poly("x0", P))
        assert _leading(J) == {(0, 1, 0, 0, 0), (0, 0, 1, 0, 0)}

    def test_saturate_irrelevant(self, rng: np.random.Generator) -> None:
        # the line x0 = x1 = x2 = 0 times the irrelevant ideal
        I = _make_ideal([f"x{i}*x{j}" for i in range(3) for j in range(5)])
        J = saturate(I, rng=rng)
        assert _leading(J) == {(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0)}

    def test_minimal_generators(self) -> None:
        I = _make_ideal(["x0", "x0*x1", "x1^2", "x0*x3+x1^2"])
        assert minimal_generators(I).generator_degrees() == {1: 1, 2: 1}


class TestSmoothness:
    def test_rational_normal_quartic_is_smooth(self) -> None:
        report = is_smooth(_make_ideal(RATIONAL_NORMAL_QUARTIC), 3)
        assert report.verdict is Verdict.SMOOTH
        assert report.prefilter is not None and report.prefilter.passed

    def test_cone_is_caught_by_prefilter(self) -> None:
        cone = _make_ideal(["x0*x1-x2^2", "x3"])
        prefilter = jacobian_prefilter(cone, 2, max_extension=1)
        assert not prefilter.passed
        assert prefilter.singular_point == (0, 0, 0, 0, 1)
        report = is_smooth(cone, 2)
        assert report.verdict is Verdict.NOT_SMOOTH
        assert report.method == "prefilter"

    def test_cone_without_prefilter(self) -> None:
        report = is_smooth(_make_ideal(["x0*x1-x2^2", "x3"]), 2, prefilter=False)
        assert report.verdict is Verdict.NOT_SMOOTH
        assert report.singular_dimension == 0

    def test_plane_is_smooth_surface(self) -> None:
        report = is_smooth_surface(_make_ideal(["x3", "x4"]), rng=np.random.default_rng(1))
        assert report.verdict is Verdict.SMOOTH
        assert report.to_dict()["singular_point"] is None

    def test_cone_is_singular_surface(self) -> None:
        report = is_smooth_surface(_make_ideal(["x0*x1-x2^2", "x3"]), prefilter=False)
        assert report.verdict is Verdict.NOT_SMOOTH
        assert report.method == "all_minors"

"""Tests for the domain exception hierarchy."""

from __future__ import annotations

import pytest

from monad_surfaces.domain.exceptions import (
    CertificateMismatchError,
    DegreeOutOfRangeError,
    EmptyWindowError,
    GroebnerBudgetExceededError,
    MonadSurfacesError,
    NegativeMultiplicityError,
    NotAComplexError,
    ParseError,
    WrongBettiShapeError,
)


class TestErrorCodes:
    @pytest.mark.parametrize(
        ("error", "code"),
        [
            (DegreeOutOfRangeError(-7), "DEGREE_OUT_OF_RANGE"),
            (ParseError("e_{9}", "index out of range"), "PARSE_ERROR"),
            (EmptyWindowError(0), "EMPTY_WINDOW"),
            (NotAComplexError(3), "NOT_A_COMPLEX"),
            (GroebnerBudgetExceededError(10, 6), "GROEBNER_BUDGET_EXCEEDED"),
            (NegativeMultiplicityError(0, -1), "NEGATIVE_MULTIPLICITY"),
            (CertificateMismatchError("betti differs"), "CERTIFICATE_MISMATCH"),
        ],
    )
    def test_codes(self, error: MonadSurfacesError, code: str) -> None:
        assert isinstance(error, MonadSurfacesError)
        assert error.code == code
        assert str(error) == error.message

    def test_base_default_code(self) -> None:
        assert MonadSurfacesError("boom").code == "MONAD_SURFACES_ERROR"


class TestPayloads:
    def test_messages(self) -> None:
        assert ParseError("x0 +* x1", "bad term").message == "Cannot parse 'x0 +* x1': bad term"
        assert NegativeMultiplicityError(2, -1).message == "Multiplicity of E3 becomes -1 under H + K"

    def test_attributes(self) -> None:
        budget = GroebnerBudgetExceededError(10, 6)
        assert (budget.pairs, budget.degree) == (10, 6)
        assert WrongBettiShapeError("shape", {"1": {"2": 5}}).observed == {"1": {"2": 5}}
        assert CertificateMismatchError("x").details == {}

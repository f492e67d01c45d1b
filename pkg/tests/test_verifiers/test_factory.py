"""Unit tests for the CheckFactory."""

from __future__ import annotations

import pytest

from monad_surfaces.domain.enums import CheckType
from monad_surfaces.verifiers import (
    AdjunctionCheck,
    BettiCheck,
    CertificateCheck,
    CheckFactory,
    ComplexCheck,
    HilbertCheck,
    SectionsCheck,
    TangentCheck,
    TateCheck,
)


class TestCheckFactory:
    @pytest.mark.parametrize(
        ("check_type", "cls"),
        [
            ("betti", BettiCheck),
            ("complex", ComplexCheck),
            ("sections", SectionsCheck),
            ("hilbert", HilbertCheck),
            ("tate", TateCheck),
            ("tangent", TangentCheck),
            ("adjunction", AdjunctionCheck),
        ],
    )
    def test_create(self, check_type: str, cls: type) -> None:
        check = CheckFactory.create(check_type)
        assert isinstance(check, cls)
        assert check.check_type == check_type

    def test_create_from_enum(self) -> None:
        assert isinstance(CheckFactory.create(CheckType.TATE), TateCheck)

    def test_checks_satisfy_protocol(self) -> None:
        for check_type in CheckType:
            assert isinstance(CheckFactory.create(check_type), CertificateCheck)

    def test_unknown_type_raises(self) -> None:
        with pytest.raises(ValueError, match="Unknown check type"):
            CheckFactory.create("chern_classes")

    def test_get_supported_types(self) -> None:
        assert CheckFactory.get_supported_types() == [c.value for c in CheckType]

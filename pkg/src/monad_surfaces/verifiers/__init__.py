"""Certificate checks and their factory.

One check per CheckType:
    - BettiCheck:       syzygy table of B, its class, quick-filter rank
    - ComplexCheck:     B o A = 0, syzygies of A
    - SectionsCheck:    section-complex dimensions in degrees 5, 6, 7
    - HilbertCheck:     Hilbert polynomial of the saturated ideal, residual line
    - TateCheck:        natural cohomology table, Tate terms left and right of A
    - TangentCheck:     tangent-space and moduli dimensions
    - AdjunctionCheck:  hyperplane-class ledger

The CheckFactory creates the check for a CheckType value.
"""

from monad_surfaces.domain.check_protocol import CertificateCheck, CheckRequest, CheckResult
from monad_surfaces.domain.enums import CheckType
from monad_surfaces.verifiers.invariant_checks import AdjunctionCheck, TangentCheck
from monad_surfaces.verifiers.monad_checks import BettiCheck, ComplexCheck, TateCheck
from monad_surfaces.verifiers.section_checks import HilbertCheck, SectionsCheck


class CheckFactory:
    """Factory that creates the check for a CheckType.

    Usage:
        check = CheckFactory.create("hilbert")
        result = check.run(request)
    """

    _registry: dict[str, type] = {
        CheckType.BETTI.value: BettiCheck,
        CheckType.COMPLEX.value: ComplexCheck,
        CheckType.SECTIONS.value: SectionsCheck,
        CheckType.HILBERT.value: HilbertCheck,
        CheckType.TATE.value: TateCheck,
        CheckType.TANGENT.value: TangentCheck,
        CheckType.ADJUNCTION.value: AdjunctionCheck,
    }

    @classmethod
    def create(cls, check_type: CheckType | str) -> CertificateCheck:
        """Create a check instance.

        Raises:
            ValueError: If the type is unknown.
        """
        check_class = cls._registry.get(str(check_type))
        if check_class is None:
            raise ValueError(
                f"Unknown check type: '{check_type}'. "
                f"Valid types: {list(cls._registry.keys())}"
            )
        return check_class()

    @classmethod
    def get_supported_types(cls) -> list[str]:
        return list(cls._registry.keys())


__all__ = [
    "AdjunctionCheck",
    "BettiCheck",
    "CertificateCheck",
    "CheckFactory",
    "CheckRequest",
    "CheckResult",
    "ComplexCheck",
    "HilbertCheck",
    "SectionsCheck",
    "TangentCheck",
    "TateCheck",
]

"""Checks on the homology of the monad and on the ideal it defines."""

from __future__ import annotations

import sympy

from monad_surfaces.algebra.polyring import HP_VARIABLE, hilbert_polynomial
from monad_surfaces.domain.check_protocol import CheckRequest, CheckResult
from monad_surfaces.domain.enums import CheckType
from monad_surfaces.monad import residual_line
from monad_surfaces.verifiers.base import Mismatches, compare, guarded


class SectionsCheck:
    """Dimensions of ker B(k), im A(k) and their quotient in degree 4 + k."""

    check_type = CheckType.SECTIONS

    def run(self, request: CheckRequest) -> CheckResult:
        return guarded(self.check_type, self._body, request)

    def _body(self, request: CheckRequest) -> Mismatches | None:
        stored = request.certificate.sections
        if stored is None:
            return None
        mismatches: Mismatches = {}
        for k, dims in sorted(stored.items(), key=lambda kv: int(kv[0])):
            computed = request.context.sections(int(k)).dimensions()
            mismatches |= compare(dims, computed, prefix=f"sections.{k}.")
        return mismatches


def _same_polynomial(stored: str, computed: str) -> bool:
    t = HP_VARIABLE
    try:
        difference = sympy.sympify(stored, locals={"t": t}) - sympy.sympify(computed, locals={"t": t})
    except sympy.SympifyError:
        return False
    return sympy.expand(difference) == 0


class HilbertCheck:
    """Hilbert polynomial, generator degrees and the residual line of the saturated ideal."""

    check_type = CheckType.HILBERT

    def run(self, request: CheckRequest) -> CheckResult:
        return guarded(self.check_type, self._body, request)

    def _body(self, request: CheckRequest) -> Mismatches | None:
        cert = request.certificate
        if cert.hilbert is None and cert.residual is None:
            return None
        surface = request.context.surface
        mismatches: Mismatches = {}
        if cert.hilbert is not None:
            data = hilbert_polynomial(surface.ideal).to_dict()
            stored = cert.hilbert.model_dump(exclude={"polynomial", "generator_degrees", "generators"})
            mismatches |= compare(stored, data, prefix="hilbert.")
            if not _same_polynomial(cert.hilbert.polynomial, data["polynomial"]):
                mismatches["hilbert.polynomial"] = {
                    "stored": cert.hilbert.polynomial, "computed": data["polynomial"],
                }
            if cert.hilbert.generator_degrees is not None:
                degrees = {str(d): n for d, n in sorted(surface.generator_degrees().items())}
                if degrees != cert.hilbert.generator_degrees:
                    mismatches["hilbert.generator_degrees"] = {
                        "stored": cert.hilbert.generator_degrees, "computed": degrees,
                    }
        if cert.residual is not None:
            residual = residual_line(surface.quintics(), surface.ideal, rng=request.context.rng)
            mismatches |= compare(
                {"dimension": cert.residual.dimension, "degree": cert.residual.degree},
                {"dimension": residual.dimension, "degree": residual.degree},
                prefix="residual.",
            )
        return mismatches

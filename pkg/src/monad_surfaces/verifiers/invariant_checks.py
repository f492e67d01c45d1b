"""Checks on numeric invariants: tangent-space dimension and the adjunction ledger."""

from __future__ import annotations

from monad_surfaces.adjunction import DivisorClass, verify_family
from monad_surfaces.domain.check_protocol import CheckRequest, CheckResult
from monad_surfaces.domain.enums import CheckType
from monad_surfaces.search import tangent_dimension
from monad_surfaces.verifiers.base import Mismatches, compare, guarded


class TangentCheck:
    check_type = CheckType.TANGENT

    def run(self, request: CheckRequest) -> CheckResult:
        return guarded(self.check_type, self._body, request)

    def _body(self, request: CheckRequest) -> Mismatches | None:
        cert = request.certificate
        if cert.tangent is None:
            return None
        ctx = request.context
        report = tangent_dimension(ctx.A, ctx.B, cert.tangent.N)
        return compare(cert.tangent.model_dump(), report.to_dict(), prefix="tangent.")


class AdjunctionCheck:
    """Degree, genus and adjunction chain of the stored hyperplane class."""

    check_type = CheckType.ADJUNCTION

    def run(self, request: CheckRequest) -> CheckResult:
        return guarded(self.check_type, self._body, request)

    def _body(self, request: CheckRequest) -> Mismatches | None:
        block = request.certificate.adjunction
        if block is None:
            return None
        report = verify_family(
            DivisorClass.parse(block.hyperplane_class),
            expected_degree=block.degree,
            expected_genus=block.sectional_genus,
            six_secants=block.six_secants,
        )
        computed = {
            "degree": report.invariants.degree,
            "sectional_genus": report.invariants.sectional_genus,
            "chain_length": report.chain.length if report.chain else None,
            "final_degree": report.chain.final.degree if report.chain else None,
        }
        stored = block.model_dump(exclude={"hyperplane_class", "six_secants"})
        mismatches = compare(stored, computed, prefix="adjunction.")
        if not report.passed:
            mismatches["adjunction.family"] = {"stored": "consistent", "computed": report.problems}
        return mismatches

"""Checks on the monad itself: Betti shape of B, the complex condition, Tate terms."""

from __future__ import annotations

from collections import Counter

from monad_surfaces.domain.check_protocol import CheckRequest, CheckResult
from monad_surfaces.domain.enums import CheckType
from monad_surfaces.monad import (
    betti_of_B,
    check_AB,
    classify_betti,
    natural_table,
    tate_left_window,
    tate_right_step,
)
from monad_surfaces.search import quick_filter_rank
from monad_surfaces.verifiers.base import Mismatches, compare, guarded

# Monad terms to the right of the window's first entry: source of A, middle, target of B.
_MONAD_TERMS = 3


def _str_keys(counts: dict[int, int]) -> dict[str, int]:
    return {str(t): n for t, n in sorted(counts.items())}


class BettiCheck:
    """Syzygy table of B, its class and the quick-filter rank."""

    check_type = CheckType.BETTI

    def run(self, request: CheckRequest) -> CheckResult:
        return guarded(self.check_type, self._body, request)

    def _body(self, request: CheckRequest) -> Mismatches | None:
        cert = request.certificate
        if cert.betti is None and cert.betti_class is None and cert.quick_filter_rank is None:
            return None
        B = request.context.B
        mismatches: Mismatches = {}
        if cert.quick_filter_rank is not None:
            mismatches |= compare(
                {"quick_filter_rank": cert.quick_filter_rank},
                {"quick_filter_rank": quick_filter_rank(B)},
            )
        _, table = betti_of_B(B)
        computed = table.to_dict()
        for step, twists in (cert.betti or {}).items():
            if computed.get(step, {}) != twists:
                mismatches[f"betti.{step}"] = {"stored": twists, "computed": computed.get(step)}
        if cert.betti_class is not None:
            mismatches |= compare(
                {"betti_class": cert.betti_class.value},
                {"betti_class": classify_betti(table).value},
            )
        return mismatches


class ComplexCheck:
    """B o A = 0 and the syzygy condition on A."""

    check_type = CheckType.COMPLEX

    def run(self, request: CheckRequest) -> CheckResult:
        return guarded(self.check_type, self._body, request)

    def _body(self, request: CheckRequest) -> Mismatches:
        cert = request.certificate
        monad = request.context.monad
        mismatches: Mismatches = {}
        product = monad.composite()
        if not product.is_zero():
            mismatches["composite"] = {"stored": 0, "computed": product.nonzero_count()}
        if cert.ab_passed is not None:
            report = check_AB(monad.A)
            mismatches |= compare(
                {"ab_passed": cert.ab_passed},
                {"ab_passed": report.passed},
            )
        return mismatches


class TateCheck:
    """Natural cohomology table and the Tate terms around the monad."""

    check_type = CheckType.TATE

    def run(self, request: CheckRequest) -> CheckResult:
        return guarded(self.check_type, self._body, request)

    def _body(self, request: CheckRequest) -> Mismatches | None:
        cert = request.certificate
        if cert.tate is None and cert.natural_table is None:
            return None
        mismatches: Mismatches = {}
        table = natural_table()
        if cert.natural_table is not None:
            computed = table.to_dict()
            for column, values in cert.natural_table.items():
                if computed.get(column, {}) != values:
                    mismatches[f"natural_table.{column}"] = {
                        "stored": values, "computed": computed.get(column),
                    }
        if cert.tate is None:
            return mismatches

        stored = cert.tate.left_window
        steps = max(len(stored) - _MONAD_TERMS, 0)
        window = [_str_keys(term) for term in tate_left_window(request.context.monad, steps)]
        if window != stored:
            mismatches["tate.left_window"] = {"stored": stored, "computed": window}
        if steps == 1:
            # The term left of A has rank h^3(I_X(-1)).
            leftmost = sum(window[0].values())
            if leftmost != table.h(3, -1):
                mismatches["tate.h3"] = {"stored": table.h(3, -1), "computed": leftmost}
        if cert.tate.right_step is not None:
            right = _str_keys(dict(Counter(tate_right_step(request.context.A).target)))
            if right != cert.tate.right_step:
                mismatches["tate.right_step"] = {"stored": cert.tate.right_step, "computed": right}
        return mismatches

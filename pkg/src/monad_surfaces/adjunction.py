"""Divisor classes on blown-up planes and the numeric adjunction process.

A class aL - sum b_i E_i on P^2 blown up in n points is written (a; b_1..b_n)
and printed in multiplicity-count shorthand, largest multiplicity first:

    12L - 2*4E - 9*3E - 3*2E - 7*1E

The intersection form is (a; b).(a'; b') = aa' - sum b_i b'_i and the
canonical class is K = (-3; -1, ..., -1). One adjunction step replaces H
by H + K and drops the exceptional curves it contracts.

Usage:
    H = DivisorClass.parse(FAMILIES["i"])
    invariants(H).degree                 # 12
    adjunction_chain(H).final.degree     # 7
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from monad_surfaces.domain.exceptions import NegativeMultiplicityError, ParseError
from monad_surfaces.logging_config import get_logger

logger = get_logger(__name__)

# Hyperplane classes of the five families. The class with overlapping
# index ranges (E_2..E_13 threes, E_13..E_21 ones) is kept as printed under
# "f3_printed"; "f3" is the reading with 12 threes and 8 ones.
FAMILIES: dict[str, str] = {
    "i": "12L - 2*4E - 9*3E - 3*2E - 7*1E",
    "ii": "12L - 3*4E - 6*3E - 6*2E - 6*1E",
    "iii": "12L - 4*4E - 3*3E - 9*2E - 5*1E",
    "iv": "12L - 5*4E - 12*2E - 4*1E",
    "f3": "12L - 1*4E - 12*3E - 8*1E",
    "f3_printed": "12L - 1*4E - 12*3E - 9*1E",
}

# Six-secant lines of a surface with degree 12, sectional genus 13, chi 1.
LE_BARZ_SIX_SECANTS = 8

_TERM = re.compile(r"^(?:(\d+)\*)?(\d+)E$")
_LEAD = re.compile(r"^(-?\d*)L$")


@dataclass(frozen=True)
class DivisorClass:
    """aL - sum b_i E_i."""

    a: int
    b: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str) -> DivisorClass:
        source = text
        compact = text.replace(" ", "").replace("−", "-")
        parts = re.split(r"(?=[+-])", compact)
        parts = [part for part in parts if part]
        if not parts:
            raise ParseError(source, "empty class")
        lead = _LEAD.match(parts[0].lstrip("+"))
        if lead is None:
            raise ParseError(source, f"expected a multiple of L, got {parts[0]!r}")
        coeff = lead.group(1)
        a = int(coeff) if coeff not in ("", "-") else (-1 if coeff == "-" else 1)
        b: list[int] = []
        for part in parts[1:]:
            if not part.startswith("-"):
                raise ParseError(source, f"exceptional terms are subtracted: {part!r}")
            match = _TERM.match(part[1:])
            if match is None:
                raise ParseError(source, f"unexpected term {part!r}")
            count = int(match.group(1)) if match.group(1) else 1
            b.extend([int(match.group(2))] * count)
        return cls(a, tuple(sorted(b, reverse=True)))

    def __str__(self) -> str:
        text = f"{self.a}L"
        for mult, count in sorted(Counter(self.b).items(), reverse=True):
            text += f" - {count}*{mult}E"
        return text

    @property
    def points(self) -> int:
        return len(self.b)

    def multiplicities(self) -> dict[int, int]:
        """Count of blown-up points per multiplicity."""
        return dict(sorted(Counter(self.b).items(), reverse=True))

    def dot(self, other: DivisorClass) -> int:
        n = max(self.points, other.points)
        mine = self.b + (0,) * (n - self.points)
        theirs = other.b + (0,) * (n - other.points)
        return self.a * other.a - sum(x * y for x, y in zip(mine, theirs, strict=True))

    def canonical(self) -> DivisorClass:
        return DivisorClass(-3, (-1,) * self.points)

    def __add__(self, other: DivisorClass) -> DivisorClass:
        n = max(self.points, other.points)
        mine = self.b + (0,) * (n - self.points)
        theirs = other.b + (0,) * (n - other.points)
        return DivisorClass(self.a + other.a, tuple(x + y for x, y in zip(mine, theirs, strict=True)))

    def scale(self, k: int) -> DivisorClass:
        return DivisorClass(k * self.a, tuple(k * x for x in self.b))


@dataclass(frozen=True)
class SurfaceInvariants:
    degree: int
    sectional_genus: int
    K2: int
    HK: int
    chi: int = 1

    def to_dict(self) -> dict[str, int]:
        return {
            "degree": self.degree,
            "sectional_genus": self.sectional_genus,
            "K2": self.K2,
            "HK": self.HK,
            "chi": self.chi,
        }


def invariants(H: DivisorClass) -> SurfaceInvariants:
    K = H.canonical()
    degree = H.dot(H)
    HK = H.dot(K)
    return SurfaceInvariants(degree, (degree + HK) // 2 + 1, K.dot(K), HK)


def adjoint_step(H: DivisorClass) -> DivisorClass:
    """H + K with the contracted exceptional curves dropped."""
    b = []
    for i, mult in enumerate(H.b):
        if mult - 1 < 0:
            raise NegativeMultiplicityError(i, mult - 1)
        if mult - 1:
            b.append(mult - 1)
    return DivisorClass(H.a - 3, tuple(b))


def expected_sections(D: DivisorClass) -> int:
    """chi(O(D)) = D.(D - K)/2 + 1 on a rational surface."""
    K = D.canonical()
    return D.dot(D + K.scale(-1)) // 2 + 1


@dataclass(frozen=True)
class AdjunctionStep:
    H: DivisorClass
    invariants: SurfaceInvariants
    adjoint_sections: int
    expected_degree: int
    expected_genus: int

    @property
    def consistent(self) -> bool:
        """The adjoint's degree and genus agree with the formulas evaluated on H."""
        adjoint = invariants(adjoint_step(self.H)) if self.adjoint_sections > 1 else None
        if adjoint is None:
            return True
        return (adjoint.degree, adjoint.sectional_genus) == (
            self.expected_degree, self.expected_genus
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "class": str(self.H),
            **self.invariants.to_dict(),
            "adjoint_sections": self.adjoint_sections,
            "expected_degree": self.expected_degree,
            "expected_genus": self.expected_genus,
        }


@dataclass(frozen=True)
class AdjunctionChain:
    steps: tuple[AdjunctionStep, ...]

    @property
    def final(self) -> SurfaceInvariants:
        return self.steps[-1].invariants

    @property
    def final_class(self) -> DivisorClass:
        return self.steps[-1].H

    @property
    def length(self) -> int:
        """Adjunction steps taken from the first class to the last."""
        return len(self.steps) - 1

    def ends_in_del_pezzo(self, degree: int = 7) -> bool:
        final = self.final
        return final.degree == degree and final.HK == -degree

    def to_dict(self) -> dict[str, Any]:
        return {
            "steps": [step.to_dict() for step in self.steps],
            "length": self.length,
            "final_class": str(self.final_class),
            "final_degree": self.final.degree,
        }


def adjunction_chain(H: DivisorClass, max_steps: int = 20) -> AdjunctionChain:
    """Iterate H -> H + K until the adjoint system maps to a point (h^0 - 1 <= 0)."""
    steps = []
    current = H
    for _ in range(max_steps):
        K = current.canonical()
        adjoint = current + K
        sections = expected_sections(adjoint)
        steps.append(AdjunctionStep(
            current,
            invariants(current),
            sections,
            adjoint.dot(adjoint),
            adjoint.dot(current + K.scale(2)) // 2 + 1,
        ))
        if sections - 1 <= 0:
            break
        current = adjoint_step(current)
    chain = AdjunctionChain(tuple(steps))
    logger.debug("adjunction.chain", start=str(H), final=str(chain.final_class),
                 length=chain.length)
    return chain


# --- Family audit ---


@dataclass
class FamilyReport:
    H: DivisorClass
    invariants: SurfaceInvariants
    expected_degree: int
    expected_genus: int
    sum_b: int
    sum_b2: int
    expected_multiplicities: dict[int, int] | None = None
    six_secants: int | None = None
    chain: AdjunctionChain | None = None
    problems: list[str] = field(default_factory=list)

    @property
    def unit_multiplicities(self) -> int:
        return sum(1 for x in self.H.b if x == 1)

    @property
    def le_barz_ok(self) -> bool | None:
        if self.six_secants is None:
            return None
        return self.unit_multiplicities + self.six_secants == LE_BARZ_SIX_SECANTS

    @property
    def passed(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict[str, Any]:
        return {
            "class": str(self.H),
            **self.invariants.to_dict(),
            "points": self.H.points,
            "sum_b": self.sum_b,
            "sum_b2": self.sum_b2,
            "unit_multiplicities": self.unit_multiplicities,
            "six_secants": self.six_secants,
            "le_barz_ok": self.le_barz_ok,
            "chain": self.chain.to_dict() if self.chain else None,
            "problems": list(self.problems),
            "passed": self.passed,
        }


def verify_family(
    H: DivisorClass,
    *,
    expected_degree: int = 12,
    expected_genus: int = 13,
    expected_multiplicities: dict[int, int] | None = None,
    six_secants: int | None = None,
) -> FamilyReport:
    inv = invariants(H)
    report = FamilyReport(
        H,
        inv,
        expected_degree,
        expected_genus,
        sum(H.b),
        sum(x * x for x in H.b),
        expected_multiplicities,
        six_secants,
    )
    if inv.degree != expected_degree:
        report.problems.append(f"degree {inv.degree} != {expected_degree}")
    if inv.sectional_genus != expected_genus:
        report.problems.append(f"sectional genus {inv.sectional_genus} != {expected_genus}")
    if expected_multiplicities is not None and H.multiplicities() != expected_multiplicities:
        report.problems.append(f"multiplicities {H.multiplicities()} != {expected_multiplicities}")
    if report.le_barz_ok is False:
        report.problems.append(
            f"{report.unit_multiplicities} unit multiplicities + {six_secants} six-secants"
            f" != {LE_BARZ_SIX_SECANTS}"
        )
    if not report.problems:
        try:
            report.chain = adjunction_chain(H)
        except NegativeMultiplicityError as exc:
            report.problems.append(exc.message)
        else:
            if not all(step.consistent for step in report.chain.steps):
                report.problems.append("adjoint invariants disagree with the expected formulas")
    if report.problems:
        logger.info("adjunction.family.flagged", cls=str(H), problems=report.problems)
    return report

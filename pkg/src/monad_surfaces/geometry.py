"""Determinantal and Veronese geometry of the linear blocks A1 and B1.

A1 (2x4) and B1 (3x2) have entries in V, read as linear forms on the P^4
with coordinates x0..x4 dual to e0..e4. Their rank-one loci are the curve
C_A (a rational normal quartic for the published matrices) and the surface
S_B (a cubic scroll).

Combining the columns of A1 with weights lambda gives a pair of forms
(f_lambda, g_lambda); combining the rows of B1 with weights mu gives
(h_mu, k_mu). The wedges f ^ g and h ^ k parametrize a Veronese threefold
Z_A and a Veronese surface Z_B inside P(Lambda^2 V). Their intersection
count r bounds the rank N of the construction-II linear system by
N <= 120 - r.

Usage:
    A = LinearMatrixOfForms.from_ematrix(A1)
    report = zazb_intersection(A1, B1)
    report.r, report.agree
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING, Any

import numpy as np
from sympy import divisors
from sympy.functions.combinatorial.numbers import mobius

from monad_surfaces.algebra.extalg import NGENS
from monad_surfaces.algebra.fields import get_field, projective_points
from monad_surfaces.algebra.groebner import monomials_of_degree
from monad_surfaces.algebra.linalg import kernel_array, rank_array
from monad_surfaces.algebra.polyring import (
    PolyIdeal,
    SmoothnessReport,
    dimension_degree,
    groebner,
    hilbert_data_from_leading,
    is_smooth,
    poly_ring,
    to_dict,
)
from monad_surfaces.config import get_settings
from monad_surfaces.domain.enums import Verdict
from monad_surfaces.domain.exceptions import InfiniteIntersectionError, ShapeMismatchError
from monad_surfaces.logging_config import get_logger

if TYPE_CHECKING:
    from collections.abc import Sequence

    from sympy.polys.rings import PolyElement

    from monad_surfaces.algebra.emod import EMatrix
    from monad_surfaces.algebra.fields import FiniteField, IntArray
    from monad_surfaces.algebra.groebner import DictPoly

logger = get_logger(__name__)

PLUECKER_VARS = 10

# Pluecker coordinates z_ij, i < j, in the order of Lambda^2 V's basis.
PLUECKER_PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(NGENS), 2))


# --- Matrices of linear forms ---


@dataclass(frozen=True, eq=False)
class LinearMatrixOfForms:
    """A grid of linear forms; ``coeffs[r, c]`` is the coefficient vector in x0..x4."""

    p: int
    coeffs: IntArray

    @classmethod
    def from_ematrix(cls, M: EMatrix) -> LinearMatrixOfForms:
        coeffs = np.zeros((*M.shape, NGENS), dtype=np.int64)
        for r, row in enumerate(M.entries):
            for c, entry in enumerate(row):
                if entry.is_zero():
                    continue
                if entry.degree != -1:
                    raise ShapeMismatchError(f"entry ({r}, {c}) is not linear: {entry}")
                coeffs[r, c] = entry.to_vector(-1)
        return cls(M.p, coeffs % M.p)

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.coeffs.shape[0]), int(self.coeffs.shape[1])

    def forms(self) -> list[list[PolyElement]]:
        R = poly_ring(self.p)
        return [
            [sum((int(v) * x for v, x in zip(self.coeffs[r, c], R.gens, strict=True)), R.zero)
             for c in range(self.shape[1])]
            for r in range(self.shape[0])
        ]

    def column_pairs_have_rank_two(self) -> bool:
        field_ = get_field(self.p)
        return all(rank_array(field_, self.coeffs[:, c, :]) == 2 for c in range(self.shape[1]))

    def row_pairs_have_rank_two(self) -> bool:
        field_ = get_field(self.p)
        return all(rank_array(field_, self.coeffs[r, :, :]) == 2 for r in range(self.shape[0]))


def _as_forms(M: EMatrix | LinearMatrixOfForms) -> LinearMatrixOfForms:
    return M if isinstance(M, LinearMatrixOfForms) else LinearMatrixOfForms.from_ematrix(M)


def rank1_locus(M: EMatrix | LinearMatrixOfForms) -> PolyIdeal:
    """Ideal of the 2x2 minors."""
    L = _as_forms(M)
    grid = L.forms()
    rows, cols = L.shape
    minors = [
        grid[r1][c1] * grid[r2][c2] - grid[r1][c2] * grid[r2][c1]
        for r1, r2 in combinations(range(rows), 2)
        for c1, c2 in combinations(range(cols), 2)
    ]
    return PolyIdeal.from_polys(L.p, minors)


def disjoint(I: PolyIdeal, J: PolyIdeal) -> bool:
    """True iff I + J has empty projective support."""
    result = groebner(I + J, stop_when_full=True)
    if not result.complete:
        return True
    return hilbert_data_from_leading(result.leading_monomials, I.n).dimension < 0


def curve_smoothness(A1: EMatrix, rng: np.random.Generator | None = None) -> SmoothnessReport:
    """Jacobian criterion for the rank-one locus of a 2x4 matrix, a curve in P^4."""
    return is_smooth(rank1_locus(A1), 3, rng=rng)


# --- Veronese images in P(Lambda^2 V) ---


def wedge_coordinates(field_: FiniteField, f: IntArray, g: IntArray) -> IntArray:
    """Pluecker coordinates of f ^ g for rows of field codes, shape (..., 10)."""
    i = np.array([a for a, _ in PLUECKER_PAIRS])
    j = np.array([b for _, b in PLUECKER_PAIRS])
    return field_.sub(field_.mul(f[..., i], g[..., j]), field_.mul(f[..., j], g[..., i]))


@dataclass(frozen=True, eq=False)
class VeroneseImage:
    """lambda -> (F lambda) ^ (G lambda); F and G have shape (5, params)."""

    p: int
    F: IntArray
    G: IntArray

    @classmethod
    def of_columns(cls, A1: EMatrix | LinearMatrixOfForms) -> VeroneseImage:
        L = _as_forms(A1)
        return cls(L.p, L.coeffs[0].T.copy(), L.coeffs[1].T.copy())

    @classmethod
    def of_rows(cls, B1: EMatrix | LinearMatrixOfForms) -> VeroneseImage:
        L = _as_forms(B1)
        return cls(L.p, L.coeffs[:, 0].T.copy(), L.coeffs[:, 1].T.copy())

    @property
    def params(self) -> int:
        return int(self.F.shape[1])

    @property
    def dimension(self) -> int:
        return self.params - 1

    def pair(self, field_: FiniteField, lam: IntArray) -> tuple[IntArray, IntArray]:
        lam = np.atleast_2d(lam)
        return field_.matmul(lam, self.F.T), field_.matmul(lam, self.G.T)

    def point(self, field_: FiniteField, lam: IntArray) -> IntArray:
        f, g = self.pair(field_, lam)
        return wedge_coordinates(field_, f, g)

    def coordinate_polys(self) -> list[PolyElement]:
        """The ten Pluecker coordinates as quadrics in the parameters."""
        R = poly_ring(self.p, self.params)
        f = [sum((int(self.F[a, c]) * R.gens[c] for c in range(self.params)), R.zero)
             for a in range(NGENS)]
        g = [sum((int(self.G[a, c]) * R.gens[c] for c in range(self.params)), R.zero)
             for a in range(NGENS)]
        return [f[i] * g[j] - f[j] * g[i] for i, j in PLUECKER_PAIRS]

    def is_embedding(self) -> bool:
        """True when the coordinate quadrics span every quadric in the parameters."""
        field_ = get_field(self.p)
        rows = [to_dict(c, self.p) for c in self.coordinate_polys()]
        columns = list(monomials_of_degree(2, self.params))
        matrix = np.array([[row.get(m, 0) for m in columns] for row in rows], dtype=np.int64)
        return rank_array(field_, matrix) == len(columns)

    def ideal(self) -> PolyIdeal:
        """Equations of the image in the ten Pluecker variables.

        Linear and quadratic equations cut out a Veronese variety; cubics are
        added when the parametrization is a projection of one.
        """
        coords = self.coordinate_polys()
        linear = _kernel_forms(coords, 1, self.p, self.params)
        gens = linear + _kernel_forms(coords, 2, self.p, self.params)
        if not self.is_embedding():
            gens += _kernel_forms(coords, 3, self.p, self.params)
        return PolyIdeal(self.p, tuple(gens), PLUECKER_VARS)


def _kernel_forms(coords: Sequence[PolyElement], d: int, p: int, params: int) -> list[DictPoly]:
    """Forms of degree d in the Pluecker variables vanishing on the parametrization."""
    field_ = get_field(p)
    monomials = list(monomials_of_degree(d, PLUECKER_VARS))
    R = poly_ring(p, params)
    images = []
    for m in monomials:
        value = R.one
        for var, e in enumerate(m):
            if e:
                value = value * coords[var] ** e
        images.append(to_dict(value, p))
    columns = sorted({k for img in images for k in img})
    index = {k: j for j, k in enumerate(columns)}
    matrix = np.zeros((len(monomials), len(columns)), dtype=np.int64)
    for r, img in enumerate(images):
        for k, c in img.items():
            matrix[r, index[k]] = c
    kernel = kernel_array(field_, matrix.T) if columns else np.eye(len(monomials), dtype=np.int64)
    return [{monomials[j]: int(v[j]) for j in np.flatnonzero(v)} for v in kernel]


# --- Intersection count ---


@dataclass(frozen=True)
class ZPoint:
    """A common point: the plane of column weights ``lam`` equals that of row weights ``mu``."""

    extension: int
    mu: tuple[int, ...]
    lam: tuple[int, ...]
    pluecker: tuple[int, ...]
    verified: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "extension": self.extension,
            "mu": list(self.mu),
            "lambda": list(self.lam),
            "pluecker": list(self.pluecker),
            "verified": self.verified,
        }


@dataclass(frozen=True)
class ZReport:
    """Outcome of intersecting Z_A with Z_B.

    ``rational_counts[k]`` counts the points over F_{p^k}; ``enumerated``
    counts geometric points of residue degree at most ``max_extension``.
    """

    r: int
    groebner_degree: int | None
    enumerated: int | None
    max_extension: int
    rational_counts: dict[int, int] = field(default_factory=dict)
    points: tuple[ZPoint, ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def agree(self) -> bool:
        if self.groebner_degree is None or self.enumerated is None:
            return True
        return self.groebner_degree == self.enumerated

    @property
    def undetected(self) -> int:
        """Points the Groebner count sees beyond the enumeration bound."""
        if self.groebner_degree is None or self.enumerated is None:
            return 0
        return max(self.groebner_degree - self.enumerated, 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "groebner_degree": self.groebner_degree,
            "enumerated": self.enumerated,
            "max_extension": self.max_extension,
            "rational_counts": {str(k): v for k, v in self.rational_counts.items()},
            "agree": self.agree,
            "undetected": self.undetected,
            "flags": list(self.flags),
            "points": [pt.to_dict() for pt in self.points],
        }


def zazb_groebner(A1: EMatrix, B1: EMatrix) -> int:
    """Degree of the zero-dimensional ideal I(Z_A) + I(Z_B) in Pluecker space."""
    ideal = VeroneseImage.of_columns(A1).ideal() + VeroneseImage.of_rows(B1).ideal()
    dim, degree = dimension_degree(ideal)
    if dim > 0:
        raise InfiniteIntersectionError(dim)
    return degree if dim == 0 else 0


def _proportional(field_: FiniteField, u: IntArray, v: IntArray) -> bool:
    return rank_array(field_, np.stack([u, v])) == 1


def _enumerate_over(A: VeroneseImage, B: VeroneseImage, k: int) -> list[ZPoint]:
    """Common points with coordinates in F_{p^k}, one per mu."""
    field_ = get_field(A.p, k)
    mus = projective_points(field_, B.params - 1)
    hs, ks = B.pair(field_, mus)
    found: list[ZPoint] = []
    for mu, h, kk in zip(mus, hs, ks, strict=True):
        plane = np.stack([h, kk])
        annihilator = kernel_array(field_, plane)
        if annihilator.shape[0] != NGENS - 2:
            continue
        conditions = np.concatenate(
            [field_.matmul(annihilator, A.F), field_.matmul(annihilator, A.G)], axis=0
        )
        kernel = kernel_array(field_, conditions)
        if not kernel.shape[0]:
            continue
        if kernel.shape[0] > 1:
            candidates = field_.matmul(projective_points(field_, kernel.shape[0] - 1), kernel)
        else:
            candidates = kernel
        target = wedge_coordinates(field_, h, kk)
        for lam in candidates:
            image = A.point(field_, lam)[0]
            if image.any():
                found.append(ZPoint(
                    k,
                    tuple(int(v) for v in mu),
                    tuple(int(v) for v in lam),
                    tuple(int(v) for v in target),
                    _proportional(field_, image, target),
                ))
                break
    return found


def geometric_count(rational_counts: dict[int, int]) -> int:
    """Geometric points of residue degree <= max key, from |X(F_{p^k})| for k = 1..max."""
    total = 0
    for e in rational_counts:
        total += sum(int(mobius(e // d)) * rational_counts[d] for d in divisors(e))
    return total


def zazb_enumerate(
    A1: EMatrix, B1: EMatrix, max_extension: int | None = None
) -> tuple[dict[int, int], list[ZPoint]]:
    top = max_extension or get_settings().enumeration_max_extension
    A, B = VeroneseImage.of_columns(A1), VeroneseImage.of_rows(B1)
    counts: dict[int, int] = {}
    points: list[ZPoint] = []
    for k in range(1, top + 1):
        over_k = _enumerate_over(A, B, k)
        counts[k] = len(over_k)
        # points of smaller fields were already recorded
        points.extend(pt for pt in over_k if k == 1 or _beyond_prime_field(pt, A.p))
        logger.debug("geometry.zazb.enumerated", extension=k, points=len(over_k))
    return counts, points


def _beyond_prime_field(pt: ZPoint, p: int) -> bool:
    return any(c >= p for c in pt.mu)


def zazb_intersection(
    A1: EMatrix,
    B1: EMatrix,
    *,
    method: str = "both",
    max_extension: int | None = None,
) -> ZReport:
    """Count the points of Z_A and Z_B in common.

    ``method`` is "enumeration", "groebner" or "both". With both, the
    Groebner degree is the reported r and any difference is flagged.
    """
    if not LinearMatrixOfForms.from_ematrix(A1).column_pairs_have_rank_two():
        raise ShapeMismatchError("a column of A1 does not have rank 2")
    if not LinearMatrixOfForms.from_ematrix(B1).row_pairs_have_rank_two():
        raise ShapeMismatchError("a row of B1 does not have rank 2")
    top = max_extension or get_settings().enumeration_max_extension

    degree = zazb_groebner(A1, B1) if method in ("groebner", "both") else None
    counts: dict[int, int] = {}
    points: list[ZPoint] = []
    enumerated = None
    if method in ("enumeration", "both"):
        counts, points = zazb_enumerate(A1, B1, top)
        enumerated = geometric_count(counts)

    flags = []
    if degree is not None and enumerated is not None:
        if enumerated > degree:
            flags.append("enumeration_exceeds_groebner")
        elif enumerated < degree:
            flags.append("undetected_by_enumeration")
    if any(not pt.verified for pt in points):
        flags.append("unverified_point")
    r = degree if degree is not None else int(enumerated or 0)
    report = ZReport(r, degree, enumerated, top, counts, tuple(points), tuple(flags))
    logger.info("geometry.zazb", r=r, groebner=degree, enumerated=enumerated, flags=flags)
    return report


# --- Bounds ---


@dataclass(frozen=True)
class LemmaReport:
    """N + r <= 120 always; r <= 6 when C_A and S_B are smooth and disjoint."""

    N: int
    r: int
    curve_smooth: bool
    scroll_smooth: bool
    disjoint: bool

    @property
    def rank_bound_ok(self) -> bool:
        return self.N + self.r <= 120

    @property
    def point_bound_applies(self) -> bool:
        return self.curve_smooth and self.scroll_smooth and self.disjoint

    @property
    def point_bound_ok(self) -> bool:
        return not self.point_bound_applies or self.r <= 6

    @property
    def passed(self) -> bool:
        return self.rank_bound_ok and self.point_bound_ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "N": self.N,
            "r": self.r,
            "curve_smooth": self.curve_smooth,
            "scroll_smooth": self.scroll_smooth,
            "disjoint": self.disjoint,
            "rank_bound_ok": self.rank_bound_ok,
            "point_bound_applies": self.point_bound_applies,
            "point_bound_ok": self.point_bound_ok,
        }


@lru_cache(maxsize=8)
def _scroll_is_smooth(B1: EMatrix) -> bool:
    return is_smooth(rank1_locus(B1), 2).verdict is Verdict.SMOOTH


def lemma_bounds_check(
    A1: EMatrix,
    B1: EMatrix,
    N: int,
    *,
    r: int | None = None,
    rng: np.random.Generator | None = None,
) -> LemmaReport:
    if r is None:
        r = zazb_intersection(A1, B1).r
    curve, scroll = rank1_locus(A1), rank1_locus(B1)
    curve_ok = curve_smoothness(A1, rng=rng).verdict is Verdict.SMOOTH
    scroll_ok = _scroll_is_smooth(B1)
    report = LemmaReport(N, r, curve_ok, scroll_ok, disjoint(curve, scroll))
    if not report.passed:
        logger.warning("geometry.lemma.violated", **report.to_dict())
    return report

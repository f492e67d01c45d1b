"""Beilinson monads 4 Omega^3(3) -> 2 Omega^2(2) + 2 Omega^1(1) -> 3 O and their surfaces.

On the exterior side a monad is a pair of E-matrices

    A: 4E(3) -> 2E(2) + 2E(1),    B: 2E(2) + 2E(1) -> 3E,

with B o A = 0. B determines A (up to an automorphism of 4E(3)) as its four
minimal syzygies of twist 3. The homology ker B / im A is I_X(4); its global
sections in each degree are cut out by section-level maps (:mod:`bott`) and
carried into S by the one sheaf map I_X(4) -> O(4), which is computed as a
functional on the middle term that kills the image of A.

Usage:
    B = assemble_B(B2, B1)
    monad = Monad(build_AB(B), B)
    quintics = homology_sections(monad, 1)    # 5 forms of degree 5
    surface = ideal_of_surface(monad)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import TYPE_CHECKING, Any

import numpy as np

from monad_surfaces.algebra.bott import (
    PROJECTIVE_DIM,
    SectionSpace,
    bott_dimension,
    induced_section_map,
    omega_sections,
)
from monad_surfaces.algebra.emod import (
    BettiTable,
    EMatrix,
    compose,
    dualize,
    hconcat,
    syzygy_matrix,
)
from monad_surfaces.algebra.extalg import dim_wedge
from monad_surfaces.algebra.fields import get_field
from monad_surfaces.algebra.groebner import poly_degree
from monad_surfaces.algebra.linalg import kernel_array, rank_array, row_basis_array
from monad_surfaces.algebra.monomials import dim_S, monomial_basis, product_table
from monad_surfaces.algebra.polyring import (
    PolyIdeal,
    dimension_degree,
    ideal_quotient,
    minimal_generators,
    saturate,
)
from monad_surfaces.domain.enums import BettiClass
from monad_surfaces.domain.exceptions import (
    HomologyError,
    IncompleteWindowError,
    NotAComplexError,
    ShapeMismatchError,
    WrongBettiShapeError,
)
from monad_surfaces.logging_config import get_logger

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from monad_surfaces.algebra.fields import IntArray
    from monad_surfaces.algebra.groebner import DictPoly

logger = get_logger(__name__)

SOURCE_TWISTS = (3, 3, 3, 3)
MIDDLE_TWISTS = (2, 2, 1, 1)
TARGET_TWISTS = (0, 0, 0)

# Degree of the sheaf map I_X(4) -> O(4).
EMBEDDING_DEGREE = 4

SURFACE_DEGREE = 12
SECTIONAL_GENUS = 13
SURFACE_CHI = 1

# Tate term left of A on an accepted monad.
TATE_FIRST_STEP = {5: 13}


# --- Cohomology table ---


def surface_hilbert_value(j: int, d: int = SURFACE_DEGREE, pi: int = SECTIONAL_GENUS,
                          chi: int = SURFACE_CHI) -> int:
    """chi(O_X(j)) = (d/2) j^2 + (d/2 - pi + 1) j + chi."""
    return (d * j * j + (d - 2 * pi + 2) * j) // 2 + chi


def ideal_chi(j: int, d: int = SURFACE_DEGREE, pi: int = SECTIONAL_GENUS,
              chi: int = SURFACE_CHI) -> int:
    """chi(I_X(j)) = chi(O_P4(j)) - chi(O_X(j))."""
    ambient = comb(j + PROJECTIVE_DIM, PROJECTIVE_DIM) if j >= -PROJECTIVE_DIM else 0
    return ambient - surface_hilbert_value(j, d, pi, chi)


@dataclass(frozen=True)
class NaturalCohomologyTable:
    """h^i(I_X(j)) for a surface with natural cohomology, keyed by (i, j)."""

    values: Mapping[tuple[int, int], int]
    columns: tuple[int, ...]

    def h(self, i: int, j: int) -> int:
        return self.values.get((i, j), 0)

    def column(self, j: int) -> dict[int, int]:
        return {i: n for (i, jj), n in self.values.items() if jj == j}

    def to_dict(self) -> dict[str, dict[str, int]]:
        return {str(j): {str(i): n for i, n in self.column(j).items()} for j in self.columns}

    def render(self) -> str:
        width = 4
        lines = []
        for i in range(PROJECTIVE_DIM, -1, -1):
            cells = "".join(f"{self.h(i, j) or '.':>{width}}" for j in self.columns)
            lines.append(f"{i}:{cells}")
        lines.append("  " + "".join(f"{j:>{width}}" for j in self.columns))
        return "\n".join(lines)


def natural_table(
    d: int = SURFACE_DEGREE,
    pi: int = SECTIONAL_GENUS,
    chi: int = SURFACE_CHI,
    columns: Sequence[int] = range(-1, 6),
    h0_start: int = 5,
) -> NaturalCohomologyTable:
    """Place chi(I_X(j)) in a single row per column.

    Negative values go to h^3 for j <= 0 and to h^1 otherwise; positive values
    go to h^0 from ``h0_start`` on and to h^2 before it.
    """
    values: dict[tuple[int, int], int] = {}
    for j in columns:
        value = ideal_chi(j, d, pi, chi)
        if value < 0:
            values[(3 if j <= 0 else 1, j)] = -value
        elif value > 0:
            values[(0 if j >= h0_start else 2, j)] = value
    return NaturalCohomologyTable(values, tuple(columns))


# --- Monads ---


def assemble_B(B2: EMatrix, B1: EMatrix) -> EMatrix:
    """B = (B2, B1): 2E(2) + 2E(1) -> 3E."""
    return hconcat(B2, B1)


@dataclass(frozen=True, eq=False)
class Monad:
    """The differential pair (A, B)."""

    A: EMatrix
    B: EMatrix

    def __post_init__(self) -> None:
        if self.A.target != self.B.source:
            raise ShapeMismatchError(f"A lands in {self.A.target} but B starts at {self.B.source}")
        if self.A.p != self.B.p:
            raise ShapeMismatchError("A and B live over different fields")

    @property
    def p(self) -> int:
        return self.A.p

    @property
    def middle(self) -> tuple[int, ...]:
        return self.A.target

    def _rows(self, twist: int) -> list[int]:
        return [r for r, t in enumerate(self.A.target) if t == twist]

    @property
    def A1(self) -> EMatrix:
        """The linear block of A (rows into the E(2) summands)."""
        return self.A.submatrix(self._rows(2), range(len(self.A.source)))

    @property
    def A2(self) -> EMatrix:
        return self.A.submatrix(self._rows(1), range(len(self.A.source)))

    @property
    def B1(self) -> EMatrix:
        """The linear block of B (columns from the E(1) summands)."""
        return self.B.submatrix(range(len(self.B.target)), self._rows(1))

    @property
    def B2(self) -> EMatrix:
        return self.B.submatrix(range(len(self.B.target)), self._rows(2))

    def composite(self) -> EMatrix:
        return compose(self.B, self.A)

    def is_complex(self) -> bool:
        return self.composite().is_zero()

    def check_complex(self) -> None:
        product = self.composite()
        if not product.is_zero():
            raise NotAComplexError(product.nonzero_count())


# --- Betti conditions ---


def betti_of_B(B: EMatrix) -> tuple[EMatrix, BettiTable]:
    """Minimal syzygies of B and the table of steps 0..3."""
    syz = syzygy_matrix(B)
    second = syzygy_matrix(syz) if syz.source else None
    steps: list[Sequence[int]] = [B.target, B.source, syz.source]
    if second is not None:
        steps.append(second.source)
    return syz, BettiTable.from_steps(steps)


def classify_betti(table: BettiTable) -> BettiClass:
    """HIT for 4 E(3) + 5 E(4) at step 2 and no E(4) at step 3."""
    if table.step(0) != {0: 3} or table.step(1) != {1: 2, 2: 2}:
        return BettiClass.OTHER
    step2 = table.step(2)
    if step2.get(3) != 4 or set(step2) - {3, 4}:
        return BettiClass.OTHER
    if step2.get(4) == 5 and table.count(3, 4) == 0:
        return BettiClass.HIT
    if step2.get(4) == 10:
        return BettiClass.A1_10
    return BettiClass.OTHER


def build_AB(B: EMatrix) -> EMatrix:
    """The four minimal syzygies of twist 3, as A_B: 4E(3) -> 2E(2) + 2E(1)."""
    syz, table = betti_of_B(B)
    verdict = classify_betti(table)
    if verdict is not BettiClass.HIT:
        raise WrongBettiShapeError(f"B has syzygies of class {verdict.value}", table.to_dict())
    cols = [c for c, t in enumerate(syz.source) if t == 3]
    A = syz.submatrix(range(len(syz.target)), cols)
    logger.debug("monad.build_ab", source=A.source, target=A.target)
    return A


@dataclass(frozen=True)
class ABReport:
    passed: bool
    syzygy_twists: dict[int, int]

    @property
    def linear(self) -> int:
        return self.syzygy_twists.get(4, 0)

    @property
    def quadratic(self) -> int:
        return self.syzygy_twists.get(5, 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "syzygy_twists": {str(t): n for t, n in sorted(self.syzygy_twists.items())},
        }


def check_AB(A: EMatrix) -> ABReport:
    """No linear syzygies and exactly 13 quadratic ones."""
    twists = Counter(syzygy_matrix(A).source)
    passed = twists.get(4, 0) == 0 and twists.get(5, 0) == 13
    return ABReport(passed, dict(sorted(twists.items())))


# --- Tate windows ---


def tate_left_window(m: Monad, steps: int) -> list[dict[int, int]]:
    """Twist multisets of the Tate resolution from ``steps`` terms left of A to B's target.

    The list reads left to right; with ``steps=0`` it is just the monad's terms.

    Raises:
        WrongBettiShapeError: if the first term left of A is not 13 E(5).
        IncompleteWindowError: if a syzygy step comes back empty.
    """
    terms: list[dict[int, int]] = [
        dict(Counter(m.A.source)),
        dict(Counter(m.A.target)),
        dict(Counter(m.B.target)),
    ]
    current = m.A
    for step in range(1, steps + 1):
        current = syzygy_matrix(current)
        if not current.source:
            raise IncompleteWindowError(-max(current.target))
        term = dict(Counter(current.source))
        if step == 1 and term != TATE_FIRST_STEP:
            raise WrongBettiShapeError(
                "first Tate term left of A is not 13 E(5)",
                {str(t): n for t, n in sorted(term.items())},
            )
        terms.insert(0, term)
    return terms


def tate_right_step(A: EMatrix) -> EMatrix:
    """Minimal cosyzygies of A: the dual of the minimal syzygies of the dual."""
    return dualize(syzygy_matrix(dualize(A)))


# --- Section spaces and the homology embedding ---


def _spaces(twists: Sequence[int], k: int, p: int) -> list[SectionSpace]:
    return [omega_sections(a, k, p) for a in twists]


def _assert_bott_vanishing(twists: Sequence[int], k: int) -> None:
    for a in set(twists):
        for q in range(1, PROJECTIVE_DIM + 1):
            if bott_dimension(q, a, a + k):
                raise HomologyError(f"h^{q}(Omega^{a}({a + k})) is not zero")


def _ambient_blocks(coords: IntArray, spaces: Sequence[SectionSpace], p: int) -> list[IntArray]:
    """Split section coordinates by summand and expand into Lambda^i W (x) S_k."""
    field_ = get_field(p)
    out, pos = [], 0
    for space in spaces:
        block = coords[:, pos : pos + space.dim]
        out.append(field_.matmul(block, space.basis) if space.dim else
                   np.zeros((coords.shape[0], space.ambient_dim), dtype=np.int64))
        pos += space.dim
    return out


def _pairing_matrix(X: IntArray, i: int, k: int, p: int) -> IntArray:
    """Linear map psi -> <psi, x> for psi in (Lambda^i W)^* (x) S_4, one block per vector x."""
    nw, nk = dim_wedge(i), dim_S(k)
    n4, n_out = dim_S(EMBEDDING_DEGREE), dim_S(EMBEDDING_DEGREE + k)
    prod = product_table(EMBEDDING_DEGREE, k)
    vectors = X.reshape(X.shape[0], nw, nk)
    out = np.zeros((X.shape[0], n_out, nw, n4), dtype=np.int64)
    for n in range(n4):
        for m in range(nk):
            out[:, prod[n, m], :, n] += vectors[:, :, m]
    return out.reshape(X.shape[0] * n_out, nw * n4) % p


def _apply_functional(psi: IntArray, X: IntArray, i: int, k: int, p: int) -> IntArray:
    nw, nk = dim_wedge(i), dim_S(k)
    n4 = dim_S(EMBEDDING_DEGREE)
    terms = np.einsum(
        "wn,swm->snm", psi.reshape(nw, n4) % p, X.reshape(X.shape[0], nw, nk) % p
    ) % p
    out = np.zeros((X.shape[0], dim_S(EMBEDDING_DEGREE + k)), dtype=np.int64)
    np.add.at(out, (slice(None), product_table(EMBEDDING_DEGREE, k)), terms)
    return out % p


@dataclass(frozen=True, eq=False)
class EmbeddingFunctional:
    """A map from the middle term to O(4) that kills im A; one block per middle summand.

    Block b has shape (dim Lambda^{i_b} W, dim S_4).
    """

    p: int
    twists: tuple[int, ...]
    blocks: tuple[IntArray, ...]
    solution_dim: int

    def apply(self, coords: IntArray, k: int) -> IntArray:
        """Forms of degree 4 + k for middle sections given in section coordinates."""
        spaces = _spaces(self.twists, k, self.p)
        total = np.zeros((coords.shape[0], dim_S(EMBEDDING_DEGREE + k)), dtype=np.int64)
        for a, psi, X in zip(self.twists, self.blocks,
                             _ambient_blocks(coords, spaces, self.p), strict=True):
            total += _apply_functional(psi, X, a, k, self.p)
        return total % self.p


def _pairing_rows(coords: IntArray, twists: Sequence[int], k: int, p: int) -> IntArray:
    spaces = _spaces(twists, k, p)
    blocks = _ambient_blocks(coords, spaces, p)
    return np.concatenate(
        [_pairing_matrix(X, a, k, p) for a, X in zip(twists, blocks, strict=True)], axis=1
    )


def embedding_functional(m: Monad) -> EmbeddingFunctional:
    """The sheaf map I_X(4) -> O(4), found as a functional on the middle term.

    Unknowns are psi in sum_b (Lambda^{i_b} W)^* (x) S_4; the conditions say psi
    kills A(H^0(4 Omega^3(4))) in S_5. Every solution restricted to ker B(1)
    must be a multiple of one nonzero map, which is certified.
    """
    p = m.p
    if m.A.is_zero() or m.B.is_zero():
        raise HomologyError("zero differential")
    field_ = get_field(p)
    A1 = induced_section_map(m.A, 1).entries
    conditions = _pairing_rows(A1.T.copy(), m.middle, 1, p)
    solutions = kernel_array(field_, conditions)

    kernel_B = kernel_array(field_, induced_section_map(m.B, 1).entries)
    restriction = _pairing_rows(kernel_B, m.middle, 1, p)
    images = field_.matmul(restriction, solutions.T)
    rank = rank_array(field_, images)
    logger.info("monad.homology.embedding", solutions=int(solutions.shape[0]), rank=rank)
    if rank != 1:
        raise HomologyError(f"maps from the homology to O(4) span {rank} dimensions, expected 1")
    chosen = solutions[int(np.flatnonzero(images.any(axis=0))[0])]

    blocks, pos = [], 0
    for a in m.middle:
        size = dim_wedge(a) * dim_S(EMBEDDING_DEGREE)
        blocks.append(chosen[pos : pos + size].copy())
        pos += size
    return EmbeddingFunctional(p, m.middle, tuple(blocks), int(solutions.shape[0]))


@dataclass(frozen=True, eq=False)
class HomologySections:
    """H^0(I_X(4 + k)) as an RREF basis of forms in the lex-descending basis of S_{4+k}."""

    k: int
    p: int
    source_dim: int
    middle_dim: int
    target_dim: int
    kernel_dim: int
    image_dim: int
    forms: IntArray

    @property
    def degree(self) -> int:
        return EMBEDDING_DEGREE + self.k

    @property
    def dim(self) -> int:
        return int(self.forms.shape[0])

    @property
    def alternating_sum(self) -> int:
        return self.middle_dim - self.source_dim - self.target_dim

    def polys(self) -> list[DictPoly]:
        basis = monomial_basis(self.degree)
        return [{basis[j]: int(row[j]) for j in np.flatnonzero(row)} for row in self.forms]

    def dimensions(self) -> dict[str, int]:
        return {
            "source": self.source_dim,
            "middle": self.middle_dim,
            "target": self.target_dim,
            "kernel": self.kernel_dim,
            "image": self.image_dim,
            "homology": self.dim,
        }


def homology_sections(
    m: Monad, k: int, functional: EmbeddingFunctional | None = None
) -> HomologySections:
    """ker B(k) / im A(k), carried into S_{4+k}; k >= 1."""
    if k < 1:
        raise HomologyError(f"offset {k} is not supported, need k >= 1")
    m.check_complex()
    for twists in (m.A.source, m.middle, m.B.target):
        _assert_bott_vanishing(twists, k)
    p = m.p
    field_ = get_field(p)
    psi = functional or embedding_functional(m)

    A_k = induced_section_map(m.A, k).entries
    B_k = induced_section_map(m.B, k).entries
    image_dim = rank_array(field_, A_k)
    if image_dim != A_k.shape[1]:
        raise HomologyError(f"A({k}) is not injective: rank {image_dim} of {A_k.shape[1]}")
    if rank_array(field_, B_k) != B_k.shape[0]:
        raise HomologyError(f"B({k}) is not surjective")
    kernel = kernel_array(field_, B_k)
    forms, _ = row_basis_array(field_, psi.apply(kernel, k))
    expected = kernel.shape[0] - image_dim
    logger.info("monad.homology.sections", k=k, kernel=int(kernel.shape[0]), image=image_dim,
                forms=int(forms.shape[0]))
    if forms.shape[0] != expected:
        raise HomologyError(
            f"homology in degree {EMBEDDING_DEGREE + k} has dimension {expected} "
            f"but maps onto {forms.shape[0]} forms"
        )
    return HomologySections(
        k, p, A_k.shape[1], B_k.shape[1], B_k.shape[0], int(kernel.shape[0]), image_dim, forms
    )


@dataclass(frozen=True, eq=False)
class SurfaceIdeal:
    """The saturated ideal of the surface and the sections it was built from."""

    ideal: PolyIdeal
    sections: tuple[HomologySections, ...]
    functional: EmbeddingFunctional = field(repr=False)

    def quintics(self) -> PolyIdeal:
        return PolyIdeal(self.ideal.p, tuple(self.sections[0].polys()))

    def generator_degrees(self) -> dict[int, int]:
        return minimal_generators(self.ideal).generator_degrees()


def ideal_of_surface(
    m: Monad, max_deg: int = 7, rng: np.random.Generator | None = None
) -> SurfaceIdeal:
    """Saturate the ideal generated by H^0(I_X(d)) for 5 <= d <= max_deg."""
    functional = embedding_functional(m)
    sections = tuple(
        homology_sections(m, k, functional) for k in range(1, max_deg - EMBEDDING_DEGREE + 1)
    )
    gens = tuple(f for s in sections for f in s.polys())
    ideal = saturate(PolyIdeal(m.p, gens), rng=rng)
    logger.info("monad.ideal", generators=len(ideal.gens), max_deg=max_deg)
    return SurfaceIdeal(ideal, sections, functional)


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """The residual scheme of the surface inside V(H^0(I_X(5)))."""

    ideal: PolyIdeal
    dimension: int
    degree: int
    linear_forms: tuple[DictPoly, ...]

    @property
    def is_line(self) -> bool:
        return (self.dimension, self.degree) == (1, 1)


def residual_line(
    quintics: PolyIdeal, surface: PolyIdeal, rng: np.random.Generator | None = None
) -> ResidualReport:
    """(sat(quintics) : I_X), saturated; a single six-secant line gives (1, 1)."""
    residual = saturate(ideal_quotient(saturate(quintics, rng=rng), surface), rng=rng)
    dimension, degree = dimension_degree(residual)
    linear = tuple(g for g in minimal_generators(residual).gens if poly_degree(g) == 1)
    logger.info("monad.residual", dimension=dimension, degree=degree, linear=len(linear))
    return ResidualReport(residual, dimension, degree, linear)

"""Graded free E-modules, homogeneous matrices, syzygies and Betti tables.

A free module is a list of twists a_j standing for the direct sum of the
E(a_j), with E(a)_d = E_{d+a}; the generator of E(a) sits in degree -a. A
matrix M: F -> G acts by x -> Mx, (Mx)_r = sum_c M_rc ^ x_c, so entry (r, c)
is homogeneous of degree target[r] - source[c]. These maps commute with the
right action x -> x ^ e_j, and submodules are closed under that action.

Everything about M in one degree is a matrix over F_p (:func:`flatten`).
Kernels are computed degree by degree over the finite window where E lives,
and minimal generators of a kernel K in degree d are the basis of
K_d / (K_{d+1} ^ V).

Usage:
    B = EMatrix.from_strings(5, [2, 2, 1, 1], [0, 0, 0], rows)
    betti_window(B, 3).step(2)      # {3: 4, 4: 5} for a hit
    A = syzygy_matrix(B)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from monad_surfaces.algebra.extalg import (
    NGENS,
    ExtElem,
    dim_E,
    multiplication_matrix,
    random_elem,
    wedge,
)
from monad_surfaces.algebra.fields import get_field
from monad_surfaces.algebra.linalg import (
    FMatrix,
    kernel_array,
    rank_array,
    reduce_rows,
    row_basis_array,
)
from monad_surfaces.domain.exceptions import (
    DegreeOutOfRangeError,
    EmptyWindowError,
    IncompleteWindowError,
    ShapeMismatchError,
)
from monad_surfaces.logging_config import get_logger

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from monad_surfaces.algebra.fields import IntArray

logger = get_logger(__name__)


# --- Free modules ---


@dataclass(frozen=True)
class FreeEModule:
    """The free module sum_j E(a_j)."""

    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dim(self, d: int) -> int:
        return sum(dim_E(d + a) for a in self.twists)

    def offsets(self, d: int) -> list[int]:
        """Start of each summand's block inside the flattened degree-d space."""
        out, pos = [], 0
        for a in self.twists:
            out.append(pos)
            pos += dim_E(d + a)
        return out

    def active_degrees(self) -> range:
        """Degrees d with a nonzero component, from the highest down."""
        if not self.twists:
            return range(0)
        return range(-min(self.twists), -max(self.twists) - NGENS - 1, -1)

    def split(self, d: int, vec: IntArray) -> list[IntArray]:
        parts, pos = [], 0
        for a in self.twists:
            n = dim_E(d + a)
            parts.append(vec[pos : pos + n])
            pos += n
        return parts


def right_action_matrix(module: FreeEModule, d: int, j: int, p: int) -> IntArray:
    """Matrix of x -> x ^ e_j from degree d to degree d - 1 of ``module``."""
    e_j = ExtElem.generator(p, j)
    blocks = [multiplication_matrix(e_j, d + a, side="right") for a in module.twists]
    out = np.zeros((module.dim(d - 1), module.dim(d)), dtype=np.int64)
    r = c = 0
    for block in blocks:
        out[r : r + block.shape[0], c : c + block.shape[1]] = block
        r += block.shape[0]
        c += block.shape[1]
    return out


# --- Matrices ---


@dataclass(frozen=True, eq=False)
class EMatrix:
    """Homogeneous matrix sum_c E(source[c]) -> sum_r E(target[r])."""

    p: int
    source: tuple[int, ...]
    target: tuple[int, ...]
    entries: tuple[tuple[ExtElem, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "entries", tuple(tuple(row) for row in self.entries))
        if len(self.entries) != len(self.target) or any(
            len(row) != len(self.source) for row in self.entries
        ):
            raise ShapeMismatchError(
                f"Entry grid does not match {len(self.target)}x{len(self.source)} twists"
            )
        for r, row in enumerate(self.entries):
            for c, entry in enumerate(row):
                expected = self.target[r] - self.source[c]
                if entry.degree is not None and entry.degree != expected:
                    raise DegreeOutOfRangeError(entry.degree, expected, expected)

    # --- Constructors ---

    @classmethod
    def zero(cls, p: int, source: Sequence[int], target: Sequence[int]) -> EMatrix:
        return cls(p, tuple(source), tuple(target), tuple(
            tuple(ExtElem.zero(p) for _ in source) for _ in target
        ))

    @classmethod
    def identity(cls, p: int, twists: Sequence[int]) -> EMatrix:
        n = len(twists)
        rows = tuple(
            tuple(ExtElem.monomial(p, 0) if r == c else ExtElem.zero(p) for c in range(n))
            for r in range(n)
        )
        return cls(p, tuple(twists), tuple(twists), rows)

    @classmethod
    def from_strings(
        cls, p: int, source: Sequence[int], target: Sequence[int], rows: Sequence[Sequence[str]]
    ) -> EMatrix:
        return cls(p, tuple(source), tuple(target), tuple(
            tuple(ExtElem.parse(s, p) for s in row) for row in rows
        ))

    @classmethod
    def random(
        cls, p: int, source: Sequence[int], target: Sequence[int], rng: np.random.Generator
    ) -> EMatrix:
        return cls(p, tuple(source), tuple(target), tuple(
            tuple(random_elem(p, b - a, rng) if -NGENS <= b - a <= 0 else ExtElem.zero(p)
                  for a in source)
            for b in target
        ))

    # --- Accessors ---

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target), len(self.source)

    @property
    def source_module(self) -> FreeEModule:
        return FreeEModule(self.source)

    @property
    def target_module(self) -> FreeEModule:
        return FreeEModule(self.target)

    def __getitem__(self, rc: tuple[int, int]) -> ExtElem:
        return self.entries[rc[0]][rc[1]]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, EMatrix)
            and (self.p, self.source, self.target) == (other.p, other.source, other.target)
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.p, self.source, self.target, self.entries))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def nonzero_count(self) -> int:
        return sum(not e.is_zero() for row in self.entries for e in row)

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> EMatrix:
        return EMatrix(
            self.p,
            tuple(self.source[c] for c in cols),
            tuple(self.target[r] for r in rows),
            tuple(tuple(self.entries[r][c] for c in cols) for r in rows),
        )

    def __add__(self, other: EMatrix) -> EMatrix:
        if (self.source, self.target) != (other.source, other.target):
            raise ShapeMismatchError("Cannot add matrices between different modules")
        return EMatrix(self.p, self.source, self.target, tuple(
            tuple(a + b for a, b in zip(ra, rb, strict=True))
            for ra, rb in zip(self.entries, other.entries, strict=True)
        ))

    def scale(self, c: int) -> EMatrix:
        return EMatrix(self.p, self.source, self.target, tuple(
            tuple(e.scale(c) for e in row) for row in self.entries
        ))


def hconcat(left: EMatrix, right: EMatrix) -> EMatrix:
    if left.target != right.target:
        raise ShapeMismatchError(f"Targets differ: {left.target} vs {right.target}")
    return EMatrix(left.p, left.source + right.source, left.target, tuple(
        a + b for a, b in zip(left.entries, right.entries, strict=True)
    ))


def vconcat(top: EMatrix, bottom: EMatrix) -> EMatrix:
    if top.source != bottom.source:
        raise ShapeMismatchError(f"Sources differ: {top.source} vs {bottom.source}")
    return EMatrix(top.p, top.source, top.target + bottom.target, top.entries + bottom.entries)


# --- Operations ---


def compose(M: EMatrix, N: EMatrix) -> EMatrix:
    """The matrix of x -> M(Nx)."""
    if N.target != M.source:
        raise ShapeMismatchError(f"Cannot compose: {N.target} is not {M.source}")
    p = M.p
    rows = []
    for r in range(len(M.target)):
        row = []
        for c in range(len(N.source)):
            acc = ExtElem.zero(p)
            for k in range(len(M.source)):
                acc = acc + wedge(M.entries[r][k], N.entries[k][c])
            row.append(acc)
        rows.append(tuple(row))
    return EMatrix(p, N.source, M.target, tuple(rows))


def flatten_array(M: EMatrix, d: int) -> IntArray:
    src, tgt = M.source_module, M.target_module
    out = np.zeros((tgt.dim(d), src.dim(d)), dtype=np.int64)
    row_off, col_off = tgt.offsets(d), src.offsets(d)
    for r, b in enumerate(M.target):
        if not dim_E(d + b):
            continue
        for c, a in enumerate(M.source):
            entry = M.entries[r][c]
            if entry.is_zero() or not dim_E(d + a):
                continue
            block = multiplication_matrix(entry, d + a)
            r0, c0 = row_off[r], col_off[c]
            out[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] = block
    return out


def flatten(M: EMatrix, d: int) -> FMatrix:
    """Degree-d component of M as a field matrix, sum_c E_{d+a_c} -> sum_r E_{d+b_r}."""
    return FMatrix(get_field(M.p), flatten_array(M, d))


def flatten_rank(M: EMatrix, d: int) -> int:
    return rank_array(get_field(M.p), flatten_array(M, d))


@dataclass(frozen=True)
class GradedSubmoduleWindow:
    """Per-degree RREF bases of a submodule K of a free module over a degree window."""

    p: int
    module: FreeEModule
    bases: Mapping[int, IntArray] = field(default_factory=dict)
    pivots: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def dim(self, d: int) -> int:
        basis = self.bases.get(d)
        return 0 if basis is None else int(basis.shape[0])

    def degrees(self) -> list[int]:
        return sorted(self.bases, reverse=True)


def kernel_window(M: EMatrix, degrees: Iterable[int] | None = None) -> GradedSubmoduleWindow:
    """Kernel of M degree by degree; the default window is every active source degree."""
    field_ = get_field(M.p)
    window = list(degrees) if degrees is not None else list(M.source_module.active_degrees())
    bases: dict[int, IntArray] = {}
    pivots: dict[int, tuple[int, ...]] = {}
    for d in window:
        kernel = kernel_array(field_, flatten_array(M, d))
        bases[d], pivots[d] = row_basis_array(field_, kernel)
    return GradedSubmoduleWindow(M.p, M.source_module, bases, pivots)


def minimal_generators(K: GradedSubmoduleWindow) -> dict[int, IntArray]:
    """Representatives of a basis of K_d / (K_{d+1} ^ V) for every degree in the window.

    Returns a map degree -> array of generator vectors (one per row); degrees
    without generators are omitted.
    """
    field_ = get_field(K.p)
    result: dict[int, IntArray] = {}
    for d in K.degrees():
        if not K.dim(d):
            continue
        if d + 1 in K.bases:
            upper = K.bases[d + 1]
        elif K.module.dim(d + 1) == 0:
            upper = np.zeros((0, 0), dtype=np.int64)
        else:
            raise IncompleteWindowError(d)
        if upper.shape[0]:
            images = np.concatenate(
                [field_.matmul(upper, right_action_matrix(K.module, d + 1, j, K.p).T)
                 for j in range(NGENS)],
                axis=0,
            )
            image_basis, image_pivots = row_basis_array(field_, images)
            residual = reduce_rows(field_, K.bases[d], image_basis, image_pivots)
        else:
            residual = K.bases[d]
        generators, _ = row_basis_array(field_, residual)
        if generators.shape[0]:
            result[d] = generators
    return result


def syzygy_matrix(M: EMatrix) -> EMatrix:
    """The minimal syzygies of M as a matrix into M's source, twists ascending."""
    generators = minimal_generators(kernel_window(M))
    columns: list[tuple[int, list[ExtElem]]] = []
    for d in sorted(generators, reverse=True):
        for vec in generators[d]:
            parts = M.source_module.split(d, vec)
            col = [
                ExtElem.from_vector(M.p, d + a, part) if dim_E(d + a) else ExtElem.zero(M.p)
                for a, part in zip(M.source, parts, strict=True)
            ]
            columns.append((-d, col))
    new_source = tuple(t for t, _ in columns)
    rows = tuple(
        tuple(col[r] for _, col in columns) for r in range(len(M.source))
    )
    logger.debug("emod.syzygy", source=M.source, syzygy_twists=new_source)
    return EMatrix(M.p, new_source, M.source, rows)


def dualize(M: EMatrix) -> EMatrix:
    """Transpose with reversed entries between the negated modules.

    This is contravariant, dualize(M o N) = dualize(N) o dualize(M), and an
    involution.
    """
    return EMatrix(
        M.p,
        tuple(-b for b in M.target),
        tuple(-a for a in M.source),
        tuple(
            tuple(M.entries[r][c].reverse() for r in range(len(M.target)))
            for c in range(len(M.source))
        ),
    )


# --- Betti tables ---


@dataclass(frozen=True)
class BettiTable:
    """Generator counts keyed by (step, twist)."""

    counts: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", {k: v for k, v in self.counts.items() if v})

    def count(self, step: int, twist: int) -> int:
        return self.counts.get((step, twist), 0)

    def step(self, s: int) -> dict[int, int]:
        return {t: n for (st, t), n in sorted(self.counts.items()) if st == s}

    @property
    def length(self) -> int:
        return max((s for s, _ in self.counts), default=-1)

    def to_dict(self) -> dict[str, dict[str, int]]:
        return {
            str(s): {str(t): n for t, n in self.step(s).items()} for s in range(self.length + 1)
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Mapping[str, int]]) -> BettiTable:
        return cls({(int(s), int(t)): int(n) for s, row in data.items() for t, n in row.items()})

    @classmethod
    def from_steps(cls, steps: Sequence[Sequence[int]]) -> BettiTable:
        counts: Counter[tuple[int, int]] = Counter()
        for s, twists in enumerate(steps):
            for t in twists:
                counts[(s, t)] += 1
        return cls(dict(counts))

    def render(self) -> str:
        """Row/column layout with row = step - twist and one column per step."""
        if not self.counts:
            return "(empty)"
        steps = range(self.length + 1)
        rows = sorted({s - t for s, t in self.counts})
        width = max(len(str(n)) for n in self.counts.values()) + 1
        label = max(len(f"{r}:") for r in [*rows, "total"]) + 1
        lines = [" " * label + "".join(f"{s:>{width}}" for s in steps)]
        totals = [sum(self.step(s).values()) for s in steps]
        lines.append(f"{'total:':>{label}}" + "".join(f"{n:>{width}}" for n in totals))
        for r in rows:
            cells = [self.count(s, s - r) for s in steps]
            lines.append(
                f"{str(r) + ':':>{label}}" + "".join(f"{n or '.':>{width}}" for n in cells)
            )
        return "\n".join(lines)


def betti_window(M: EMatrix, steps: int) -> BettiTable:
    """Twists of M's target (step 0), source (step 1) and iterated minimal syzygies."""
    if steps < 1:
        raise EmptyWindowError(steps)
    twist_lists: list[Sequence[int]] = [M.target, M.source]
    current = M
    for _ in range(2, steps + 1):
        current = syzygy_matrix(current)
        twist_lists.append(current.source)
        if not current.source:
            break
    return BettiTable.from_steps(twist_lists)

"""Dense exact linear algebra over the fields of :mod:`fields`.

Gaussian elimination uses first-nonzero pivoting, so the reduced row-echelon
form of a matrix is a deterministic function of its entries. Most callers
work on raw ``int64`` arrays through the ``*_array`` helpers; :class:`FMatrix`
wraps an array together with its field for the public operations.

Usage:
    F = get_field(5)
    M = FMatrix.from_rows(F, [[1, 2], [2, 4]])
    R, pivots = rref(M)        # pivots == (0,)
    len(kernel_basis(M))       # 1
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from monad_surfaces.algebra.fields import FiniteField, IntArray
from monad_surfaces.domain.exceptions import InconsistentSystemError, ShapeMismatchError

if TYPE_CHECKING:
    from collections.abc import Sequence


@dataclass(frozen=True, eq=False)
class FMatrix:
    """A dense matrix over a finite field."""

    field: FiniteField
    entries: IntArray

    def __post_init__(self) -> None:
        if self.entries.ndim != 2:
            raise ShapeMismatchError(f"FMatrix needs a 2-d array, got shape {self.entries.shape}")

    @classmethod
    def from_rows(cls, field: FiniteField, rows: Sequence[Sequence[int]]) -> FMatrix:
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), -1) if rows else np.zeros(
            (0, 0), dtype=np.int64
        )
        return cls(field, field.reduce(arr))

    @classmethod
    def zeros(cls, field: FiniteField, rows: int, cols: int) -> FMatrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> FMatrix:
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    @property
    def T(self) -> FMatrix:
        return FMatrix(self.field, self.entries.T.copy())

    def __matmul__(self, other: FMatrix) -> FMatrix:
        if self.cols != other.rows:
            raise ShapeMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        return FMatrix(self.field, self.field.matmul(self.entries, other.entries))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FMatrix)
            and self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.entries.shape, self.entries.tobytes()))

    def is_zero(self) -> bool:
        return not bool(np.any(self.entries))


# --- Array-level kernels ---


def rref_array(field: FiniteField, a: IntArray) -> tuple[IntArray, tuple[int, ...]]:
    """Reduced row-echelon form of ``a`` and its pivot columns.

    Zero rows are kept at the bottom, so the output has the shape of ``a``.
    """
    m = np.array(a, dtype=np.int64, copy=True)
    n_rows, n_cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nonzero = np.flatnonzero(m[r:, c])
        if nonzero.size == 0:
            continue
        i = r + int(nonzero[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r, c:] = field.mul(m[r, c:], field.inv(m[r, c]))
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        if others.size:
            factors = m[others, c][:, None]
            m[others, c:] = field.sub(m[others, c:], field.mul(factors, m[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rank_array(field: FiniteField, a: IntArray) -> int:
    if a.size == 0:
        return 0
    return len(rref_array(field, a)[1])


def kernel_array(field: FiniteField, a: IntArray) -> IntArray:
    """Basis of the right null space, one vector per row, in free-column order."""
    n_cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n_cols, dtype=np.int64)
    reduced, pivots = rref_array(field, a)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = np.zeros((len(free), n_cols), dtype=np.int64)
    if not free:
        return basis
    basis[np.arange(len(free)), free] = 1
    if pivots:
        basis[:, list(pivots)] = field.neg(reduced[: len(pivots)][:, free].T)
    return basis


def row_basis_array(field: FiniteField, a: IntArray) -> tuple[IntArray, tuple[int, ...]]:
    """The nonzero rows of the RREF of ``a`` and their pivots."""
    if a.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64), ()
    reduced, pivots = rref_array(field, a)
    return reduced[: len(pivots)], pivots


def reduce_rows(
    field: FiniteField, vecs: IntArray, basis: IntArray, pivots: Sequence[int]
) -> IntArray:
    """Reduce each row of ``vecs`` against an RREF row basis.

    The result vanishes at every pivot column; a row reduces to zero exactly
    when it lies in the row space of ``basis``.
    """
    if not len(pivots):
        return np.array(vecs, dtype=np.int64, copy=True)
    coeffs = vecs[:, list(pivots)]
    return field.sub(vecs, field.matmul(coeffs, basis))


def solve_array(field: FiniteField, a: IntArray, b: IntArray) -> IntArray | None:
    n_rows, n_cols = a.shape
    augmented = np.concatenate([a, b.reshape(n_rows, 1)], axis=1)
    reduced, pivots = rref_array(field, augmented)
    if pivots and pivots[-1] == n_cols:
        return None
    x = np.zeros(n_cols, dtype=np.int64)
    for row, col in enumerate(pivots):
        x[col] = reduced[row, n_cols]
    return x


def random_array(field: FiniteField, shape: tuple[int, ...], rng: np.random.Generator) -> IntArray:
    return rng.integers(0, field.order, size=shape, dtype=np.int64)


def random_invertible_array(field: FiniteField, n: int, rng: np.random.Generator) -> IntArray:
    while True:
        candidate = random_array(field, (n, n), rng)
        if rank_array(field, candidate) == n:
            return candidate


def inverse_array(field: FiniteField, a: IntArray) -> IntArray:
    n = a.shape[0]
    reduced, pivots = rref_array(field, np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1))
    if pivots[:n] != tuple(range(n)):
        raise InconsistentSystemError(n, n)
    return reduced[:, n:]


# --- Public operations ---


def rref(M: FMatrix) -> tuple[FMatrix, tuple[int, ...]]:
    reduced, pivots = rref_array(M.field, M.entries)
    return FMatrix(M.field, reduced), pivots


def rank(M: FMatrix) -> int:
    return rank_array(M.field, M.entries)


def kernel_basis(M: FMatrix) -> list[IntArray]:
    """Basis of {x : Mx = 0}; ``len(kernel_basis(M)) == M.cols - rank(M)``."""
    return list(kernel_array(M.field, M.entries))


def solve(M: FMatrix, b: IntArray, *, strict: bool = False) -> IntArray | None:
    """A particular solution of Mx = b, or None when the system is inconsistent.

    With ``strict=True`` an inconsistent system raises InconsistentSystemError.
    """
    vec = M.field.reduce(np.asarray(b, dtype=np.int64))
    if vec.shape != (M.rows,):
        raise ShapeMismatchError(f"Right-hand side of length {vec.shape} for {M.rows} rows")
    x = solve_array(M.field, M.entries, vec)
    if x is None and strict:
        raise InconsistentSystemError(M.rows, M.cols)
    return x

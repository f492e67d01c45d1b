"""Global sections of the twisted cotangent bundles on P^4.

H^0(Omega^i(i+k)) is realized as the kernel of the Koszul differential

    kappa: Lambda^i W (x) S_k -> Lambda^{i-1} W (x) S_{k+1},
    x_S (x) f  ->  sum_j contract(e_j, x_S) (x) x_j f,

with ambient coordinates ordered as (wedge index) * dim S_k + (monomial index).
An exterior element omega in Lambda^m V acts on these spaces by contraction in
the Lambda W factor; this commutes with kappa up to the sign (-1)^m, so it
maps sections to sections, and it is how a homogeneous E-matrix induces a
map between section spaces (summand E(a) <-> Omega^a(a)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import TYPE_CHECKING

import numpy as np

from monad_surfaces.algebra.extalg import (
    CONTRACT_SIGN,
    NGENS,
    basis_index,
    contraction_matrix,
    dim_wedge,
    dual_basis,
)
from monad_surfaces.algebra.fields import get_field
from monad_surfaces.algebra.linalg import FMatrix, kernel_array, row_basis_array
from monad_surfaces.algebra.monomials import dim_S, variable_table
from monad_surfaces.domain.exceptions import UnsupportedSectionError

if TYPE_CHECKING:
    from monad_surfaces.algebra.emod import EMatrix
    from monad_surfaces.algebra.fields import IntArray

PROJECTIVE_DIM = NGENS - 1


# --- Bott formula ---


def bott_h0(i: int, t: int) -> int:
    """h^0(P^4, Omega^i(t))."""
    if not 0 <= i <= PROJECTIVE_DIM:
        return 0
    if i == 0:
        return comb(t + 4, 4) if t >= 0 else 0
    if t <= i:
        return 0
    return comb(t + 4 - i, t) * comb(t - 1, i)


def bott_dimension(q: int, i: int, t: int) -> int:
    """h^q(P^4, Omega^i(t)), using Serre duality for q = 4."""
    if q == 0:
        return bott_h0(i, t)
    if q == PROJECTIVE_DIM:
        return bott_h0(PROJECTIVE_DIM - i, -t)
    if 0 < q < PROJECTIVE_DIM:
        return 1 if (q == i and t == 0) else 0
    return 0


# --- Section spaces ---


@lru_cache(maxsize=64)
def koszul_matrix(i: int, k: int, p: int) -> IntArray:
    """Matrix of kappa on Lambda^i W (x) S_k, mod p."""
    n_src, n_mon = dim_wedge(i), dim_S(k)
    n_tgt, n_mon_next = dim_wedge(i - 1), dim_S(k + 1)
    out = np.zeros((n_tgt * n_mon_next, n_src * n_mon), dtype=np.int64)
    if i == 0 or not n_src:
        return out
    target = basis_index(-(i - 1))
    mult = variable_table(k)
    cols = np.arange(n_mon)
    for s_idx, s in enumerate(dual_basis(i)):
        for j in range(NGENS):
            sign = int(CONTRACT_SIGN[1 << j, s])
            if not sign:
                continue
            row_base = target[s & ~(1 << j)] * n_mon_next
            out[row_base + mult[j], s_idx * n_mon + cols] += sign
    return out % p


@dataclass(frozen=True, eq=False)
class SectionSpace:
    """An RREF basis of H^0(Omega^i(i+k)) inside Lambda^i W (x) S_k."""

    i: int
    k: int
    p: int
    basis: IntArray
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def ambient_dim(self) -> int:
        return dim_wedge(self.i) * dim_S(self.k)

    def coordinates(self, vecs: IntArray) -> IntArray:
        """Coordinates of row vectors lying in the span of the basis."""
        return np.asarray(vecs)[:, list(self.pivots)]


@lru_cache(maxsize=64)
def omega_sections(i: int, k: int, p: int) -> SectionSpace:
    if k < 0 or not 0 <= i <= PROJECTIVE_DIM:
        raise UnsupportedSectionError(i, k)
    field_ = get_field(p)
    ambient = dim_wedge(i) * dim_S(k)
    if i == 0:
        basis = np.eye(ambient, dtype=np.int64)
        pivots = tuple(range(ambient))
    else:
        kernel = kernel_array(field_, koszul_matrix(i, k, p))
        basis, pivots = row_basis_array(field_, kernel)
    basis.flags.writeable = False
    return SectionSpace(i, k, p, basis, pivots)


def contraction_operator(omega_matrix: IntArray, k: int) -> IntArray:
    """kron(C, I_{S_k}) for a contraction matrix C on the wedge factor."""
    return np.kron(omega_matrix, np.eye(dim_S(k), dtype=np.int64))


def induced_section_map(M: EMatrix, k: int) -> FMatrix:
    """The map on sections at offset k induced by a homogeneous E-matrix.

    Block (r, c) is contraction by M[r, c] from H^0(Omega^{a_c}(a_c + k)) to
    H^0(Omega^{b_r}(b_r + k)), expressed in the section bases.
    """
    p = M.p
    field_ = get_field(p)
    sources = [omega_sections(a, k, p) for a in M.source]
    targets = [omega_sections(b, k, p) for b in M.target]
    out = np.zeros((sum(t.dim for t in targets), sum(s.dim for s in sources)), dtype=np.int64)
    row = 0
    for r, tgt in enumerate(targets):
        col = 0
        for c, src in enumerate(sources):
            entry = M.entries[r][c]
            if not entry.is_zero() and src.dim and tgt.dim:
                op = contraction_operator(contraction_matrix(entry, src.i), k)
                images = field_.matmul(src.basis, op.T)
                out[row : row + tgt.dim, col : col + src.dim] = tgt.coordinates(images).T
            col += src.dim
        row += tgt.dim
    return FMatrix(field_, out % p)

"""Monomial bases of the homogeneous parts S_d of S = F[x0, ..., x4].

Bases are listed in descending lexicographic order of exponent vectors
(x0^d first). Index dictionaries and multiplication tables are cached, so the
same tuple objects are shared by bott, monad and polyring.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from sympy import symbols
from sympy.polys.monomials import itermonomials, monomial_mul

from monad_surfaces.algebra.fields import IntArray

NVARS = 5

Monomial = tuple[int, ...]


@lru_cache(maxsize=64)
def monomial_basis(d: int, n: int = NVARS) -> tuple[Monomial, ...]:
    if d < 0:
        return ()
    gens = symbols(f"x0:{n}")
    exps = {
        tuple(int(m.as_poly(*gens).degree(g)) for g in gens)
        for m in itermonomials(list(gens), d, d)
    }
    return tuple(sorted(exps, reverse=True))


@lru_cache(maxsize=64)
def monomial_index(d: int, n: int = NVARS) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(d, n))}


def dim_S(d: int, n: int = NVARS) -> int:
    return len(monomial_basis(d, n))


@lru_cache(maxsize=64)
def product_table(d1: int, d2: int, n: int = NVARS) -> IntArray:
    """``table[i, j]`` is the index in S_{d1+d2} of basis[d1][i] * basis[d2][j]."""
    left = monomial_basis(d1, n)
    right = monomial_basis(d2, n)
    target = monomial_index(d1 + d2, n)
    table = np.empty((len(left), len(right)), dtype=np.int64)
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            table[i, j] = target[monomial_mul(a, b)]
    table.flags.writeable = False
    return table


@lru_cache(maxsize=8)
def variable_table(d: int, n: int = NVARS) -> IntArray:
    """``table[j, m]``: index in S_{d+1} of x_j times the m-th monomial of S_d."""
    return product_table(1, d, n)

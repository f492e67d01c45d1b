"""Degree-by-degree Groebner basis engine for homogeneous ideals over F_p.

Polynomials are plain dicts ``{exponent tuple: coefficient in [0, p)}`` and
monomials are ordered by degree reverse lexicographic order. The engine uses
the normal selection strategy: in each round every critical pair of the
lowest degree d is processed together with the input generators of degree
d, and the reduction is done as one matrix over F_p (F4-style symbolic
preprocessing, then RREF with columns in descending monomial order). Pairs
are filtered with the Gebauer-Moeller criteria.

Because the input is homogeneous, after round d the basis is correct up to
degree d. A pair budget and a degree cap make runs fail with
GroebnerBudgetExceededError instead of hanging, and ``stop_when_full`` ends
a run as soon as some degree of the ideal is all of S_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import TYPE_CHECKING

import numpy as np
from sympy.polys.monomials import monomial_div, monomial_lcm, monomial_mul
from sympy.polys.orderings import grevlex

from monad_surfaces.algebra.fields import get_field
from monad_surfaces.algebra.linalg import row_basis_array
from monad_surfaces.domain.exceptions import GroebnerBudgetExceededError, NonHomogeneousError
from monad_surfaces.logging_config import get_logger

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

Monomial = tuple[int, ...]
DictPoly = dict[Monomial, int]

logger = get_logger(__name__)


@dataclass(frozen=True)
class GroebnerResult:
    """Outcome of a run.

    ``complete`` is False only when the run stopped early because the ideal
    contains every form of degree ``full_degree``; the basis is then a
    truncated one.
    """

    basis: tuple[DictPoly, ...]
    complete: bool
    full_degree: int | None
    pairs_processed: int

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [leading_monomial(f) for f in self.basis]

    @property
    def max_degree(self) -> int:
        return max((sum(leading_monomial(f)) for f in self.basis), default=0)


# --- Polynomial helpers ---


def leading_monomial(f: DictPoly) -> Monomial:
    return max(f, key=grevlex)


def poly_degree(f: DictPoly) -> int:
    return sum(next(iter(f)))


def is_homogeneous(f: DictPoly) -> bool:
    return len({sum(m) for m in f}) <= 1


def mul_term(f: DictPoly, m: Monomial, p: int, c: int = 1) -> DictPoly:
    return {monomial_mul(k, m): v * c % p for k, v in f.items()}


def normalize(f: DictPoly, p: int) -> DictPoly:
    return {m: c % p for m, c in f.items() if c % p}


def monic(f: DictPoly, p: int) -> DictPoly:
    inv = pow(f[leading_monomial(f)], -1, p)
    return {m: c * inv % p for m, c in f.items()}


def monomials_of_degree(d: int, n: int) -> Iterable[Monomial]:
    for combo in combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


def _divisor(m: Monomial, lms: Sequence[Monomial]) -> int | None:
    for i, lm in enumerate(lms):
        if monomial_div(m, lm) is not None:
            return i
    return None


# --- Linear algebra step ---


def _reduce_rows(
    rows: list[DictPoly],
    done: set[Monomial],
    reducers: Sequence[DictPoly],
    reducer_lms: Sequence[Monomial],
    p: int,
) -> list[DictPoly]:
    """Symbolic preprocessing followed by RREF; returns the nonzero reduced rows."""
    if not rows:
        return []
    seen = set(done)
    queue = [m for row in rows for m in row if m not in seen]
    all_rows = list(rows)
    while queue:
        m = queue.pop()
        if m in seen:
            continue
        seen.add(m)
        i = _divisor(m, reducer_lms)
        if i is None:
            continue
        reducer = mul_term(reducers[i], monomial_div(m, reducer_lms[i]), p)
        all_rows.append(reducer)
        queue.extend(mm for mm in reducer if mm not in seen)

    columns = sorted({m for row in all_rows for m in row}, key=grevlex, reverse=True)
    index = {m: j for j, m in enumerate(columns)}
    matrix = np.zeros((len(all_rows), len(columns)), dtype=np.int64)
    for r, row in enumerate(all_rows):
        for m, c in row.items():
            matrix[r, index[m]] = c
    basis, _ = row_basis_array(get_field(p), matrix)
    return [
        {columns[j]: int(basis[r, j]) for j in np.flatnonzero(basis[r])}
        for r in range(basis.shape[0])
    ]


# --- Gebauer-Moeller update ---


def _update(
    G: set[int], B: set[tuple[int, int]], ih: int, lms: Sequence[Monomial]
) -> tuple[set[int], set[tuple[int, int]]]:
    mh = lms[ih]

    # new pairs (h, g): keep one pair per minimal lcm
    C = set(G)
    D: set[tuple[int, int]] = set()
    while C:
        ig = C.pop()
        mg = lms[ig]
        lcm_hg = monomial_lcm(mh, mg)

        def lcm_divides(ip: int, lcm_hg: Monomial = lcm_hg) -> bool:
            return monomial_div(lcm_hg, monomial_lcm(mh, lms[ip])) is not None

        if monomial_mul(mh, mg) == lcm_hg or (
            not any(lcm_divides(ipx) for ipx in C) and not any(lcm_divides(pr[1]) for pr in D)
        ):
            D.add((ih, ig))

    # coprime leading monomials: the pair reduces to zero
    E = {(ih, ig) for ih, ig in D if monomial_mul(mh, lms[ig]) != monomial_lcm(mh, lms[ig])}

    # old pairs survive unless h's leading monomial strictly divides their lcm
    B_new = set()
    for ig1, ig2 in B:
        mg1, mg2 = lms[ig1], lms[ig2]
        lcm12 = monomial_lcm(mg1, mg2)
        if (
            monomial_div(lcm12, mh) is None
            or monomial_lcm(mg1, mh) == lcm12
            or monomial_lcm(mg2, mh) == lcm12
        ):
            B_new.add((ig1, ig2))
    B_new |= E

    G_new = {ig for ig in G if monomial_div(lms[ig], mh) is None}
    G_new.add(ih)
    return G_new, B_new


def _is_full(lms: Sequence[Monomial], d: int, n: int) -> bool:
    """True when every monomial of degree d is divisible by some leading monomial."""
    pure = {i for lm in lms for i in range(n) if sum(lm) == lm[i]}
    if len(pure) < n:
        return False
    return all(_divisor(m, lms) is not None for m in monomials_of_degree(d, n))


def _interreduce(polys: list[DictPoly], p: int) -> list[DictPoly]:
    lms = [leading_monomial(f) for f in polys]
    keep = []
    for i, f in enumerate(polys):
        redundant = any(
            monomial_div(lms[i], lms[j]) is not None and (lms[i] != lms[j] or j < i)
            for j in range(len(polys))
            if j != i
        )
        if not redundant:
            keep.append(f)
    reduced: list[DictPoly] = []
    reduced_lms: list[Monomial] = []
    for d in sorted({poly_degree(f) for f in keep}):
        block = [f for f in keep if poly_degree(f) == d]
        block_lms = {leading_monomial(f) for f in block}
        rows = _reduce_rows(block, set(), reduced, reduced_lms, p)
        fresh = [r for r in rows if leading_monomial(r) in block_lms]
        reduced.extend(fresh)
        reduced_lms.extend(leading_monomial(r) for r in fresh)
    return sorted(reduced, key=lambda f: grevlex(leading_monomial(f)))


# --- Driver ---


def groebner_basis(
    polys: Iterable[DictPoly],
    p: int,
    *,
    pair_budget: int = 200_000,
    max_degree: int = 24,
    stop_when_full: bool = False,
) -> GroebnerResult:
    """Reduced Groebner basis (grevlex) of the ideal generated by ``polys``."""
    gens = [normalize(f, p) for f in polys]
    gens = [f for f in gens if f]
    if not gens:
        return GroebnerResult((), True, None, 0)
    n = len(next(iter(gens[0])))
    inputs: dict[int, list[DictPoly]] = {}
    for f in gens:
        if not is_homogeneous(f):
            raise NonHomogeneousError(str(f))
        inputs.setdefault(poly_degree(f), []).append(f)

    basis: list[DictPoly] = []
    lms: list[Monomial] = []
    G: set[int] = set()
    B: set[tuple[int, int]] = set()
    processed = 0

    while B or inputs:
        pair_degrees = {pair: sum(monomial_lcm(lms[pair[0]], lms[pair[1]])) for pair in B}
        d = min([*pair_degrees.values(), *inputs])
        if d > max_degree:
            raise GroebnerBudgetExceededError(processed, d)
        selected = sorted(pair for pair, deg in pair_degrees.items() if deg == d)
        B.difference_update(selected)
        processed += len(selected)
        if processed > pair_budget:
            raise GroebnerBudgetExceededError(processed, d)

        rows = inputs.pop(d, [])
        lcms: set[Monomial] = set()
        for i, j in selected:
            lcm = monomial_lcm(lms[i], lms[j])
            lcms.add(lcm)
            rows.append(mul_term(basis[i], monomial_div(lcm, lms[i]), p))
            rows.append(mul_term(basis[j], monomial_div(lcm, lms[j]), p))

        active = sorted(G)
        active_lms = [lms[i] for i in active]
        reduced = _reduce_rows(rows, lcms, [basis[i] for i in active], active_lms, p)
        new = [h for h in reduced if _divisor(leading_monomial(h), active_lms) is None]
        new.sort(key=lambda h: grevlex(leading_monomial(h)))
        for h in new:
            basis.append(h)
            lms.append(leading_monomial(h))
            G, B = _update(G, B, len(basis) - 1, lms)

        logger.debug("groebner.degree", degree=d, pairs=len(selected), new=len(new), size=len(G))
        if stop_when_full and _is_full([lms[i] for i in G], d, n):
            logger.debug("groebner.full", degree=d, pairs_processed=processed)
            return GroebnerResult(
                tuple(basis[i] for i in sorted(G)), False, d, processed
            )

    result = _interreduce([basis[i] for i in sorted(G)], p)
    return GroebnerResult(tuple(result), True, None, processed)

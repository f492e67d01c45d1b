"""Homogeneous ideals in S = F_p[x0, ..., x4] and the operations built on them.

Polynomials are sympy ``PolyElement`` objects of ``ring("x0:5", GF(p), grevlex)``
at the API boundary and plain exponent dicts inside the Groebner engine
(:mod:`monad_surfaces.algebra.groebner`). On top of Groebner bases this
module provides Hilbert series and polynomials (from the leading-term ideal),
dimension and degree, saturation, ideal quotients, Jacobian minors and the
smoothness certificate.

Usage:
    I = PolyIdeal.from_strings(5, ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"])
    dimension_degree(I)              # (1, 3)
    hilbert_polynomial(I).polynomial  # 3*t + 1
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import TYPE_CHECKING, Any

import numpy as np
import sympy
from sympy import GF, ZZ, Symbol
from sympy.combinatorics import Permutation
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing, ring
from tenacity import retry, retry_if_exception_type, stop_after_attempt

from monad_surfaces.algebra.fields import get_field, projective_points
from monad_surfaces.algebra.groebner import (
    DictPoly,
    GroebnerResult,
    Monomial,
    groebner_basis,
    is_homogeneous,
    leading_monomial,
    monomials_of_degree,
    poly_degree,
)
from monad_surfaces.algebra.linalg import (
    inverse_array,
    kernel_array,
    random_invertible_array,
    rank_array,
    reduce_rows,
    row_basis_array,
)
from monad_surfaces.algebra.monomials import NVARS
from monad_surfaces.config import get_settings
from monad_surfaces.domain.enums import Verdict
from monad_surfaces.domain.exceptions import (
    GroebnerBudgetExceededError,
    NonHomogeneousError,
    ParseError,
    SaturationError,
)
from monad_surfaces.logging_config import get_logger

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from monad_surfaces.algebra.fields import FiniteField, IntArray

logger = get_logger(__name__)

SATURATION_ATTEMPTS = 8

_TRING, _T = ring("t", ZZ)
HP_VARIABLE = Symbol("t")


# --- Rings and conversions ---


@lru_cache(maxsize=16)
def poly_ring(p: int, n: int = NVARS) -> PolyRing:
    R, *_ = ring(f"x0:{n}", GF(p), grevlex)
    return R


def to_dict(f: PolyElement, p: int) -> DictPoly:
    return {tuple(m): int(c) % p for m, c in f.items() if int(c) % p}


def from_dict(f: DictPoly, p: int, n: int = NVARS) -> PolyElement:
    return poly_ring(p, n).from_dict(dict(f))


def _symmetric(c: int, p: int) -> int:
    c %= p
    return c - p if c > p // 2 else c


def format_poly(f: DictPoly, p: int) -> str:
    """Terms in descending grevlex order, e.g. ``x0^2*x1-2*x3^3``."""
    if not f:
        return "0"
    parts = []
    for m in sorted(f, key=grevlex, reverse=True):
        c = _symmetric(f[m], p)
        factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e]
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        parts.append(("-" if c < 0 else "+") + term)
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def parse_poly(text: str, p: int, n: int = NVARS) -> DictPoly:
    R = poly_ring(p, n)
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={str(s): s for s in R.symbols})
        f = R.from_expr(expr)
    except (sympy.SympifyError, ValueError, TypeError) as exc:
        raise ParseError(text, str(exc)) from exc
    return to_dict(f, p)


def linear_substitute(f: DictPoly, M: IntArray, p: int) -> DictPoly:
    """f(Mx): every x_i is replaced by sum_j M[i, j] x_j."""
    R = poly_ring(p, len(M))
    gens = R.gens
    images = [sum((int(M[i, j]) * gens[j] for j in range(len(gens))), R.zero) for i in range(len(gens))]
    return to_dict(from_dict(f, p, len(M)).compose(list(zip(gens, images, strict=True))), p)


# --- Ideals ---


@dataclass(frozen=True, eq=False)
class PolyIdeal:
    """A homogeneous ideal given by generators; Groebner data is cached."""

    p: int
    gens: tuple[DictPoly, ...]
    n: int = NVARS
    _cache: dict[str, Any] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        reduced = ({m: c % self.p for m, c in f.items() if c % self.p} for f in self.gens)
        cleaned = tuple(g for g in reduced if g)
        for g in cleaned:
            if not is_homogeneous(g):
                raise NonHomogeneousError(format_poly(g, self.p))
        object.__setattr__(self, "gens", cleaned)

    @classmethod
    def from_polys(cls, p: int, polys: Iterable[PolyElement]) -> PolyIdeal:
        return cls(p, tuple(to_dict(f, p) for f in polys))

    @classmethod
    def from_strings(cls, p: int, texts: Iterable[str]) -> PolyIdeal:
        return cls(p, tuple(parse_poly(t, p) for t in texts))

    @property
    def ring(self) -> PolyRing:
        return poly_ring(self.p, self.n)

    def polys(self) -> list[PolyElement]:
        return [from_dict(g, self.p, self.n) for g in self.gens]

    def to_strings(self) -> list[str]:
        return [format_poly(g, self.p) for g in self.gens]

    def __add__(self, other: PolyIdeal) -> PolyIdeal:
        return PolyIdeal(self.p, self.gens + other.gens, self.n)

    def generator_degrees(self) -> dict[int, int]:
        counts: dict[int, int] = defaultdict(int)
        for g in self.gens:
            counts[poly_degree(g)] += 1
        return dict(sorted(counts.items()))


def groebner(
    I: PolyIdeal,
    *,
    pair_budget: int | None = None,
    max_degree: int | None = None,
    stop_when_full: bool = False,
) -> GroebnerResult:
    """Reduced grevlex Groebner basis, cached for the default budgets."""
    cacheable = pair_budget is None and max_degree is None and not stop_when_full
    if cacheable and "gb" in I._cache:
        return I._cache["gb"]  # type: ignore[no-any-return]
    settings = get_settings()
    result = groebner_basis(
        I.gens,
        I.p,
        pair_budget=pair_budget or settings.groebner_pair_budget,
        max_degree=max_degree or settings.groebner_max_degree,
        stop_when_full=stop_when_full,
    )
    if cacheable:
        I._cache["gb"] = result
    return result


def basis_ideal(I: PolyIdeal) -> PolyIdeal:
    """The same ideal, generated by its reduced Groebner basis."""
    out = PolyIdeal(I.p, groebner(I).basis, I.n)
    out._cache["gb"] = groebner(I)
    return out


# --- Hilbert series of monomial ideals ---


def _minimalize(monomials: Iterable[Monomial]) -> list[Monomial]:
    ordered = sorted(set(monomials), key=sum)
    kept: list[Monomial] = []
    for m in ordered:
        if not any(all(a <= b for a, b in zip(k, m, strict=True)) for k in kept):
            kept.append(m)
    return kept


def _numerator(gens: list[Monomial], n: int) -> PolyElement:
    if not gens:
        return _TRING.one
    if any(sum(m) == 0 for m in gens):
        return _TRING.zero
    supports = [frozenset(i for i in range(n) if m[i]) for m in gens]
    if all(not (a & b) for a, b in combinations(supports, 2)):
        out = _TRING.one
        for m in gens:
            out *= _TRING.one - _T ** sum(m)
        return out
    counts = [sum(1 for m in gens if m[i]) for i in range(n)]
    var = max(range(n), key=lambda i: counts[i])
    mixed = sorted(m[var] for m in gens if m[var] and sum(m) != m[var])
    e = mixed[len(mixed) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    plus = _minimalize([*gens, pivot])
    colon = _minimalize(
        tuple(max(a - b, 0) for a, b in zip(m, pivot, strict=True)) for m in gens
    )
    return _numerator(plus, n) + _T**e * _numerator(colon, n)


def hilbert_numerator(leading: Iterable[Monomial], n: int = NVARS) -> PolyElement:
    """K(t) with sum_d dim (S/I)_d t^d = K(t) / (1 - t)^n for the monomial ideal I."""
    return _numerator(_minimalize(leading), n)


@dataclass(frozen=True)
class HilbertData:
    """Hilbert function, polynomial and their readouts for S/I."""

    numerator: tuple[int, ...]
    krull_dimension: int
    degree: int
    polynomial: sympy.Expr
    values: dict[int, int]

    @property
    def dimension(self) -> int:
        """Projective dimension of the support; -1 when it is empty."""
        return self.krull_dimension - 1 if self.degree else -1

    @property
    def coefficients(self) -> tuple[sympy.Rational, ...]:
        """Coefficients of the Hilbert polynomial, highest power first."""
        if self.polynomial == 0:
            return ()
        return tuple(sympy.Poly(self.polynomial, HP_VARIABLE).all_coeffs())

    @property
    def chi(self) -> int:
        return int(self.polynomial.subs(HP_VARIABLE, 0))

    @property
    def sectional_genus(self) -> int | None:
        """Arithmetic genus of a general hyperplane section for a surface (dimension 2)."""
        if self.dimension != 2:
            return None
        poly = sympy.Poly(self.polynomial, HP_VARIABLE)
        c1 = poly.coeff_monomial(HP_VARIABLE)
        return int(sympy.Rational(self.degree, 2) + 1 - c1)

    def polynomial_str(self) -> str:
        return str(sympy.expand(self.polynomial))

    def to_dict(self) -> dict[str, Any]:
        return {
            "polynomial": self.polynomial_str(),
            "dimension": self.dimension,
            "degree": self.degree,
            "sectional_genus": self.sectional_genus,
            "chi": self.chi,
        }


def _binomial_poly(shift: int, k: int) -> sympy.Expr:
    """C(t + shift, k) as a polynomial in t."""
    out = sympy.Integer(1)
    for i in range(k):
        out *= (HP_VARIABLE + shift - i) / sympy.Integer(i + 1)
    return sympy.expand(out)


def _coefficients(f: PolyElement) -> list[int]:
    """Coefficients of a polynomial in t, constant term first."""
    if not f:
        return []
    out = [0] * (f.degree() + 1)
    for (k,), c in f.items():
        out[k] = int(c)
    return out


def hilbert_data_from_leading(
    leading: Sequence[Monomial], n: int = NVARS, max_value_degree: int = 12
) -> HilbertData:
    numerator = hilbert_numerator(leading, n)
    coeffs = _coefficients(numerator)
    values = {
        d: sum(c * comb(d - k + n - 1, n - 1) for k, c in enumerate(coeffs) if d >= k)
        for d in range(max_value_degree + 1)
    }
    reduced, cancelled = numerator, 0
    one_minus_t = _TRING.one - _T
    while reduced and reduced(1) == 0:
        reduced = reduced.exquo(one_minus_t)
        cancelled += 1
    krull = n - cancelled if reduced else 0
    degree = int(reduced(1)) if reduced else 0
    if not reduced or krull == 0:
        polynomial: sympy.Expr = sympy.Integer(0)
    else:
        polynomial = sympy.Integer(0)
        for k, q_k in enumerate(_coefficients(reduced)):
            if q_k:
                polynomial += q_k * _binomial_poly(krull - 1 - k, krull - 1)
        polynomial = sympy.expand(polynomial)
    return HilbertData(tuple(coeffs), krull, degree, polynomial, values)


def hilbert_polynomial(I: PolyIdeal) -> HilbertData:
    if "hilbert" not in I._cache:
        gb = groebner(I)
        top = max(gb.max_degree + 4, 12)
        I._cache["hilbert"] = hilbert_data_from_leading(gb.leading_monomials, I.n, top)
    return I._cache["hilbert"]  # type: ignore[no-any-return]


def dimension_degree(I: PolyIdeal) -> tuple[int, int]:
    """(projective dimension of the support, degree); (-1, 0) for empty support."""
    data = hilbert_polynomial(I)
    if data.dimension < 0:
        return -1, 0
    return data.dimension, data.degree


def hilbert_function(I: PolyIdeal, d: int) -> int:
    """dim (S/I)_d."""
    lms = groebner(I).leading_monomials
    return sum(
        1 for m in monomials_of_degree(d, I.n)
        if not any(all(a <= b for a, b in zip(lm, m, strict=True)) for lm in lms)
    )


# --- Degree parts and quotients ---


@dataclass(frozen=True, eq=False)
class DegreePart:
    """An RREF basis of I_d in the monomial basis of S_d (grevlex-descending columns)."""

    degree: int
    columns: tuple[Monomial, ...]
    basis: IntArray
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def index(self) -> dict[Monomial, int]:
        return {m: j for j, m in enumerate(self.columns)}


def degree_columns(d: int, n: int = NVARS) -> tuple[Monomial, ...]:
    return tuple(sorted(monomials_of_degree(d, n), key=grevlex, reverse=True))


def degree_part(I: PolyIdeal, d: int) -> DegreePart:
    """I_d, spanned by monomial multiples of Groebner basis elements."""
    key = f"part:{d}"
    if key in I._cache:
        return I._cache[key]  # type: ignore[no-any-return]
    gb = groebner(I)
    columns = degree_columns(d, I.n)
    index = {m: j for j, m in enumerate(columns)}
    rows = []
    lms = gb.leading_monomials
    for m in columns:
        for g, lm in zip(gb.basis, lms, strict=True):
            if all(a <= b for a, b in zip(lm, m, strict=True)):
                shift = tuple(b - a for a, b in zip(lm, m, strict=True))
                row = np.zeros(len(columns), dtype=np.int64)
                for mono, c in g.items():
                    row[index[tuple(x + y for x, y in zip(mono, shift, strict=True))]] = c
                rows.append(row)
                break
    field_ = get_field(I.p)
    matrix = np.array(rows, dtype=np.int64).reshape(len(rows), len(columns))
    basis, pivots = row_basis_array(field_, matrix)
    part = DegreePart(d, columns, basis, pivots)
    I._cache[key] = part
    return part


def _vector(f: DictPoly, index: dict[Monomial, int]) -> IntArray:
    vec = np.zeros(len(index), dtype=np.int64)
    for m, c in f.items():
        vec[index[m]] = c
    return vec


def _multiples(gens: Sequence[DictPoly], d: int, n: int, p: int) -> IntArray:
    """Vectors of all m * g of degree d, in the columns of ``degree_columns(d)``."""
    columns = degree_columns(d, n)
    index = {m: j for j, m in enumerate(columns)}
    rows = []
    for g in gens:
        e = d - poly_degree(g)
        if e < 0:
            continue
        for m in monomials_of_degree(e, n):
            rows.append(_vector({tuple(a + b for a, b in zip(k, m, strict=True)): c
                                 for k, c in g.items()}, index))
    if not rows:
        return np.zeros((0, len(columns)), dtype=np.int64)
    return np.array(rows, dtype=np.int64) % p


def minimal_generators(I: PolyIdeal) -> PolyIdeal:
    """A minimal homogeneous generating set, extracted from the Groebner basis."""
    p, n = I.p, I.n
    field_ = get_field(p)
    gb = groebner(I).basis
    kept: list[DictPoly] = []
    for d in sorted({poly_degree(g) for g in gb}):
        columns = degree_columns(d, n)
        index = {m: j for j, m in enumerate(columns)}
        candidates = np.array([_vector(g, index) for g in gb if poly_degree(g) == d])
        known, known_pivots = row_basis_array(field_, _multiples(kept, d, n, p))
        fresh, _ = row_basis_array(field_, reduce_rows(field_, candidates, known, known_pivots))
        kept.extend({columns[j]: int(v[j]) for j in np.flatnonzero(v)} for v in fresh)
    return PolyIdeal(p, tuple(kept), n)


def ideal_quotient(I: PolyIdeal, J: PolyIdeal, degree_bound: int | None = None) -> PolyIdeal:
    """(I : J), computed degree by degree.

    Every degree up to ``degree_bound`` is searched (default: one more than the
    largest Groebner basis degree of I). Past the bound the search goes on
    until a degree adds no generator, up to the Groebner degree cap. The
    bound is not a proof of completeness; saturation certifies its result by
    the Hilbert polynomial.
    """
    p, n = I.p, I.n
    field_ = get_field(p)
    bound = degree_bound if degree_bound is not None else groebner(I).max_degree + 1
    cap = max(bound, get_settings().groebner_max_degree)
    found: list[DictPoly] = []
    e = -1
    while e < cap:
        e += 1
        before = len(found)
        source = degree_columns(e, n)
        blocks = []
        for g in J.gens:
            part = degree_part(I, e + poly_degree(g))
            index = part.index()
            images = np.array(
                [_vector({tuple(a + b for a, b in zip(k, m, strict=True)): c
                          for k, c in g.items()}, index) for m in source],
                dtype=np.int64,
            ).reshape(len(source), len(index))
            blocks.append(reduce_rows(field_, images, part.basis, part.pivots))
        if blocks:
            combined = np.concatenate(blocks, axis=1)
            kernel = kernel_array(field_, combined.T)
        else:
            kernel = np.eye(len(source), dtype=np.int64)
        if kernel.shape[0]:
            known, known_pivots = row_basis_array(field_, _multiples(found, e, n, p))
            residual = reduce_rows(field_, kernel, known, known_pivots)
            fresh, _ = row_basis_array(field_, residual)
            for vec in fresh:
                found.append({source[j]: int(vec[j]) for j in np.flatnonzero(vec)})
        if e > bound and len(found) == before:
            break
    logger.debug("polyring.quotient", degree_bound=bound, last_degree=e, generators=len(found))
    return PolyIdeal(p, tuple(found), n)


# --- Saturation ---


def _divide_last_variable(f: DictPoly) -> DictPoly:
    k = min(m[-1] for m in f)
    return {(*m[:-1], m[-1] - k): c for m, c in f.items()}


def _saturate_in_coordinates(I: PolyIdeal, T: IntArray) -> PolyIdeal:
    """Saturate by the linear form given by the last row of T (new coordinate y4)."""
    p = I.p
    T_inv = inverse_array(get_field(p), T)
    moved = PolyIdeal(p, tuple(linear_substitute(g, T_inv, p) for g in I.gens), I.n)
    divided = [_divide_last_variable(g) for g in groebner(moved).basis]
    back = PolyIdeal(p, tuple(linear_substitute(g, T, p) for g in divided), I.n)
    return basis_ideal(back)


def _completion(form: IntArray, p: int) -> IntArray:
    """An invertible matrix whose last row is ``form``."""
    n = len(form)
    pivot = int(np.flatnonzero(form % p)[0])
    rows = [np.eye(n, dtype=np.int64)[i] for i in range(n) if i != pivot]
    return np.array([*rows, form % p], dtype=np.int64)


@retry(
    stop=stop_after_attempt(SATURATION_ATTEMPTS),
    retry=retry_if_exception_type(SaturationError),
    reraise=True,
)
def _saturate_irrelevant(I: PolyIdeal, rng: np.random.Generator) -> PolyIdeal:
    T = random_invertible_array(get_field(I.p), I.n, rng)
    J = _saturate_in_coordinates(I, T)
    if hilbert_polynomial(J).polynomial != hilbert_polynomial(I).polynomial:
        logger.info("polyring.saturate.retry", reason="hilbert polynomial changed")
        raise SaturationError("Coordinate change met an associated prime")
    return J


def saturate(
    I: PolyIdeal,
    J: PolyIdeal | DictPoly | None = None,
    *,
    rng: np.random.Generator | None = None,
) -> PolyIdeal:
    """I : J^infinity; J defaults to the irrelevant ideal.

    For the irrelevant ideal the result is certified by equality of Hilbert
    polynomials and recomputed in fresh random coordinates on failure. A
    linear form is handled exactly; any other J by iterated quotients.
    """
    if J is None:
        result = _saturate_irrelevant(I, rng or np.random.default_rng(0))
    elif isinstance(J, dict):
        if not J or any(sum(m) != 1 for m in J):
            raise NonHomogeneousError("saturation by a non-linear single form")
        form = np.zeros(I.n, dtype=np.int64)
        for m, c in J.items():
            form[m.index(1)] = c
        result = _saturate_in_coordinates(I, _completion(form, I.p))
    else:
        current = basis_ideal(I)
        while True:
            nxt = basis_ideal(ideal_quotient(current, J))
            if [leading_monomial(f) for f in groebner(nxt).basis] == [
                leading_monomial(f) for f in groebner(current).basis
            ]:
                result = nxt
                break
            current = nxt
    logger.debug("polyring.saturate", generators=len(result.gens))
    return result


# --- Jacobian ---


def jacobian(I: PolyIdeal) -> list[list[PolyElement]]:
    R = I.ring
    return [[f.diff(x) for x in R.gens] for f in I.polys()]


def _determinant(rows: Sequence[Sequence[PolyElement]], zero: PolyElement) -> PolyElement:
    size = len(rows)
    total = zero
    for perm in permutations(range(size)):
        sign = Permutation(list(perm)).signature()
        term = rows[0][perm[0]]
        for r in range(1, size):
            term = term * rows[r][perm[r]]
        total = total + term if sign > 0 else total - term
    return total


def jacobian_minors(I: PolyIdeal, size: int) -> list[DictPoly]:
    """All nonzero size x size minors of the Jacobian matrix of I's generators."""
    J = jacobian(I)
    zero = I.ring.zero
    out = []
    for rows in combinations(range(len(J)), size):
        for cols in combinations(range(I.n), size):
            minor = _determinant([[J[r][c] for c in cols] for r in rows], zero)
            if minor:
                out.append(to_dict(minor, I.p))
    return out


def _random_combinations(
    polys: Sequence[DictPoly], count: int, p: int, rng: np.random.Generator
) -> list[DictPoly]:
    by_degree: dict[int, list[DictPoly]] = defaultdict(list)
    for f in polys:
        by_degree[poly_degree(f)].append(f)
    out = []
    for group in by_degree.values():
        if len(group) <= count:
            out.extend(group)
            continue
        for _ in range(count):
            coeffs = rng.integers(0, p, size=len(group))
            combo: DictPoly = defaultdict(int)
            for c, f in zip(coeffs, group, strict=True):
                if c:
                    for m, v in f.items():
                        combo[m] = (combo[m] + int(c) * v) % p
            cleaned = {m: v for m, v in combo.items() if v}
            if cleaned:
                out.append(cleaned)
    return out


# --- Point prefilter ---


def evaluate(f: DictPoly, points: IntArray, field_: FiniteField) -> IntArray:
    """Values of f at projective points given as field codes, one point per row."""
    cache: dict[tuple[int, int], IntArray] = {}
    total = np.zeros(points.shape[0], dtype=np.int64)
    for m, c in f.items():
        term = np.full(points.shape[0], c % field_.p, dtype=np.int64)
        for i, e in enumerate(m):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = field_.power(points[:, i], e)
                term = field_.mul(term, cache[(i, e)])
        total = field_.add(total, term)
    return total


@dataclass(frozen=True)
class PrefilterReport:
    """Jacobian rank check at the rational points of V(I) over small extensions."""

    points_checked: dict[int, int]
    singular_point: tuple[int, ...] | None = None
    singular_extension: int | None = None

    @property
    def passed(self) -> bool:
        return self.singular_point is None


def jacobian_prefilter(I: PolyIdeal, codim: int, max_extension: int | None = None) -> PrefilterReport:
    """Verify rank J >= codim at every F_{p^k}-point of V(I), k <= max_extension."""
    top = max_extension or get_settings().prefilter_extension_degree
    derivatives = [[to_dict(d, I.p) for d in row] for row in jacobian(I)]
    checked: dict[int, int] = {}
    for k in range(1, top + 1):
        field_ = get_field(I.p, k)
        points = projective_points(field_, I.n - 1)
        for g in I.gens:
            if not points.shape[0]:
                break
            points = points[evaluate(g, points, field_) == 0]
        checked[k] = int(points.shape[0])
        for point in points:
            single = point[None, :]
            values = np.array(
                [[int(evaluate(d, single, field_)[0]) if d else 0 for d in row]
                 for row in derivatives],
                dtype=np.int64,
            ).reshape(len(derivatives), I.n)
            if rank_array(field_, values) < codim:
                logger.info("polyring.prefilter.singular", extension=k, point=point.tolist())
                return PrefilterReport(checked, tuple(int(v) for v in point), k)
    return PrefilterReport(checked)


# --- Smoothness ---


@dataclass(frozen=True)
class SmoothnessReport:
    verdict: Verdict
    method: str
    singular_dimension: int | None = None
    prefilter: PrefilterReport | None = None
    pairs_processed: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "method": self.method,
            "singular_dimension": self.singular_dimension,
            "prefilter_points": self.prefilter.points_checked if self.prefilter else {},
            "singular_point": list(self.prefilter.singular_point)
            if self.prefilter and self.prefilter.singular_point
            else None,
            "pairs_processed": self.pairs_processed,
        }


def _singular_support(I: PolyIdeal, minors: Sequence[DictPoly]) -> tuple[int, int]:
    """(projective dimension of V(I + minors), pairs processed), -1 when empty."""
    result = groebner(I + PolyIdeal(I.p, tuple(minors), I.n), stop_when_full=True)
    if not result.complete:
        return -1, result.pairs_processed
    data = hilbert_data_from_leading(result.leading_monomials, I.n)
    return data.dimension, result.pairs_processed


def is_smooth(
    I: PolyIdeal,
    codim: int,
    *,
    rng: np.random.Generator | None = None,
    prefilter: bool = True,
) -> SmoothnessReport:
    """Jacobian criterion for V(I), assumed equidimensional of codimension ``codim``.

    Random F_p-combinations of equal-degree minors are tried first; a
    nonempty answer is rechecked with every minor. An exhausted Groebner
    budget gives an undetermined verdict.
    """
    rng = rng or np.random.default_rng(0)
    settings = get_settings()
    report = jacobian_prefilter(I, codim) if prefilter else None
    if report is not None and not report.passed:
        return SmoothnessReport(Verdict.NOT_SMOOTH, "prefilter", None, report)

    minors = jacobian_minors(I, codim)
    try:
        combos = _random_combinations(minors, settings.smoothness_minor_combinations, I.p, rng)
        dim, pairs = _singular_support(I, combos)
        if dim < 0:
            return SmoothnessReport(Verdict.SMOOTH, "random_minors", None, report, pairs)
        dim, pairs = _singular_support(I, minors)
    except GroebnerBudgetExceededError as exc:
        logger.warning("polyring.smoothness.budget", pairs=exc.pairs, degree=exc.degree)
        return SmoothnessReport(Verdict.UNDETERMINED, "budget", None, report, exc.pairs)
    if dim < 0:
        return SmoothnessReport(Verdict.SMOOTH, "all_minors", None, report, pairs)
    return SmoothnessReport(Verdict.NOT_SMOOTH, "all_minors", dim, report, pairs)


def is_smooth_surface(I: PolyIdeal, **kwargs: Any) -> SmoothnessReport:
    return is_smooth(I, 2, **kwargs)

"""The exterior algebra E on V = <e0, ..., e4> and its dual on W = <x0, ..., x4>.

A monomial e_{i1 i2 ... im} with i1 < ... < im is stored as the bitmask
sum(1 << i) and has degree -m; the 32 monomials form a basis of E. Signs
follow one convention throughout:

* wedge: the product of two monomials is the merged index list, signed by
  the parity of the transpositions that sort it;
* contraction: e_k acts on x_S from the left with sign (-1)^(#indices of S
  smaller than k), and a monomial e_T acts as the composite of its factors
  with the rightmost factor applied first.

With these choices contraction is an algebra homomorphism
E -> End(Lambda W), which is what the section maps in :mod:`bott` use.

Usage:
    a = ExtElem.parse("2e_{23}+e_{24}-2e_{34}", p=5)
    b = ExtElem.generator(5, 0)
    str(wedge(b, a))           # "2e_{023}+e_{024}-2e_{034}"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING, ClassVar, Self

import numpy as np

from monad_surfaces.domain.exceptions import DegreeOutOfRangeError, ParseError

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

    from monad_surfaces.algebra.fields import IntArray

NGENS = 5
NMONOMIALS = 1 << NGENS


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def indices(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(NGENS) if mask >> i & 1)


def mask_of(idx: tuple[int, ...] | list[int]) -> int:
    return sum(1 << i for i in idx)


def _build_wedge_sign() -> IntArray:
    table = np.zeros((NMONOMIALS, NMONOMIALS), dtype=np.int64)
    for s in range(NMONOMIALS):
        for t in range(NMONOMIALS):
            if s & t:
                continue
            inversions = sum(1 for i in indices(s) for j in indices(t) if i > j)
            table[s, t] = -1 if inversions % 2 else 1
    table.flags.writeable = False
    return table


def _build_contract_sign() -> IntArray:
    """``table[t, s]``: sign of contracting x_s by e_t, zero unless t is inside s."""
    table = np.zeros((NMONOMIALS, NMONOMIALS), dtype=np.int64)
    for s in range(NMONOMIALS):
        for t in range(NMONOMIALS):
            if t & ~s:
                continue
            sign, current = 1, s
            for k in reversed(indices(t)):
                if popcount(current & ((1 << k) - 1)) % 2:
                    sign = -sign
                current &= ~(1 << k)
            table[t, s] = sign
    table.flags.writeable = False
    return table


# WEDGE_SIGN[s, t] is the sign of e_s ^ e_t = +-e_{s|t}, 0 when they share an index.
WEDGE_SIGN = _build_wedge_sign()
CONTRACT_SIGN = _build_contract_sign()


@lru_cache(maxsize=None)
def graded_basis(d: int) -> tuple[int, ...]:
    """The C(5, -d) monomials of degree d, in lexicographic order of index tuples."""
    if not -NGENS <= d <= 0:
        raise DegreeOutOfRangeError(d)
    return tuple(mask_of(c) for c in combinations(range(NGENS), -d))


@lru_cache(maxsize=None)
def basis_index(d: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(graded_basis(d))}


def dim_E(d: int) -> int:
    """dim E_d, zero outside [-5, 0]."""
    if not -NGENS <= d <= 0:
        return 0
    return len(graded_basis(d))


def dual_basis(i: int) -> tuple[int, ...]:
    """Monomials of Lambda^i W, ordered like ``graded_basis(-i)``."""
    return graded_basis(-i)


def dim_wedge(i: int) -> int:
    return dim_E(-i)


# --- Elements ---


def _symmetric(c: int, p: int) -> int:
    c %= p
    return c - p if c > p // 2 else c


@dataclass(frozen=True)
class _GradedElem:
    """Homogeneous element with coefficients in F_p, keyed by monomial mask."""

    symbol: ClassVar[str] = "e"
    weight: ClassVar[int] = -1

    p: int
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {m: c % self.p for m, c in self.coeffs.items() if c % self.p}
        lengths = {popcount(m) for m in cleaned}
        if len(lengths) > 1:
            raise DegreeOutOfRangeError(min(lengths) * self.weight)
        object.__setattr__(self, "coeffs", cleaned)

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.p, frozenset(self.coeffs.items())))

    @classmethod
    def zero(cls, p: int) -> Self:
        return cls(p, {})

    @classmethod
    def monomial(cls, p: int, mask: int, coeff: int = 1) -> Self:
        return cls(p, {mask: coeff})

    @classmethod
    def generator(cls, p: int, i: int) -> Self:
        return cls(p, {1 << i: 1})

    @property
    def degree(self) -> int | None:
        """Homogeneous degree, or None for the zero element."""
        if not self.coeffs:
            return None
        return popcount(next(iter(self.coeffs))) * self.weight

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_vector(self, d: int) -> IntArray:
        index = basis_index(d if self.weight == -1 else -d)
        vec = np.zeros(len(index), dtype=np.int64)
        if self.coeffs and self.degree != d:
            raise DegreeOutOfRangeError(d)
        for m, c in self.coeffs.items():
            vec[index[m]] = c
        return vec

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.coeffs.items(), key=lambda mc: indices(mc[0])))

    def scale(self, c: int) -> Self:
        return type(self)(self.p, {m: v * c for m, v in self.coeffs.items()})

    def __add__(self, other: Self) -> Self:
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return type(self)(self.p, out)

    def __neg__(self) -> Self:
        return self.scale(-1)

    def __sub__(self, other: Self) -> Self:
        return self + (-other)

    def reverse(self) -> Self:
        """The anti-automorphism reversing the order of factors in each monomial."""
        out = {}
        for m, c in self.coeffs.items():
            k = popcount(m)
            out[m] = -c if (k * (k - 1) // 2) % 2 else c
        return type(self)(self.p, out)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for m, c in self.items():
            c = _symmetric(c, self.p)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if m == 0:
                body = str(mag)
            else:
                digits = "".join(str(i) for i in indices(m))
                body = f"{'' if mag == 1 else mag}{self.symbol}_{{{digits}}}"
            parts.append(f"{sign}{body}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    @classmethod
    def parse(cls, text: str, p: int) -> Self:
        """Parse signed integer multiples of tokens such as ``e_{023}``, ``e_1`` or ``e3``."""
        source = text
        text = text.replace(" ", "").replace("−", "-")
        if text in ("", "0"):
            return cls.zero(p)
        sym = cls.symbol
        term_re = re.compile(rf"^([+-]?)(\d*)\*?(?:{sym}_\{{(\d*)\}}|{sym}_?(\d+))?$")
        result: dict[int, int] = {}
        for term in re.findall(r"[+-]?[^+-]+", text):
            match = term_re.match(term)
            if match is None:
                raise ParseError(source, f"unexpected term {term!r}")
            sign, coeff, braced, bare = match.groups()
            if braced is None and bare is None and not coeff:
                raise ParseError(source, f"empty term {term!r}")
            value = int(coeff) if coeff else 1
            if sign == "-":
                value = -value
            digits = braced if braced is not None else (bare or "")
            idx = [int(ch) for ch in digits]
            if any(i >= NGENS for i in idx):
                raise ParseError(source, f"index out of range in {term!r}")
            mask, s = 0, 1
            for i in idx:
                s *= int(WEDGE_SIGN[mask, 1 << i])
                mask |= 1 << i
            if s == 0:
                continue
            result[mask] = result.get(mask, 0) + s * value
        try:
            return cls(p, result)
        except DegreeOutOfRangeError as exc:
            raise ParseError(source, "inhomogeneous element") from exc


@dataclass(frozen=True, eq=True)
class ExtElem(_GradedElem):
    """A homogeneous element of E = Lambda V, deg e_i = -1."""

    __hash__ = _GradedElem.__hash__

    @classmethod
    def from_vector(cls, p: int, d: int, vec: IntArray) -> ExtElem:
        return cls(p, {m: int(c) for m, c in zip(graded_basis(d), vec, strict=True) if c})


@dataclass(frozen=True, eq=True)
class DualElem(_GradedElem):
    """A homogeneous element of Lambda W, deg x_i = +1."""

    symbol: ClassVar[str] = "x"
    weight: ClassVar[int] = 1

    __hash__ = _GradedElem.__hash__

    @classmethod
    def from_vector(cls, p: int, d: int, vec: IntArray) -> DualElem:
        return cls(p, {m: int(c) for m, c in zip(graded_basis(-d), vec, strict=True) if c})


# --- Operations ---


def wedge(a: ExtElem, b: ExtElem) -> ExtElem:
    out: dict[int, int] = {}
    for s, c in a.coeffs.items():
        for t, d in b.coeffs.items():
            sign = int(WEDGE_SIGN[s, t])
            if sign:
                out[s | t] = out.get(s | t, 0) + sign * c * d
    return ExtElem(a.p, out)


def contract(omega: ExtElem, tau: DualElem) -> DualElem:
    """Interior product of an element of Lambda^m V with one of Lambda^i W."""
    out: dict[int, int] = {}
    for t, c in omega.coeffs.items():
        for s, d in tau.coeffs.items():
            sign = int(CONTRACT_SIGN[t, s])
            if sign:
                out[s & ~t] = out.get(s & ~t, 0) + sign * c * d
    return DualElem(tau.p, out)


def multiplication_matrix(omega: ExtElem, source_degree: int, *, side: str = "left") -> IntArray:
    """Matrix of x -> omega ^ x (or x ^ omega) from E_{source_degree}, mod p.

    Shape is (dim E_{source_degree + deg omega}, dim E_{source_degree}); an
    out-of-range target degree gives a matrix with zero rows.
    """
    src = graded_basis(source_degree) if dim_E(source_degree) else ()
    deg = omega.degree
    if deg is None:
        target_degree = source_degree
    else:
        target_degree = source_degree + deg
    n_target = dim_E(target_degree)
    mat = np.zeros((n_target, len(src)), dtype=np.int64)
    if deg is None or not n_target:
        return mat
    target = basis_index(target_degree)
    for col, s in enumerate(src):
        for t, c in omega.coeffs.items():
            sign = int(WEDGE_SIGN[t, s] if side == "left" else WEDGE_SIGN[s, t])
            if sign:
                mat[target[s | t], col] += sign * c
    return mat % omega.p


def contraction_matrix(omega: ExtElem, i: int) -> IntArray:
    """Matrix of contraction by omega from Lambda^i W to Lambda^{i-m} W, mod p."""
    deg = omega.degree
    src = dual_basis(i)
    if deg is None or i + deg < 0:
        rows = dim_wedge(i) if deg is None else 0
        return np.zeros((rows, len(src)), dtype=np.int64)
    target = basis_index(-(i + deg))
    mat = np.zeros((len(target), len(src)), dtype=np.int64)
    for col, s in enumerate(src):
        for t, c in omega.coeffs.items():
            sign = int(CONTRACT_SIGN[t, s])
            if sign:
                mat[target[s & ~t], col] += sign * c
    return mat % omega.p


def random_elem(p: int, d: int, rng: np.random.Generator) -> ExtElem:
    vec = rng.integers(0, p, size=dim_E(d), dtype=np.int64)
    return ExtElem.from_vector(p, d, vec)

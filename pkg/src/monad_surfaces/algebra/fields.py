"""Prime fields and small extension fields with vectorized numpy arithmetic.

Elements of F_p are integer residues in [0, p). Elements of F_{p^k} are
integer codes c = a_0 + a_1 p + ... + a_{k-1} p^{k-1} standing for the
residue class of a_0 + a_1 t + ... modulo a fixed monic irreducible
polynomial; the constants 0..p-1 are therefore the prime subfield. All
arithmetic on F_{p^k} goes through precomputed addition, multiplication and
inversion tables, so both field types expose the same array interface:

    add, sub, mul, neg, inv, power, matmul, reduce

which is what the linear algebra in :mod:`monad_surfaces.algebra.linalg`
is written against.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Protocol, runtime_checkable

import numpy as np
from numpy.typing import NDArray
from sympy import isprime

from monad_surfaces.domain.exceptions import FieldError

IntArray = NDArray[np.int64]

# Conway polynomials, coefficients from the constant term up, leading 1 included.
_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
}

MAX_EXTENSION_DEGREE = 3
_FLOAT_EXACT = 2**52


@runtime_checkable
class FiniteField(Protocol):
    """Array interface shared by :class:`PrimeField` and :class:`ExtField`."""

    p: int

    @property
    def order(self) -> int: ...

    @property
    def degree(self) -> int: ...

    def reduce(self, a: IntArray) -> IntArray: ...

    def add(self, a: IntArray | int, b: IntArray | int) -> IntArray: ...

    def sub(self, a: IntArray | int, b: IntArray | int) -> IntArray: ...

    def mul(self, a: IntArray | int, b: IntArray | int) -> IntArray: ...

    def neg(self, a: IntArray | int) -> IntArray: ...

    def inv(self, a: IntArray | int) -> IntArray: ...

    def power(self, a: IntArray | int, e: int) -> IntArray: ...

    def matmul(self, a: IntArray, b: IntArray) -> IntArray: ...

    def elements(self) -> IntArray: ...


class PrimeField:
    """The field F_p with residues in [0, p)."""

    def __init__(self, p: int) -> None:
        if p < 2 or not isprime(p):
            raise FieldError(f"{p} is not a prime")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))

    @property
    def order(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    @cached_property
    def _inverses(self) -> IntArray:
        table = np.zeros(self.p, dtype=np.int64)
        for a in range(1, self.p):
            table[a] = pow(a, -1, self.p)
        return table

    def reduce(self, a: IntArray) -> IntArray:
        return np.asarray(a, dtype=np.int64) % self.p

    def add(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        return (np.asarray(a) + b) % self.p

    def sub(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        return (np.asarray(a) - b) % self.p

    def mul(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        return (np.asarray(a) * b) % self.p

    def neg(self, a: IntArray | int) -> IntArray:
        return (-np.asarray(a)) % self.p

    def inv(self, a: IntArray | int) -> IntArray:
        arr = np.asarray(a)
        if np.any(arr % self.p == 0):
            raise ZeroDivisionError("inverse of zero in a prime field")
        return self._inverses[arr % self.p]

    def power(self, a: IntArray | int, e: int) -> IntArray:
        arr = np.asarray(a, dtype=np.int64)
        result = np.ones_like(arr)
        base = arr % self.p
        while e:
            if e & 1:
                result = (result * base) % self.p
            base = (base * base) % self.p
            e >>= 1
        return result

    def matmul(self, a: IntArray, b: IntArray) -> IntArray:
        a = np.asarray(a, dtype=np.int64) % self.p
        b = np.asarray(b, dtype=np.int64) % self.p
        # float64 products are exact while every partial sum stays below 2^53
        if a.ndim == 2 and a.shape[1] * (self.p - 1) ** 2 < _FLOAT_EXACT:
            return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % self.p
        return (a @ b) % self.p

    def elements(self) -> IntArray:
        return np.arange(self.p, dtype=np.int64)


class ExtField:
    """The field F_{p^k}, 2 <= k <= 3, as integer codes with lookup tables.

    The modulus is taken from the Conway table where available; otherwise the
    smallest monic polynomial of degree k without roots in F_p is used, which
    is irreducible because k <= 3.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None = None) -> None:
        if p < 2 or not isprime(p):
            raise FieldError(f"{p} is not a prime")
        if not 2 <= k <= MAX_EXTENSION_DEGREE:
            raise FieldError(f"Extension degree {k} outside [2, {MAX_EXTENSION_DEGREE}]")
        self.p = p
        self.k = k
        self.modulus = modulus or _MODULI.get((p, k)) or _search_modulus(p, k)
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise FieldError(f"Modulus {self.modulus} is not monic of degree {k}")
        if _has_root(self.modulus, p):
            raise FieldError(f"Modulus {self.modulus} has a root in F_{p}")

    def __repr__(self) -> str:
        return f"ExtField({self.p}, {self.k})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ExtField)
            and (other.p, other.k, other.modulus) == (self.p, self.k, self.modulus)
        )

    def __hash__(self) -> int:
        return hash(("F", self.p, self.k, self.modulus))

    @property
    def order(self) -> int:
        return int(self.p**self.k)

    @property
    def degree(self) -> int:
        return self.k

    @cached_property
    def _digits(self) -> IntArray:
        codes = np.arange(self.order, dtype=np.int64)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.k)], axis=1)

    def _encode(self, digits: IntArray) -> IntArray:
        weights = self.p ** np.arange(self.k, dtype=np.int64)
        return np.asarray((digits % self.p) @ weights, dtype=np.int64)

    @cached_property
    def add_table(self) -> IntArray:
        d = self._digits
        return self._encode(d[:, None, :] + d[None, :, :])

    @cached_property
    def neg_table(self) -> IntArray:
        return self._encode(-self._digits)

    @cached_property
    def mul_table(self) -> IntArray:
        d = self._digits
        k, p = self.k, self.p
        prod = np.zeros((self.order, self.order, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[:, :, i + j] += d[:, None, i] * d[None, :, j]
        prod %= p
        # t^m = -(m_0 + ... + m_{k-1} t^{k-1}) for the monic modulus m
        for top in range(2 * k - 2, k - 1, -1):
            lead = prod[:, :, top].copy()
            prod[:, :, top] = 0
            for i in range(k):
                prod[:, :, top - k + i] -= lead * self.modulus[i]
            prod %= p
        return self._encode(prod[:, :, :k])

    @cached_property
    def inv_table(self) -> IntArray:
        table = np.zeros(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        table[rows] = cols
        return table

    def reduce(self, a: IntArray) -> IntArray:
        arr = np.asarray(a, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.order):
            raise FieldError(f"Codes outside [0, {self.order}) for {self!r}")
        return arr.copy()

    def add(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        return self.add_table[a, b]

    def sub(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a: IntArray | int, b: IntArray | int) -> IntArray:
        return self.mul_table[a, b]

    def neg(self, a: IntArray | int) -> IntArray:
        return self.neg_table[a]

    def inv(self, a: IntArray | int) -> IntArray:
        arr = np.asarray(a)
        if np.any(arr == 0):
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return self.inv_table[arr]

    def power(self, a: IntArray | int, e: int) -> IntArray:
        base = np.asarray(a, dtype=np.int64)
        result = np.ones_like(base)
        while e:
            if e & 1:
                result = self.mul_table[result, base]
            base = self.mul_table[base, base]
            e >>= 1
        return result

    def matmul(self, a: IntArray, b: IntArray) -> IntArray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for j in range(a.shape[1]):
            out = self.add_table[out, self.mul_table[a[:, j, None], b[None, j, :]]]
        return out

    def elements(self) -> IntArray:
        return np.arange(self.order, dtype=np.int64)

    def frobenius(self, a: IntArray | int) -> IntArray:
        return self.power(a, self.p)

    def in_prime_field(self, a: IntArray) -> NDArray[np.bool_]:
        return np.asarray(a) < self.p


def _has_root(modulus: tuple[int, ...], p: int) -> bool:
    for x in range(p):
        if sum(c * pow(x, i, p) for i, c in enumerate(modulus)) % p == 0:
            return True
    return False


def _search_modulus(p: int, k: int) -> tuple[int, ...]:
    for code in range(p**k):
        coeffs = tuple((code // p**i) % p for i in range(k)) + (1,)
        if coeffs[0] != 0 and not _has_root(coeffs, p):
            return coeffs
    raise FieldError(f"No irreducible polynomial of degree {k} over F_{p}")


@lru_cache(maxsize=32)
def get_field(p: int, k: int = 1) -> PrimeField | ExtField:
    """Return the cached field F_{p^k}."""
    if k == 1:
        return PrimeField(p)
    return ExtField(p, k)


def projective_points(field: FiniteField, n: int) -> IntArray:
    """All points of P^n over ``field`` with first nonzero coordinate 1.

    Returns an array of shape ((q^{n+1} - 1)/(q - 1), n + 1) of field codes,
    ordered by the position of the leading 1 and then lexicographically.
    """
    q = field.order
    blocks: list[IntArray] = []
    for lead in range(n + 1):
        free = n - lead
        tail = (
            np.indices((q,) * free, dtype=np.int64).reshape(free, -1).T
            if free
            else np.zeros((1, 0), dtype=np.int64)
        )
        block = np.zeros((tail.shape[0], n + 1), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1 :] = tail
        blocks.append(block)
    return np.concatenate(blocks, axis=0)

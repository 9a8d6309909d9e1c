"""Arithmetic in GF(p^e) and interpolation of low-degree polynomials.

Elements of GF(p^e) are the integers 0..p^e-1.  The integer
c_0 + c_1 p + ... + c_{e-1} p^{e-1} stands for the residue class of the
polynomial c_0 + c_1 x + ... + c_{e-1} x^{e-1} modulo the field modulus.
For prime order this is ordinary arithmetic mod p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .errors import (
    DuplicateAbscissa,
    InvalidElement,
    NotPrimePower,
    ParameterError,
    WrongArity,
    ZeroInverse,
)

TABLE_LIMIT = 256
MAX_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(n: int) -> Optional[tuple[int, int]]:
    """Return (p, e) with n == p**e, or None if n is not a prime power."""
    if n < 2:
        return None
    p = next(f for f in itertools.count(2) if n % f == 0)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


# -- coefficient-vector helpers over GF(p); vectors are low degree first ----

def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _undigits(v: Sequence[int], p: int) -> int:
    a = 0
    for c in reversed(v):
        a = a * p + c
    return a


def _polymod(num: list[int], mod: Sequence[int], p: int) -> list[int]:
    """Remainder of num by a monic mod, coefficients mod p."""
    num = list(num)
    d = len(mod) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i] % p
        if c:
            for j in range(d + 1):
                num[i - d + j] = (num[i - d + j] - c * mod[j]) % p
    return [c % p for c in num[:d]] + [0] * max(0, d - len(num))


def _has_factor_of_degree(poly: Sequence[int], deg: int, p: int) -> bool:
    for tail in itertools.product(range(p), repeat=deg):
        cand = list(tail) + [1]
        if not any(_polymod(list(poly), cand, p)):
            return True
    return False


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    n = len(poly) - 1
    if n < 1 or poly[-1] % p == 0:
        return False
    return not any(_has_factor_of_degree(poly, d, p) for d in range(1, n // 2 + 1))


@lru_cache(maxsize=None)
def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Least monic irreducible of degree e over GF(p).

    Candidates x^e + t(x) are ordered by the base-p integer encoding of the
    tail t, i.e. comparing coefficients from x^{e-1} down to x^0.
    """
    if e == 1:
        return (0, 1)
    for t in range(p**e):
        poly = tuple(_digits(t, p, e)) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FiniteField:
    """The field GF(order); build with :func:`field_create`."""

    order: int
    characteristic: int
    degree: int
    modulus: tuple[int, ...]
    _add: Optional[list[list[int]]] = field(default=None, repr=False)
    _mul: Optional[list[list[int]]] = field(default=None, repr=False)
    _inv: Optional[list[int]] = field(default=None, repr=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("GF", self.order))

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.order:
            raise InvalidElement(f"{a!r} is not an element of GF({self.order})")
        return a

    # raw operations, no validation; used to fill tables and above TABLE_LIMIT
    def _raw_add(self, a: int, b: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return (a + b) % p
        da, db = _digits(a, p, self.degree), _digits(b, p, self.degree)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def _raw_neg(self, a: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return (-a) % p
        return _undigits([(-x) % p for x in _digits(a, p, self.degree)], p)

    def _raw_mul(self, a: int, b: int) -> int:
        p, e = self.characteristic, self.degree
        if e == 1:
            return (a * b) % p
        da, db = _digits(a, p, e), _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return _undigits(_polymod(prod, self.modulus, p), p)

    def _raw_inv(self, a: int) -> int:
        # a^(order-2) by square and multiply
        result, base, k = 1, a, self.order - 2
        while k:
            if k & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            k >>= 1
        return result

    def add(self, a: int, b: int) -> int:
        self.check(a), self.check(b)
        return self._add[a][b] if self._add is not None else self._raw_add(a, b)

    def neg(self, a: int) -> int:
        self.check(a)
        return self._raw_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self.check(a), self.check(b)
        return self._mul[a][b] if self._mul is not None else self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        self.check(a)
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in GF({self.order})")
        return self._inv[a] if self._inv is not None else self._raw_inv(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def to_dict(self) -> dict:
        return {"order": self.order, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def field_create(order: int) -> FiniteField:
    """Build GF(order).  Fields up to order 256 carry full operation tables."""
    if not isinstance(order, int) or order < 2:
        raise NotPrimePower(f"field order must be an integer >= 2, got {order!r}")
    if order > MAX_ORDER:
        raise ParameterError(f"field order {order} exceeds supported maximum {MAX_ORDER}")
    pe = prime_power(order)
    if pe is None:
        raise NotPrimePower(f"{order} is not a prime power")
    p, e = pe
    base = FiniteField(order, p, e, least_irreducible(p, e))
    if order > TABLE_LIMIT:
        return base
    add = [[base._raw_add(a, b) for b in range(order)] for a in range(order)]
    mul = [[base._raw_mul(a, b) for b in range(order)] for a in range(order)]
    inv = [0] * order
    for a in range(1, order):
        inv[a] = mul[a].index(1)
    return FiniteField(order, p, e, base.modulus, add, mul, inv)


def field_arith(fld: FiniteField, op: str, a: int, b: Optional[int] = None) -> int:
    """Dispatch one of add, mul, inv, neg by name."""
    if op in ("add", "mul"):
        if b is None:
            raise InvalidElement(f"{op} needs two operands")
        return getattr(fld, op)(a, b)
    if op in ("inv", "neg"):
        return getattr(fld, op)(a)
    raise ParameterError(f"unknown field operation {op!r}")


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over a finite field; coeffs[i] multiplies x**i."""

    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        for c in self.coeffs:
            self.field.check(c)

    def __call__(self, x: int) -> int:
        return poly_eval(self, x)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1


def poly_eval(poly: Polynomial, x: int) -> int:
    fld = poly.field
    fld.check(x)
    acc = 0
    for c in reversed(poly.coeffs):
        acc = fld.add(fld.mul(acc, x), c)
    return acc


def interpolate(fld: FiniteField, points: Sequence[tuple[int, int]], k: int) -> Polynomial:
    """The unique polynomial of degree < k through k points with distinct abscissae.

    Solves the Vandermonde system by Gauss-Jordan elimination over the field.
    """
    if len(points) != k:
        raise WrongArity(f"expected {k} points, got {len(points)}")
    xs = [fld.check(x) for x, _ in points]
    ys = [fld.check(y) for _, y in points]
    if len(set(xs)) != k:
        raise DuplicateAbscissa("interpolation points share an x coordinate")

    rows = []
    for x, y in zip(xs, ys):
        row, power = [], 1
        for _ in range(k):
            row.append(power)
            power = fld.mul(power, x)
        rows.append(row + [y])

    for col in range(k):
        pivot = next(r for r in range(col, k) if rows[r][col])
        rows[col], rows[pivot] = rows[pivot], rows[col]
        scale = fld.inv(rows[col][col])
        rows[col] = [fld.mul(scale, v) for v in rows[col]]
        for r in range(k):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [fld.sub(v, fld.mul(f, w)) for v, w in zip(rows[r], rows[col])]
    return Polynomial(fld, tuple(rows[i][k] for i in range(k)))

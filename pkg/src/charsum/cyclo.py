"""Exact arithmetic in Z[zeta_m], the ring of integers generated by an m-th root of unity.

Elements are integer coefficient vectors of length m (value = sum coeffs[i] * zeta^i),
kept unreduced so that additions stay O(m).  Equality, integrality tests and the
canonical form reduce modulo the m-th cyclotomic polynomial Phi_m.
"""

from __future__ import annotations

import cmath
from functools import lru_cache

from .errors import CapacityExceeded, MixedOrder

# Largest root order accepted in exact mode; reduction cost grows superlinearly.
EXACT_MAX_ORDER = 10_000


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Divide num by monic den (ascending coefficients); remainder must vanish."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for k in range(dd + 1):
                num[i - dd + k] -= c * den[k]
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m(x), ascending, computed by dividing x^m - 1
    by the cyclotomic polynomials of the proper divisors of m."""
    if m < 1:
        raise ValueError(f"root order must be positive, got {m}")
    if m > EXACT_MAX_ORDER:
        raise CapacityExceeded(f"cyclotomic order {m} exceeds exact-mode cap {EXACT_MAX_ORDER}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m):
        if d < m:
            poly = _poly_div_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row i is x^i reduced mod Phi_m, as a vector of length deg(Phi_m).

    Reduction of any coefficient vector is then a linear map, which lets
    callers reduce many elements at once with integer matrix arithmetic.
    """
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    for i in range(deg):
        row = [0] * deg
        row[i] = 1
        rows.append(row)
    for i in range(deg, m):
        prev = rows[i - 1]
        # multiply by x, then cancel the leading term against monic Phi_m
        lead = prev[deg - 1]
        row = [0] + prev[: deg - 1]
        if lead:
            for k in range(deg):
                row[k] -= lead * phi[k]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


class CycInt:
    """An element of Z[zeta_m] with arbitrary-precision integer coefficients."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=None):
        if m < 1:
            raise ValueError(f"root order must be positive, got {m}")
        if m > EXACT_MAX_ORDER:
            raise CapacityExceeded(f"cyclotomic order {m} exceeds exact-mode cap {EXACT_MAX_ORDER}")
        if coeffs is None:
            coeffs = [0] * m
        else:
            coeffs = [int(c) for c in coeffs]
            if len(coeffs) != m:
                raise ValueError(f"expected {m} coefficients, got {len(coeffs)}")
        self.m = m
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "CycInt":
        return cls(m)

    @classmethod
    def from_int(cls, m: int, n: int) -> "CycInt":
        c = [0] * m
        c[0] = int(n)
        return cls(m, c)

    @classmethod
    def root(cls, m: int, e: int) -> "CycInt":
        """zeta_m^e"""
        c = [0] * m
        c[e % m] = 1
        return cls(m, c)

    # -- ring operations ----------------------------------------------

    def _check(self, other: "CycInt") -> None:
        if self.m != other.m:
            raise MixedOrder(f"cannot combine orders {self.m} and {other.m}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.m, other)
        self._check(other)
        return CycInt(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.m, other)
        self._check(other)
        return CycInt(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CycInt(self.m, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.m, [a * other for a in self.coeffs])
        self._check(other)
        m = self.m
        out = [0] * m
        bc = other.coeffs
        for i, ai in enumerate(self.coeffs):
            if ai:
                for k, bk in enumerate(bc):
                    if bk:
                        idx = i + k
                        if idx >= m:
                            idx -= m
                        out[idx] += ai * bk
        return CycInt(m, out)

    __rmul__ = __mul__

    def conj(self) -> "CycInt":
        """Complex conjugation: zeta^i -> zeta^(m-i)."""
        m = self.m
        out = [0] * m
        for i, c in enumerate(self.coeffs):
            if c:
                out[(m - i) % m] += c
        return CycInt(m, out)

    def abs_squared(self) -> "CycInt":
        return self * self.conj()

    # -- canonical form and predicates ----------------------------------

    def reduced(self) -> tuple[int, ...]:
        """Canonical coefficients modulo Phi_m (length deg Phi_m)."""
        phi = cyclotomic_poly(self.m)
        deg = len(phi) - 1
        r = list(self.coeffs)
        for i in range(len(r) - 1, deg - 1, -1):
            c = r[i]
            if c:
                r[i] = 0
                for k in range(deg):
                    r[i - deg + k] -= c * phi[k]
        return tuple(r[:deg])

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def is_integer(self) -> bool:
        return not any(self.reduced()[1:])

    def as_integer(self):
        """The element as a rational integer, or None if it is not one."""
        r = self.reduced()
        if any(r[1:]):
            return None
        return r[0]

    def to_complex(self) -> complex:
        m = self.m
        return sum(
            (c * cmath.exp(2j * cmath.pi * i / m) for i, c in enumerate(self.coeffs) if c),
            complex(0),
        )

    def __eq__(self, other):
        if isinstance(other, int):
            return self.as_integer() == other
        if not isinstance(other, CycInt):
            return NotImplemented
        if self.m != other.m:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.m, self.reduced()))

    def __repr__(self):
        n = self.as_integer()
        if n is not None:
            return f"CycInt({self.m}, int={n})"
        return f"CycInt({self.m}, reduced={list(self.reduced())})"

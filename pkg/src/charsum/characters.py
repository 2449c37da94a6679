"""The multiplicative character group mod p.

A character is identified by its index j in the cyclic dual group:
chi_j(g^t) = zeta_{p-1}^{j*t}, with chi(0) = 0 by convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .cyclo import CycInt
from .errors import IndexOutOfRange
from .field import FieldCtx, Subgroup
from .values import SumValue


@dataclass(frozen=True, eq=False)
class Character:
    ctx: FieldCtx
    index: int
    order: int

    @property
    def is_principal(self) -> bool:
        return self.index == 0

    @property
    def is_quadratic(self) -> bool:
        return self.order == 2

    def value_numeric(self, x: int) -> complex:
        p = self.ctx.p
        x %= p
        if x == 0:
            return 0j
        m = p - 1
        e = (self.index * int(self.ctx.dlog[x])) % m
        return np.exp(2j * np.pi * e / m)

    def value_exact(self, x: int) -> CycInt:
        p = self.ctx.p
        x %= p
        m = p - 1
        if x == 0:
            return CycInt.zero(m)
        return CycInt.root(m, (self.index * int(self.ctx.dlog[x])) % m)

    def eval(self, x: int, mode: str = "exact") -> SumValue:
        if mode == "exact":
            return SumValue.from_exact(self.value_exact(x))
        return SumValue.from_numeric(self.value_numeric(x))

    def conjugate(self) -> "Character":
        m = self.ctx.p - 1
        return character(self.ctx, (m - self.index) % m)

    def value_table(self) -> np.ndarray:
        """chi(x) for every residue x as a complex vector of length p (table[0] = 0)."""
        p = self.ctx.p
        m = p - 1
        table = np.zeros(p, dtype=complex)
        e = (self.index * self.ctx.dlog[1:]) % m
        table[1:] = np.exp(2j * np.pi * e / m)
        return table

    def exponent_table(self) -> np.ndarray:
        """Exponent e with chi(x) = zeta_m^e for x in [0, p-1]; entry -1 marks x = 0."""
        m = self.ctx.p - 1
        e = (self.index * self.ctx.dlog) % m
        e[0] = -1
        return e


def character(ctx: FieldCtx, j: int) -> Character:
    p = ctx.p
    if not 0 <= j <= p - 2:
        raise IndexOutOfRange(f"character index {j} outside [0, {p - 2}]")
    return Character(ctx=ctx, index=j, order=(p - 1) // math.gcd(j, p - 1))


def quadratic_character(ctx: FieldCtx) -> Character:
    return character(ctx, (ctx.p - 1) // 2)


def all_characters(ctx: FieldCtx) -> Iterator[Character]:
    for j in range(ctx.p - 1):
        yield character(ctx, j)


def subgroup_character_decomposition(H: Subgroup) -> list[Character]:
    """The k characters psi with psi^k = principal (k = H.index); averaging their
    values over any n reproduces the indicator of H."""
    m = H.ctx.p - 1
    return [character(H.ctx, j) for j in range(0, m, H.order)]

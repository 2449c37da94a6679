"""Prime-field context: primitive root, discrete-log tables, subgroup lattice."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapacityExceeded, NotOddPrime, ZeroInverse

# Eager dlog/exp tables take O(p) memory; refuse beyond this.
MAX_P = 10_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_in(lo: int, hi: int) -> Iterator[int]:
    """Primes p with lo <= p <= hi, ascending."""
    for n in range(max(lo, 2), hi + 1):
        if is_prime(n):
            yield n


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk scale)."""
    fac: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    return fac


def divisors_from_factorization(fac: dict[int, int]) -> tuple[int, ...]:
    divs = [1]
    for q, e in fac.items():
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable precomputed context for F_p.

    dlog maps each nonzero residue to its index with respect to the smallest
    primitive root g; dlog[0] = -1 is an explicit "undefined" sentinel.
    """

    p: int
    g: int
    dlog: np.ndarray  # length p, int64, dlog[0] == -1
    exp: np.ndarray  # length p-1, int64, exp[t] == g^t mod p
    divisors: tuple[int, ...]  # divisors of p-1
    factorization: dict[int, int]  # of p-1


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A multiplicative subgroup of F_p*."""

    ctx: FieldCtx
    order: int
    index: int  # (p-1) / order
    generator: int
    elements: tuple[int, ...]  # sorted residues


def _smallest_primitive_root(p: int, prime_factors: list[int]) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors):
            return g
    raise ArithmeticError(f"no primitive root found mod {p}")  # unreachable for prime p


def make_ctx(p: int) -> FieldCtx:
    """Build the full context for an odd prime p (primality-checked)."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    if p > MAX_P:
        raise CapacityExceeded(f"p={p} exceeds dlog table cap {MAX_P}")
    fac = factorize(p - 1)
    g = _smallest_primitive_root(p, list(fac))
    powers = [0] * (p - 1)
    cur = 1
    for t in range(p - 1):
        powers[t] = cur
        cur = cur * g % p
    exp = np.array(powers, dtype=np.int64)
    dlog = np.empty(p, dtype=np.int64)
    dlog[0] = -1
    dlog[exp] = np.arange(p - 1, dtype=np.int64)
    return FieldCtx(p=p, g=g, dlog=dlog, exp=exp,
                    divisors=divisors_from_factorization(fac), factorization=fac)


def subgroup_of_order(ctx: FieldCtx, n: int) -> Subgroup:
    p = ctx.p
    if n not in ctx.divisors:
        raise ValueError(f"order {n} does not divide p-1={p - 1}")
    k = (p - 1) // n
    h = pow(ctx.g, k, p)
    elems = []
    cur = 1
    for _ in range(n):
        elems.append(cur)
        cur = cur * h % p
    return Subgroup(ctx=ctx, order=n, index=k, generator=h, elements=tuple(sorted(elems)))


def subgroups(ctx: FieldCtx) -> list[Subgroup]:
    """One subgroup per divisor of p-1, ascending by order."""
    return [subgroup_of_order(ctx, n) for n in ctx.divisors]


def subgroup_near_sqrt(ctx: FieldCtx) -> Subgroup:
    """The subgroup whose order is closest to sqrt(p); ties go to the larger order."""
    root = math.sqrt(ctx.p)
    best = max(ctx.divisors, key=lambda n: (-abs(n - root), n))
    return subgroup_of_order(ctx, best)


def mod_inverse(ctx: FieldCtx, x: int) -> int:
    if x % ctx.p == 0:
        raise ZeroInverse("0 has no inverse mod p")
    return pow(x, -1, ctx.p)

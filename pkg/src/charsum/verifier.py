"""One checker per claimed identity or bound, each returning a structured Verdict.

Identity checkers (eq2, granville, konyagin, kernel) work in exact cyclotomic
arithmetic and demand margin exactly zero.  Inequality checkers work on
magnitudes with a fixed absolute tolerance of 1e-9.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .characters import Character, character
from .cyclo import EXACT_MAX_ORDER, CycInt, reduction_rows
from .engines import (
    bilinear_S,
    bilinear_Sprime,
    exp_sum_subset,
    shifted_values_all,
)
from .errors import (
    CapacityExceeded,
    PrincipalCharacter,
    ShiftNotCoprime,
    ZeroInD,
)
from .field import FieldCtx, Subgroup, make_ctx, mod_inverse, primes_in, subgroups
from .values import Weights

TOL = 1e-9

CLAIMS = (
    "thm2",
    "thm2_sharp",
    "eps",
    "eq2",
    "lemma3",
    "kernel",
    "meanvalue2",
    "granville",
    "shkredov",
    "konyagin",
    "nonlinear",
)


@dataclass
class Verdict:
    claim: str
    params: dict
    computed: object
    target: object
    margin: float
    passed: bool
    mode: str
    kind: str = "verdict"  # "verdict" | "capacity"
    note: str = ""

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "claim": self.claim,
            "params": self.params,
            "computed": str(self.computed),
            "target": str(self.target),
            "margin": self.margin,
            "pass": self.passed,
            "mode": self.mode,
            "note": self.note,
        }

    def sort_key(self):
        return (
            self.claim,
            self.params.get("p", self.params.get("q", 0)),
            json.dumps(self.params, sort_keys=True, default=str),
        )


def _capacity_verdict(claim: str, params: dict, err: Exception) -> Verdict:
    return Verdict(claim=claim, params=params, computed="skipped", target="skipped",
                   margin=float("nan"), passed=False, mode="exact",
                   kind="capacity", note=str(err))


@lru_cache(maxsize=None)
def _reduction_matrix(m: int) -> np.ndarray:
    """(m x deg) int64 matrix reducing length-m coefficient vectors mod Phi_m."""
    return np.array(reduction_rows(m), dtype=np.int64)


def _inverse_table(ctx: FieldCtx) -> np.ndarray:
    m = ctx.p - 1
    inv = np.zeros(ctx.p, dtype=np.int64)
    inv[1:] = ctx.exp[(m - ctx.dlog[1:]) % m]
    return inv


# ---------------------------------------------------------------------------
# sqrt(p) bound on the shifted subgroup sum, and its sharpened form
# ---------------------------------------------------------------------------

def check_theorem2(ctx: FieldCtx, chi: Character, H: Subgroup) -> Verdict:
    """max over nonzero shifts a of |sum_{x in H} chi(x+a)| is strictly below sqrt(p)."""
    if chi.is_principal:
        raise PrincipalCharacter("bound requires a nonprincipal character")
    mags = np.abs(shifted_values_all(ctx, chi, H.elements))
    computed = float(np.max(mags[1:]))
    target = math.sqrt(ctx.p)
    return Verdict(
        claim="thm2",
        params={"p": ctx.p, "chi": chi.index, "H": H.order},
        computed=computed, target=target, margin=target - computed,
        passed=computed < target - TOL, mode="numeric",
    )


def check_sharpened_theorem2(ctx: FieldCtx, chi: Character, H: Subgroup) -> Verdict:
    """|S(a)|^2 <= (p|H| - |sum_{x in H} chi(x)|^2) / |H| for every nonzero a."""
    if chi.is_principal:
        raise PrincipalCharacter("bound requires a nonprincipal character")
    vals = shifted_values_all(ctx, chi, H.elements)
    inner = abs(vals[0])  # the unshifted sum over H
    n = H.order
    target = (ctx.p * n - inner**2) / n
    computed = float(np.max(np.abs(vals[1:]) ** 2))
    return Verdict(
        claim="thm2_sharp",
        params={"p": ctx.p, "chi": chi.index, "H": n},
        computed=computed, target=float(target), margin=float(target) - computed,
        passed=computed <= target + TOL, mode="numeric",
    )


def check_eps_corollary(ctx: FieldCtx, chi: Character, H: Subgroup, eps: float) -> Verdict:
    """For |H| > p^(1/2+eps): max nonzero-shift |S| < p^(-eps) |H|; vacuous otherwise."""
    p = ctx.p
    params = {"p": p, "chi": chi.index, "H": H.order, "eps": eps}
    if H.order <= p ** (0.5 + eps):
        return Verdict(claim="eps", params=params, computed=0.0, target=0.0,
                       margin=0.0, passed=True, mode="numeric", note="vacuous")
    mags = np.abs(shifted_values_all(ctx, chi, H.elements))
    computed = float(np.max(mags[1:]))
    target = p ** (-eps) * H.order
    return Verdict(claim="eps", params=params, computed=computed, target=target,
                   margin=target - computed, passed=computed < target - TOL,
                   mode="numeric")


# ---------------------------------------------------------------------------
# exact mean-value identity  sum_a |S(a)|^2 = p|D| - |D|^2
# ---------------------------------------------------------------------------

def check_eq2_identity(ctx: FieldCtx, chi: Character, D) -> Verdict:
    if chi.is_principal:
        raise PrincipalCharacter("identity requires a nonprincipal character")
    p = ctx.p
    m = p - 1
    Ds = sorted({d % p for d in D})
    if not Ds:
        raise ValueError("D must be nonempty")
    if 0 in Ds:
        raise ZeroInD("D must be a subset of the nonzero residues")
    if m > EXACT_MAX_ORDER:
        raise CapacityExceeded(f"exact mode needs root order {m} > {EXACT_MAX_ORDER}")
    Da = np.array(Ds, dtype=np.int64)
    j = chi.index
    # exponent of chi(x+a) for every x in D and every a; -1 marks chi(0)=0 terms
    V = (Da[:, None] + np.arange(p, dtype=np.int64)[None, :]) % p
    E = (j * ctx.dlog[V]) % m
    valid = V != 0
    # |S(a)|^2 expands termwise into counts of exponent differences
    diff = (E[:, None, :] - E[None, :, :]) % m
    both = valid[:, None, :] & valid[None, :, :]
    counts = np.bincount(diff[both], minlength=m)
    total = CycInt(m, counts.tolist())
    computed = total.as_integer()
    target = p * len(Ds) - len(Ds) ** 2
    passed = computed == target
    margin = float(computed - target) if computed is not None else float("nan")
    return Verdict(
        claim="eq2",
        params={"p": p, "chi": j, "D_size": len(Ds)},
        computed=computed if computed is not None else "non-integer",
        target=target, margin=margin, passed=passed, mode="exact",
    )


def eq2_via_engine(ctx: FieldCtx, chi: Character, D) -> int | None:
    """Independent route for the same identity through the generic exact engine."""
    from .engines import shifted_sum

    m = ctx.p - 1
    total = CycInt.zero(m)
    for a in range(ctx.p):
        s = shifted_sum(ctx, chi, D, a, "exact").exact
        total = total + s.abs_squared()
    return total.as_integer()


# ---------------------------------------------------------------------------
# character-averaged bound  (1/(p-1)) sum_chi |sum_{n in H} chi(n+a)| <= sqrt(|H|)
# ---------------------------------------------------------------------------

def check_meanvalue2(ctx: FieldCtx, H: Subgroup, a: int) -> Verdict:
    if a % ctx.p == 0:
        raise ShiftNotCoprime("shift a must be nonzero mod p")
    p = ctx.p
    m = p - 1
    counts = np.zeros(m)
    for n in H.elements:
        v = (n + a) % p
        if v:
            counts[ctx.dlog[v]] += 1.0
    # the sums over all p-1 characters are the DFT of the dlog count vector
    sums = np.fft.fft(counts)
    computed = float(np.sum(np.abs(sums)) / m)
    target = math.sqrt(H.order)
    return Verdict(
        claim="meanvalue2",
        params={"p": p, "H": H.order, "a": a % p},
        computed=computed, target=target, margin=target - computed,
        passed=computed <= target + TOL, mode="numeric",
    )


# ---------------------------------------------------------------------------
# exact full-dual-group identity  sum_chi |sum_{n in H} chi(n)| = p - 1
# ---------------------------------------------------------------------------

def _granville_structural(ctx: FieldCtx, H: Subgroup) -> tuple[bool, int]:
    """Exact inner sums over H for every character: |H| when the character is
    trivial on H, 0 otherwise.  Returns (structure holds, number of mismatches)."""
    p = ctx.p
    m = p - 1
    n = H.order
    dH = ctx.dlog[np.array(H.elements, dtype=np.int64)]
    J = np.arange(m, dtype=np.int64)
    cols = (J[:, None] * dH[None, :]) % m
    C = np.zeros((m, m), dtype=np.int64)
    np.add.at(C, (np.repeat(J, n), cols.ravel()), 1)
    red = C @ _reduction_matrix(m)
    trivial = (J % n) == 0
    expected = np.zeros_like(red)
    expected[trivial, 0] = n
    mismatches = int(np.count_nonzero(np.any(red != expected, axis=1)))
    return mismatches == 0, mismatches


def check_granville(ctx: FieldCtx, H: Subgroup) -> Verdict:
    ok, mismatches = _granville_structural(ctx, H)
    p = ctx.p
    total = H.index * H.order  # k characters contribute |H| each when structure holds
    return Verdict(
        claim="granville",
        params={"p": p, "H": H.order},
        computed=total if ok else f"{mismatches} structural mismatches",
        target=p - 1,
        margin=float(total - (p - 1)) if ok else float("nan"),
        passed=ok and total == p - 1, mode="exact",
    )


def check_shkredov_bound(ctx: FieldCtx, H: Subgroup) -> Verdict:
    base = check_granville(ctx, H)
    total = base.computed if base.passed else float("inf")
    return Verdict(
        claim="shkredov",
        params={"p": ctx.p, "H": H.order},
        computed=total, target=ctx.p,
        margin=float(ctx.p - total) if base.passed else float("nan"),
        passed=base.passed and total <= ctx.p, mode="exact",
    )


# ---------------------------------------------------------------------------
# exact identity for exponential sums over a general modulus q
# ---------------------------------------------------------------------------

def check_konyagin(q: int, D) -> Verdict:
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    Ds = sorted({x % q for x in D})
    if not Ds:
        raise ValueError("D must be nonempty")
    if q > EXACT_MAX_ORDER:
        raise CapacityExceeded(f"exact mode needs root order {q} > {EXACT_MAX_ORDER}")
    total = CycInt.zero(q)
    for a in range(1, q):
        s = exp_sum_subset(q, Ds, a, "exact").exact
        total = total + s.abs_squared()
    computed = total.as_integer()
    target = len(Ds) * (q - len(Ds))
    return Verdict(
        claim="konyagin",
        params={"q": q, "D_size": len(Ds)},
        computed=computed if computed is not None else "non-integer",
        target=target,
        margin=float(computed - target) if computed is not None else float("nan"),
        passed=computed == target, mode="exact",
    )


# ---------------------------------------------------------------------------
# bilinear bound |S|, |S'| <= sqrt(pXY) and the proof kernel's case table
# ---------------------------------------------------------------------------

def check_lemma3(ctx: FieldCtx, chi: Character, xi: Weights, eta: Weights, a: int) -> Verdict:
    S = bilinear_S(ctx, chi, xi, eta, a, "numeric")
    Sp = bilinear_Sprime(ctx, chi, xi, eta, a, "numeric")
    X = xi.sq_norm
    Y = eta.sq_norm
    bound = math.sqrt(ctx.p * X * Y)
    computed = max(S.magnitude, Sp.magnitude)
    return Verdict(
        claim="lemma3",
        params={"p": ctx.p, "chi": chi.index, "a": a % ctx.p},
        computed=computed, target=bound, margin=bound - computed,
        passed=computed <= bound + TOL, mode="numeric",
    )


def check_kernel_cases(ctx: FieldCtx, chi: Character, a: int, pairs=None) -> Verdict:
    """Exact check that sum_x chi(xy+a) conj(chi(x*y1+a)) matches its four-case
    closed form for every requested (y, y1) pair (default: the full grid)."""
    if chi.is_principal:
        raise PrincipalCharacter("kernel requires a nonprincipal character")
    if a % ctx.p == 0:
        raise ShiftNotCoprime("shift a must be nonzero mod p")
    p = ctx.p
    m = p - 1
    if m > EXACT_MAX_ORDER:
        raise CapacityExceeded(f"exact mode needs root order {m} > {EXACT_MAX_ORDER}")
    j = chi.index
    if pairs is None:
        grid = np.indices((p, p)).reshape(2, -1).T
    else:
        grid = np.array(pairs, dtype=np.int64) % p
    X = np.arange(p, dtype=np.int64)
    npairs = len(grid)
    V1 = (grid[:, 0:1] * X[None, :] + a) % p
    V2 = (grid[:, 1:2] * X[None, :] + a) % p
    L1 = ctx.dlog[V1]
    L2 = ctx.dlog[V2]
    diff = (j * (L1 - L2)) % m
    both = (L1 >= 0) & (L2 >= 0)
    counts = np.zeros((npairs, m), dtype=np.int64)
    rows = np.repeat(np.arange(npairs), p)
    sel = both.ravel()
    np.add.at(counts, (rows[sel], diff.ravel()[sel]), 1)
    R = _reduction_matrix(m)
    red = counts @ R

    inv = _inverse_table(ctx)
    expected = np.zeros_like(red)
    y, y1 = grid[:, 0], grid[:, 1]
    zero_both = (y == 0) & (y1 == 0)
    equal_pos = (y == y1) & (y > 0)
    generic = (y != y1) & (y > 0) & (y1 > 0)
    expected[zero_both, 0] = p
    expected[equal_pos, 0] = p - 1
    if np.any(generic):
        r = (y[generic] * inv[y1[generic]]) % p
        e = (j * ctx.dlog[r]) % m
        expected[generic] -= R[e]
    mismatches = int(np.count_nonzero(np.any(red != expected, axis=1)))
    return Verdict(
        claim="kernel",
        params={"p": p, "chi": j, "a": a % p, "pairs": npairs},
        computed=mismatches, target=0, margin=float(-mismatches),
        passed=mismatches == 0, mode="exact",
    )


# ---------------------------------------------------------------------------
# nonlinear sum bound  |sum_{x in H} chi(x(x+a))| <= sqrt(p)
# ---------------------------------------------------------------------------

def nonlinear_index_matrix(ctx: FieldCtx, H: Subgroup) -> np.ndarray:
    """Row x, column a: the residue x(x+a) mod p; shared across characters."""
    p = ctx.p
    h = np.array(H.elements, dtype=np.int64)
    A = np.arange(p, dtype=np.int64)
    return (h[:, None] * ((h[:, None] + A[None, :]) % p)) % p


def nonlinear_abs_all(ctx: FieldCtx, chi: Character, H: Subgroup,
                      index_matrix: np.ndarray | None = None) -> np.ndarray:
    if index_matrix is None:
        index_matrix = nonlinear_index_matrix(ctx, H)
    table = chi.value_table()
    return np.abs(table[index_matrix].sum(axis=0))


def check_nonlinear_bound(ctx: FieldCtx, chi: Character, H: Subgroup, a: int) -> Verdict:
    from .engines import nonlinear_sum_xxa

    computed = nonlinear_sum_xxa(ctx, chi, H, a, "numeric").magnitude
    target = math.sqrt(ctx.p)
    return Verdict(
        claim="nonlinear",
        params={"p": ctx.p, "chi": chi.index, "H": H.order, "a": a % ctx.p},
        computed=computed, target=target, margin=target - computed,
        passed=computed <= target + TOL, mode="numeric",
    )


def check_nonlinear_bound_all_shifts(ctx: FieldCtx, chi: Character, H: Subgroup,
                                     index_matrix: np.ndarray | None = None) -> Verdict:
    """One verdict per (H, chi) covering every nonzero shift a."""
    mags = nonlinear_abs_all(ctx, chi, H, index_matrix)
    computed = float(np.max(mags[1:]))
    target = math.sqrt(ctx.p)
    return Verdict(
        claim="nonlinear",
        params={"p": ctx.p, "chi": chi.index, "H": H.order, "a": "all"},
        computed=computed, target=target, margin=target - computed,
        passed=computed <= target + TOL, mode="numeric",
    )


# ---------------------------------------------------------------------------
# seeded instance generation
# ---------------------------------------------------------------------------

def _rng(seed: int, p: int, label: str) -> random.Random:
    return random.Random(f"{seed}|{p}|{label}")


def random_subsets(p: int, count: int, rng: random.Random) -> list[list[int]]:
    """Seeded subsets of [1, p-1] covering boundary and typical sizes."""
    sizes = [1, 2, max(1, math.isqrt(p)), max(1, p // 2)]
    out = []
    for i in range(count):
        size = min(sizes[i % len(sizes)], p - 1)
        out.append(sorted(rng.sample(range(1, p), size)))
    return out


def random_weights(p: int, rng: random.Random) -> Weights:
    vals = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(p)]
    return Weights(vals)


# ---------------------------------------------------------------------------
# the suite runner
# ---------------------------------------------------------------------------

def _suite_for_prime(p: int, claims: tuple, seed: int, budget=None) -> list[Verdict]:
    verdicts: list[Verdict] = []
    try:
        ctx = make_ctx(p)
    except CapacityExceeded as e:
        return [_capacity_verdict(c, {"p": p}, e) for c in claims if c != "konyagin"]
    m = p - 1
    Hs = subgroups(ctx)
    nontrivial = [character(ctx, j) for j in range(1, m)]

    def within(items):
        return items if budget is None else items[:budget]

    if "thm2" in claims or "thm2_sharp" in claims or "eps" in claims:
        grid = within([(H, chi) for H in Hs for chi in nontrivial])
        for H, chi in grid:
            if "thm2" in claims:
                verdicts.append(check_theorem2(ctx, chi, H))
            if "thm2_sharp" in claims:
                verdicts.append(check_sharpened_theorem2(ctx, chi, H))
            if "eps" in claims:
                verdicts.append(check_eps_corollary(ctx, chi, H, eps=0.1))

    if "eq2" in claims:
        if m > EXACT_MAX_ORDER:
            verdicts.append(_capacity_verdict(
                "eq2", {"p": p}, CapacityExceeded(f"p-1={m} > {EXACT_MAX_ORDER}")))
        else:
            rng = _rng(seed, p, "eq2")
            dsets = [list(H.elements) for H in Hs] + random_subsets(p, 20, rng)
            grid = within([(chi, i) for chi in nontrivial for i in range(len(dsets))])
            for chi, i in grid:
                v = check_eq2_identity(ctx, chi, dsets[i])
                v.params["D_index"] = i
                verdicts.append(v)

    if "lemma3" in claims:
        rng = _rng(seed, p, "lemma3")
        chis = [nontrivial[rng.randrange(len(nontrivial))] for _ in range(min(5, len(nontrivial)))]
        for ci, chi in enumerate(within(chis)):
            for w in range(5):
                xi = random_weights(p, rng)
                eta = random_weights(p, rng)
                a = rng.randrange(1, p)
                v = check_lemma3(ctx, chi, xi, eta, a)
                v.params["instance"] = f"{ci}:{w}"
                verdicts.append(v)

    if "kernel" in claims:
        if m > EXACT_MAX_ORDER:
            verdicts.append(_capacity_verdict(
                "kernel", {"p": p}, CapacityExceeded(f"p-1={m} > {EXACT_MAX_ORDER}")))
        else:
            rng = _rng(seed, p, "kernel")
            combos = [(nontrivial[rng.randrange(len(nontrivial))], rng.randrange(1, p))
                      for _ in range(min(5, len(nontrivial)))]
            pairs = None
            if p > 101:
                pairs = [(rng.randrange(p), rng.randrange(p)) for _ in range(500)]
            for chi, a in within(combos):
                verdicts.append(check_kernel_cases(ctx, chi, a, pairs=pairs))

    if "meanvalue2" in claims:
        grid = within([(H, a) for H in Hs for a in range(1, p)])
        for H, a in grid:
            verdicts.append(check_meanvalue2(ctx, H, a))

    if "granville" in claims:
        for H in within(Hs):
            verdicts.append(check_granville(ctx, H))

    if "shkredov" in claims:
        for H in within(Hs):
            verdicts.append(check_shkredov_bound(ctx, H))

    if "nonlinear" in claims:
        for H in within(Hs):
            M = nonlinear_index_matrix(ctx, H)
            for chi in nontrivial:
                verdicts.append(check_nonlinear_bound_all_shifts(ctx, chi, H, M))

    return verdicts


def _konyagin_verdicts(q_min: int, q_max: int, seed: int, budget=None) -> list[Verdict]:
    verdicts = []
    for q in range(max(2, q_min), q_max + 1):
        rng = _rng(seed, q, "konyagin")
        if q > EXACT_MAX_ORDER:
            verdicts.append(_capacity_verdict(
                "konyagin", {"q": q}, CapacityExceeded(f"q={q} > {EXACT_MAX_ORDER}")))
            continue
        dsets = random_subsets(q, 10, rng) if q > 2 else [[1]] * 10
        if budget is not None:
            dsets = dsets[:budget]
        for i, D in enumerate(dsets):
            v = check_konyagin(q, D)
            v.params["D_index"] = i
            verdicts.append(v)
    return verdicts


def run_suite(p_min: int = 3, p_max: int = 61, claims=None, mode: str = "auto",
              seed: int = 0, workers: int = 1, budget=None) -> list[Verdict]:
    """Run every applicable checker over all primes in [p_min, p_max].

    Deterministic for a fixed (range, claims, seed) regardless of worker count;
    verdicts come back sorted by (claim, modulus, parameters).
    """
    if claims is None:
        claims = CLAIMS
    claims = tuple(claims)
    unknown = set(claims) - set(CLAIMS)
    if unknown:
        raise ValueError(f"unknown claims: {sorted(unknown)}")
    primes = list(primes_in(max(p_min, 3), p_max))
    prime_claims = tuple(c for c in claims if c != "konyagin")

    verdicts: list[Verdict] = []
    if prime_claims:
        if workers > 1 and len(primes) > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=workers) as pool:
                for vs in pool.map(_suite_worker,
                                   [(p, prime_claims, seed, budget) for p in primes]):
                    verdicts.extend(vs)
        else:
            for p in primes:
                verdicts.extend(_suite_for_prime(p, prime_claims, seed, budget))

    if "konyagin" in claims:
        verdicts.extend(_konyagin_verdicts(p_min, p_max, seed, budget))

    verdicts.sort(key=Verdict.sort_key)
    return verdicts


def _suite_worker(args) -> list[Verdict]:
    return _suite_for_prime(*args)

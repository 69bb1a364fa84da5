"""Goldbach couples for even 2n: canonical descent search, full enumeration,
quasi-couples, and the right-triangle identity attached to each couple.

The canonical couple comes from one fixed criterion: walk candidate primes
down from prev_prime(2n) and stop at the first whose remainder 2n - p is
prime. Enumeration is an independent half-range scan; the ideal-theoretic
route from the ring analysis is available as an opt-in cross-check.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum

from .primes import (
    DEFAULT_CONVENTION,
    PrimeConvention,
    _ensure_base_primes,
    is_prime,
    prev_prime,
    prime_flags,
)
from .zn import Factorization, factorize, totient

__all__ = [
    "CoupleKind",
    "GoldbachCouple",
    "DescentStep",
    "DescentTrace",
    "GoldbachTriangle",
    "GoldbachCounterexample",
    "canonical_couple",
    "enumerate_couples",
    "quasi_couples",
    "noether_status",
    "goldbach_triangle",
]


class CoupleKind(Enum):
    TRIVIAL = "trivial"  # (n, n) with n prime
    NOETHER = "noether"  # (1, 2n-1), needs 1 to count as prime
    ORDINARY = "ordinary"


@dataclass(frozen=True)
class GoldbachCouple:
    """Unordered prime pair p <= q with p + q = two_n."""

    p: int
    q: int
    two_n: int
    kind: CoupleKind
    canonical: bool

    def __post_init__(self) -> None:
        if not (0 < self.p <= self.q) or self.p + self.q != self.two_n:
            raise ValueError(f"not a couple for {self.two_n}: ({self.p}, {self.q})")
        if self.kind is CoupleKind.NOETHER and self.p != 1:
            raise ValueError(f"({self.p}, {self.q}) cannot be a top couple")
        if self.kind is CoupleKind.TRIVIAL and self.p != self.q:
            raise ValueError(f"({self.p}, {self.q}) cannot be a middle couple")

    def pair(self) -> tuple[int, int]:
        return (self.p, self.q)


@dataclass(frozen=True)
class DescentStep:
    candidate: int  # the prime tried as the larger member
    remainder: int  # two_n - candidate
    remainder_factorization: Factorization | None  # None iff remainder is prime


@dataclass(frozen=True)
class DescentTrace:
    two_n: int
    steps: tuple[DescentStep, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("a descent trace cannot be empty")
        cands = [s.candidate for s in self.steps]
        if any(a >= b for a, b in zip(cands[1:], cands)):
            raise ValueError(f"descent candidates must strictly decrease: {cands}")

    def depth(self) -> int:
        return len(self.steps)


class GoldbachCounterexample(Exception):
    """Descent exhausted every candidate prime without finding a couple."""

    def __init__(self, two_n: int, conv: PrimeConvention, steps: tuple[DescentStep, ...]):
        self.two_n = two_n
        self.convention = conv
        self.steps = steps
        super().__init__(f"descent exhausted for {two_n} under {conv.value}")


def _validate_even(two_n: int, conv: PrimeConvention) -> None:
    if two_n < 2 or two_n % 2 == 1:
        raise ValueError(f"needs an even number >= 2, got {two_n}")
    if two_n == 2 and conv is PrimeConvention.EXCLUDE1:
        raise ValueError("2 = 1 + 1 needs the unit counted as prime; use include1")


def _classify(p: int, q: int, two_n: int) -> CoupleKind:
    if p == 1:  # at two_n = 2 the pair (1,1) is also trivial; this kind wins
        return CoupleKind.NOETHER
    if p == q:
        return CoupleKind.TRIVIAL
    return CoupleKind.ORDINARY


def canonical_couple(
    two_n: int, conv: PrimeConvention = DEFAULT_CONVENTION
) -> tuple[GoldbachCouple, DescentTrace]:
    """Descend candidate primes from prev_prime(2n); the first prime
    remainder ends the search and names the canonical couple."""
    _validate_even(two_n, conv)
    steps: list[DescentStep] = []
    cand = prev_prime(two_n, conv)
    while cand is not None:
        rem = two_n - cand
        if is_prime(rem, conv):
            steps.append(DescentStep(cand, rem, None))
            trace = DescentTrace(two_n, tuple(steps))
            p, q = min(cand, rem), max(cand, rem)
            return GoldbachCouple(p, q, two_n, _classify(p, q, two_n), True), trace
        steps.append(DescentStep(cand, rem, factorize(rem)))
        cand = prev_prime(cand, conv)
    raise GoldbachCounterexample(two_n, conv, tuple(steps))


# shared primality flags (1 excluded; the unit is special-cased by callers)
_flags = bytearray()


def _ensure_flags(limit: int) -> bytearray:
    global _flags
    if len(_flags) <= limit:
        size = max(limit, 2 * len(_flags), 1 << 16)
        _flags = prime_flags(size, PrimeConvention.EXCLUDE1)
    return _flags


def enumerate_couples(
    two_n: int,
    conv: PrimeConvention = DEFAULT_CONVENTION,
    *,
    ideal_check: bool = False,
) -> list[GoldbachCouple]:
    """All couples for 2n, ascending by smaller member, canonical one marked.

    ideal_check replays the enumeration through the ring-theoretic route
    (maximal ideals over the modulus r) and insists on set equality; it is
    opt-in because that route is far slower than the scan.
    """
    _validate_even(two_n, conv)
    n = two_n // 2
    flags = _ensure_flags(two_n)
    pairs: list[tuple[int, int]] = []
    if conv is PrimeConvention.INCLUDE1 and (two_n == 2 or flags[two_n - 1]):
        pairs.append((1, two_n - 1))
    base = _ensure_base_primes(n)
    for p in base[: bisect.bisect_right(base, n)]:
        if flags[two_n - p]:
            pairs.append((p, two_n - p))
    couples = []
    if pairs:
        star = canonical_couple(two_n, conv)[0].pair()
        for p, q in pairs:
            couples.append(
                GoldbachCouple(p, q, two_n, _classify(p, q, two_n), (p, q) == star)
            )
    if ideal_check:
        _check_against_ideal_route(two_n, conv, pairs)
    return couples


def _check_against_ideal_route(
    two_n: int, conv: PrimeConvention, pairs: list[tuple[int, int]]
) -> None:
    from .ideals import goldbach_ideal_analysis

    rep = goldbach_ideal_analysis(two_n, conv)
    expected = set(rep.couples)
    if rep.noether is not None:
        expected.add(rep.noether)
    if rep.trivial is not None:
        expected.add(rep.trivial)
    if expected != set(pairs):
        raise RuntimeError(
            f"couple enumeration disagrees with the ideal route at {two_n}: "
            f"scan {sorted(pairs)}, ideals {sorted(expected)}"
        )


def quasi_couples(
    two_n: int, conv: PrimeConvention = DEFAULT_CONVENTION
) -> list[tuple[int, int]]:
    """Unit pairs (a, 2n-a) with a composite member: sums that stay inside
    the unit group but fail to be couples."""
    _validate_even(two_n, conv)
    flags = _ensure_flags(two_n)

    def counts_prime(v: int) -> bool:
        return bool(flags[v]) or (v == 1 and conv is PrimeConvention.INCLUDE1)

    out = []
    for a in range(1, two_n // 2 + 1, 2):
        b = two_n - a
        if math.gcd(a, two_n) != 1:
            continue
        if not (counts_prime(a) and counts_prime(b)):
            out.append((a, b))
    return out


def noether_status(two_n: int) -> tuple[bool, int]:
    """Whether (1, 2n-1) closes into a couple, decided through the unit-group
    order: the totient of 2n-1 hits 2n-2 exactly for prime 2n-1."""
    if two_n < 4 or two_n % 2 == 1:
        raise ValueError(f"needs an even number >= 4, got {two_n}")
    phi = totient(two_n - 1)
    via_totient = phi == two_n - 2
    if via_totient != is_prime(two_n - 1, PrimeConvention.EXCLUDE1):
        raise RuntimeError(f"totient and primality disagree at {two_n - 1}")
    return via_totient, phi


@dataclass(frozen=True)
class GoldbachTriangle:
    """Right-triangle data over the diameter [0, 2n]: the couple's members
    split it at a point whose altitude h satisfies h^2 = p*q."""

    altitude_sq: int  # p * q
    half_gap: int  # (q - p) / 2
    radius: int  # n
    identity_ok: bool  # p*q + half_gap^2 == n^2


def goldbach_triangle(couple: GoldbachCouple) -> GoldbachTriangle:
    p, q, n = couple.p, couple.q, couple.two_n // 2
    alt_sq = p * q
    half_gap = (q - p) // 2
    ok = alt_sq + half_gap * half_gap == n * n
    if not ok:
        raise RuntimeError(f"triangle identity failed for ({p}, {q})")
    return GoldbachTriangle(alt_sq, half_gap, n, ok)

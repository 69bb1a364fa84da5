"""Prime pairs separated by a fixed even gap, their dyadic block layout,
and primes between consecutive squares.

A pair (q, p) with p - q = 2n lives in the dyadic block indexed by the
smallest m >= 1 with q <= 2n * 2^m, so block 1 covers q in [0, 4n] and
block j >= 2 covers (2n * 2^(j-1), 2n * 2^j].
"""
from __future__ import annotations

from dataclasses import dataclass

from .primes import (
    DEFAULT_CONVENTION,
    PrimeConvention,
    is_prime,
    primes_in_range,
)

__all__ = [
    "PolignacPair",
    "PolignacCounterexample",
    "LegendreCounterexample",
    "polignac_pairs",
    "polignac_dyadic_search",
    "pre_polignac_witness",
    "legendre_primes",
]


def _block_index(q: int, gap: int) -> int:
    m = 1
    while q > gap << m:
        m += 1
    return m


@dataclass(frozen=True)
class PolignacPair:
    q: int
    p: int
    gap: int
    block: int  # smallest m >= 1 with q <= gap * 2**m

    def __post_init__(self) -> None:
        if self.p - self.q != self.gap:
            raise ValueError(f"({self.q}, {self.p}) is not a gap-{self.gap} pair")
        if self.block != _block_index(self.q, self.gap):
            raise ValueError(f"wrong block {self.block} for q={self.q}, gap={self.gap}")

    def pair(self) -> tuple[int, int]:
        return (self.q, self.p)


class PolignacCounterexample(Exception):
    """No prime q < 2n with q + 2n prime; would refute the gap certificate."""

    def __init__(self, two_n: int, conv: PrimeConvention):
        self.two_n = two_n
        self.convention = conv
        super().__init__(f"no witness below {two_n} under {conv.value}")


class LegendreCounterexample(Exception):
    """An interval [n^2, (n+1)^2] without a prime; never observed."""

    def __init__(self, n: int, lo: int, hi: int, conv: PrimeConvention):
        self.n = n
        self.lo = lo
        self.hi = hi
        self.convention = conv
        super().__init__(f"no prime in [{lo}, {hi}] under {conv.value}")


def _validate_gap(two_n: int) -> None:
    if two_n < 2 or two_n % 2 == 1:
        raise ValueError(f"needs an even gap >= 2, got {two_n}")


def polignac_pairs(
    two_n: int, q_max: int, conv: PrimeConvention = DEFAULT_CONVENTION
) -> list[PolignacPair]:
    """All pairs (q, q + 2n) with q <= q_max and both members prime,
    ascending by q."""
    _validate_gap(two_n)
    if q_max < 1:
        raise ValueError(f"needs a positive search bound, got {q_max}")
    out = []
    for q in primes_in_range(1, q_max, conv):
        if is_prime(q + two_n, conv):
            out.append(PolignacPair(q, q + two_n, two_n, _block_index(q, two_n)))
    return out


def polignac_dyadic_search(
    two_n: int, m_max: int, conv: PrimeConvention = DEFAULT_CONVENTION
) -> dict[int, list[PolignacPair]]:
    """Pairs with q <= 2n * 2^m_max, partitioned by dyadic block index."""
    _validate_gap(two_n)
    if m_max < 1:
        raise ValueError(f"needs at least one dyadic block, got m_max={m_max}")
    blocks: dict[int, list[PolignacPair]] = {j: [] for j in range(1, m_max + 1)}
    for pair in polignac_pairs(two_n, two_n << m_max, conv):
        blocks[pair.block].append(pair)
    return blocks


def pre_polignac_witness(
    two_n: int, conv: PrimeConvention = DEFAULT_CONVENTION
) -> int:
    """Smallest prime q < 2n with q + 2n prime; the per-gap certificate."""
    _validate_gap(two_n)
    for q in primes_in_range(1, two_n - 1, conv):
        if is_prime(q + two_n, conv):
            return q
    raise PolignacCounterexample(two_n, conv)


def legendre_primes(
    n: int, conv: PrimeConvention = DEFAULT_CONVENTION
) -> list[int]:
    """Primes in [n^2, (n+1)^2]; raises rather than ever return empty."""
    if n < 1:
        raise ValueError(f"needs n >= 1, got {n}")
    lo, hi = n * n, (n + 1) * (n + 1)
    out = primes_in_range(lo, hi, conv)
    if not out:
        raise LegendreCounterexample(n, lo, hi, conv)
    return out

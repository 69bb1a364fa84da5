"""Prime generation, primality, and prime-gap statistics.

Responsibility: everything about the set P of primes lives here, including
the convention switch for whether 1 belongs to P. Other modules never roll
their own primality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

__all__ = [
    "PrimeConvention",
    "DEFAULT_CONVENTION",
    "DEFAULT_SEGMENT_SIZE",
    "DEFAULT_SIEVE_CROSSOVER",
    "PrimeTable",
    "TwinStats",
    "is_prime",
    "prev_prime",
    "next_prime",
    "primes_in_range",
    "prime_flags",
    "is_isolated",
    "twin_stats",
]


class PrimeConvention(Enum):
    """Whether the number 1 counts as prime.

    Only the input 1 is affected; every n >= 2 tests identically under both
    modes, and 0 and negatives are non-prime under both.
    """

    INCLUDE1 = "include1"
    EXCLUDE1 = "exclude1"

    @classmethod
    def parse(cls, text: str) -> "PrimeConvention":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown prime convention {text!r}; expected 'include1' or 'exclude1'"
            ) from None


DEFAULT_CONVENTION = PrimeConvention.INCLUDE1
DEFAULT_SEGMENT_SIZE = 1 << 20
DEFAULT_SIEVE_CROSSOVER = 10**8

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Strong-pseudoprime witness tiers; each row is proven exact for n below its
# bound, the last one for the full 64-bit range.
_MR_TIERS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (4_759_123_141, (2, 7, 61)),
    (1_122_004_669_633, (2, 13, 23, 1_662_803)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (1 << 64, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)


def _strong_probable_prime(n: int, bases: tuple[int, ...]) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int, conv: PrimeConvention = DEFAULT_CONVENTION) -> bool:
    """Exact primality for n < 2**64. Deterministic; no error path.

    0 and negatives are non-prime; 1 is prime exactly under Include1.
    """
    if n < 2:
        return n == 1 and conv is PrimeConvention.INCLUDE1
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    for bound, bases in _MR_TIERS:
        if n < bound:
            return _strong_probable_prime(n, bases)
    raise ValueError(f"{n} is beyond the supported 64-bit range")


def prev_prime(n: int, conv: PrimeConvention = DEFAULT_CONVENTION) -> int | None:
    """Largest prime strictly below n, or None when none exists."""
    if n > 3:
        k = n - 1 if n % 2 == 0 else n - 2
        while k >= 3:
            if is_prime(k, conv):
                return k
            k -= 2
    if n > 2:
        return 2
    if n > 1 and conv is PrimeConvention.INCLUDE1:
        return 1
    return None


def next_prime(n: int, conv: PrimeConvention = DEFAULT_CONVENTION) -> int:
    """Smallest prime strictly above n (exists for every n by Bertrand)."""
    if n < 1:
        return 1 if conv is PrimeConvention.INCLUDE1 else 2
    if n < 2:
        return 2
    k = n + 1 if n % 2 == 0 else n + 2
    if n == 2:
        return 3
    while not is_prime(k, conv):
        k += 2
    return k


# --- segmented sieve ---------------------------------------------------------

_base_primes: list[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
_base_limit = 31


def _ensure_base_primes(limit: int) -> list[int]:
    """Grow the cached base-prime list to cover [2, limit]."""
    global _base_primes, _base_limit
    if limit <= _base_limit:
        return _base_primes
    limit = max(limit, 2 * _base_limit, 1 << 10)
    half = (limit - 1) // 2  # flags[i] <-> odd value 2i+1
    flags = bytearray([1]) * (half + 1)
    flags[0] = 0  # 1 is handled by convention, not by the sieve
    i = 1
    while (2 * i + 1) * (2 * i + 1) <= limit:
        if flags[i]:
            p = 2 * i + 1
            start = (p * p - 1) // 2
            flags[start::p] = bytearray(len(range(start, half + 1, p)))
        i += 1
    _base_primes = [2] + [2 * i + 1 for i in range(1, half + 1) if flags[i]]
    _base_limit = limit
    return _base_primes


def _odd_flags(lo: int, hi: int) -> tuple[int, bytearray]:
    """Flags for odd values in [lo, hi]: returns (first_odd, flags).

    flags[i] == 1 iff first_odd + 2i is prime (in the n >= 3 sense; the caller
    deals with 1 and 2).
    """
    first = lo if lo % 2 == 1 else lo + 1
    if first > hi:
        return first, bytearray()
    count = (hi - first) // 2 + 1
    flags = bytearray([1]) * count
    root = math.isqrt(hi)
    for p in _ensure_base_primes(root):
        if p == 2:
            continue
        if p * p > hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start > hi:
            continue
        idx = (start - first) // 2
        flags[idx::p] = bytearray(len(range(idx, count, p)))
    if first == 1:
        flags[0] = 0
    return first, flags


def primes_in_range(
    lo: int,
    hi: int,
    conv: PrimeConvention = DEFAULT_CONVENTION,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    crossover: int = DEFAULT_SIEVE_CROSSOVER,
) -> list[int]:
    """Ascending primes in the inclusive range [lo, hi] under conv.

    Sieves when hi is below the crossover, otherwise tests each candidate
    individually (windows above the crossover are expected to be narrow).
    """
    if lo < 0 or lo > hi:
        raise ValueError(f"invalid range [{lo}, {hi}]: need 0 <= lo <= hi")
    out: list[int] = []
    if lo <= 1 <= hi and conv is PrimeConvention.INCLUDE1:
        out.append(1)
    if hi < 2:
        return out
    if lo <= 2:
        out.append(2)
    start = max(lo, 3)
    if hi <= crossover:
        seg_lo = start
        while seg_lo <= hi:
            seg_hi = min(seg_lo + segment_size - 1, hi)
            first, flags = _odd_flags(seg_lo, seg_hi)
            out.extend(first + 2 * i for i, f in enumerate(flags) if f)
            seg_lo = seg_hi + 1
    else:
        k = start if start % 2 == 1 else start + 1
        while k <= hi:
            if is_prime(k, conv):
                out.append(k)
            k += 2
    return out


def prime_flags(hi: int, conv: PrimeConvention = DEFAULT_CONVENTION) -> bytearray:
    """One byte per value in [0, hi]; 1 marks a prime under conv.

    The bulk primitive behind range sweeps: built with slice assignments so a
    10^6-wide table costs well under a second.
    """
    if hi < 0:
        raise ValueError("hi must be nonnegative")
    out = bytearray(hi + 1)
    if hi >= 3:
        first, flags = _odd_flags(3, hi)
        out[first::2] = flags
    if hi >= 2:
        out[2] = 1
    if hi >= 1 and conv is PrimeConvention.INCLUDE1:
        out[1] = 1
    return out


@dataclass(frozen=True)
class PrimeTable:
    """Bit-indexed primality over an inclusive range; read-only once built.

    Safe to share across workers. Queries outside [lo, hi] are errors.
    """

    lo: int
    hi: int
    convention: PrimeConvention
    _bits: bytes

    @classmethod
    def build(
        cls,
        lo: int,
        hi: int,
        conv: PrimeConvention = DEFAULT_CONVENTION,
        *,
        segment_size: int = DEFAULT_SEGMENT_SIZE,
    ) -> "PrimeTable":
        if lo < 0 or lo > hi:
            raise ValueError(f"invalid range [{lo}, {hi}]: need 0 <= lo <= hi")
        nbits = hi - lo + 1
        bits = bytearray((nbits + 7) // 8)
        seg_lo = max(lo, 3)
        while seg_lo <= hi:
            seg_hi = min(seg_lo + segment_size - 1, hi)
            first, flags = _odd_flags(seg_lo, seg_hi)
            for i, f in enumerate(flags):
                if f:
                    off = first + 2 * i - lo
                    bits[off >> 3] |= 1 << (off & 7)
            seg_lo = seg_hi + 1
        if lo <= 2 <= hi:
            off = 2 - lo
            bits[off >> 3] |= 1 << (off & 7)
        if lo <= 1 <= hi and conv is PrimeConvention.INCLUDE1:
            off = 1 - lo
            bits[off >> 3] |= 1 << (off & 7)
        return cls(lo, hi, conv, bytes(bits))

    def __contains__(self, k: int) -> bool:
        if not self.lo <= k <= self.hi:
            raise ValueError(f"{k} outside table bounds [{self.lo}, {self.hi}]")
        off = k - self.lo
        return bool(self._bits[off >> 3] & (1 << (off & 7)))

    def flags(self) -> bytearray:
        """One byte per value in [lo, hi]; 1 marks a prime. For hot loops."""
        out = bytearray(self.hi - self.lo + 1)
        bits = self._bits
        for off in range(len(out)):
            if bits[off >> 3] & (1 << (off & 7)):
                out[off] = 1
        return out


@dataclass(frozen=True)
class TwinStats:
    """Twin pairs (p, p+2) with p+2 <= n_max, plus Brun-style running sums."""

    n_max: int
    count: int
    pairs: tuple[tuple[int, int], ...]
    brun_sum: Fraction
    brun_bound: float  # N/(ln N)^2, the C=1 shape comparison only


def twin_stats(n_max: int, conv: PrimeConvention = DEFAULT_CONVENTION) -> TwinStats:
    if n_max < 2:
        raise ValueError(f"twin_stats needs n_max >= 2, got {n_max}")
    lower = 1 if conv is PrimeConvention.INCLUDE1 else 2
    primes = primes_in_range(lower, n_max, conv)
    in_set = set(primes)
    pairs = tuple((p, p + 2) for p in primes if p + 2 <= n_max and p + 2 in in_set)
    acc = Fraction(0)
    for p, q in pairs:
        acc += Fraction(1, p) + Fraction(1, q)
    bound = n_max / math.log(n_max) ** 2
    return TwinStats(n_max, len(pairs), pairs, acc, bound)


def is_isolated(p: int, conv: PrimeConvention = DEFAULT_CONVENTION) -> bool:
    """True iff neither p-2 nor p+2 is prime. Input must itself be prime."""
    if not is_prime(p, conv):
        raise ValueError(f"{p} is not prime under {conv.value}")
    return not is_prime(p - 2, conv) and not is_prime(p + 2, conv)

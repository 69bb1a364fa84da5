"""Triangular numbers and their identities, the square-triangular chain,
three-part triangular decompositions, exact power sums, parabolic primes
k^2 + 1 with their zeta-style estimate, and integer-distance classification
of lattice segments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .primes import DEFAULT_CONVENTION, PrimeConvention, is_prime
from .zn import totient

__all__ = [
    "TriangleWitness",
    "ParabolicRecord",
    "LineKind",
    "DecompositionCounterexample",
    "triangle_number",
    "is_triangular",
    "triangle_index",
    "square_triangular",
    "three_triangular",
    "faulhaber",
    "parabolic_primes",
    "zeta_partial",
    "ghost_classify",
]


def triangle_number(n: int) -> int:
    if n < 0:
        raise ValueError(f"needs n >= 0, got {n}")
    return n * (n + 1) // 2


def is_triangular(x: int) -> bool:
    if x < 0:
        return False
    r = math.isqrt(8 * x + 1)
    return r * r == 8 * x + 1


def triangle_index(x: int) -> int:
    """The n with T_n = x, for triangular x."""
    if not is_triangular(x):
        raise ValueError(f"{x} is not triangular")
    return (math.isqrt(8 * x + 1) - 1) // 2


@dataclass(frozen=True)
class TriangleWitness:
    """T_n together with its predecessor split of the square: for n >= 1,
    T_n + T_(n-1) = n^2."""

    n: int
    t_n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"needs n >= 0, got {self.n}")
        if self.t_n != self.n * (self.n + 1) // 2:
            raise ValueError(f"T_{self.n} is not {self.t_n}")

    @classmethod
    def of(cls, n: int) -> "TriangleWitness":
        return cls(n, triangle_number(n))

    def square_parts(self) -> tuple[int, int]:
        """(T_(n-1), T_n), summing to n^2."""
        prev = triangle_number(self.n - 1) if self.n else 0
        return (prev, self.t_n)


def square_triangular(k: int) -> int:
    """k-th member of the chain S(1) = 1, S(k+1) = 4 S(k) (8 S(k) + 1);
    every member is checked to be both triangular and a perfect square."""
    if k < 1:
        raise ValueError(f"needs k >= 1, got {k}")
    s = 1
    for _ in range(k - 1):
        s = 4 * s * (8 * s + 1)
    root = math.isqrt(s)
    if root * root != s or not is_triangular(s):
        raise RuntimeError(f"chain member {s} lost its dual form")
    return s


class DecompositionCounterexample(Exception):
    """No sum of at most three triangular numbers hit the target."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"no triangular decomposition found for {n}")


_tris: list[int] = []
_tri_set: set[int] = set()


def _triangulars_to(n: int) -> list[int]:
    k = len(_tris)
    while not _tris or _tris[-1] < n:
        k += 1
        t = k * (k + 1) // 2
        _tris.append(t)
        _tri_set.add(t)
    return _tris


def three_triangular(n: int) -> list[int]:
    """A decomposition of n into at most three triangular numbers, parts
    descending; among all decompositions the one whose ascending part list
    is lexicographically smallest."""
    if n < 1:
        raise ValueError(f"needs n >= 1, got {n}")
    tris = _triangulars_to(n)
    for a in tris:
        if a > n:
            break
        rest = n - a
        if rest == 0:
            return [a]
        if rest < a:
            continue
        for b in tris:
            if b < a:
                continue
            if b > rest // 2:
                break
            if rest - b in _tri_set:
                return [rest - b, b, a]
        if rest in _tri_set:
            return [rest, a]
    raise DecompositionCounterexample(n)


# Bernoulli numbers with the plus convention: flipping the sign of B_1 in
# the standard recurrence makes the power sum include its top term
_MAX_POWER = 12


def _bernoulli_plus() -> list[Fraction]:
    bern = [Fraction(1)]
    for m in range(1, _MAX_POWER + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * bern[j]
        bern.append(-acc / (m + 1))
    bern[1] = Fraction(1, 2)
    return bern


_BERNOULLI = _bernoulli_plus()


def faulhaber(m: int, n: int) -> int:
    """Sum of k^m for k = 1..n, through the exact Bernoulli expansion."""
    if not 0 <= m <= _MAX_POWER:
        raise ValueError(f"exponent must lie in [0, {_MAX_POWER}], got {m}")
    if n < 0:
        raise ValueError(f"needs n >= 0, got {n}")
    total = Fraction(0)
    for j in range(m + 1):
        total += math.comb(m + 1, j) * _BERNOULLI[j] * n ** (m + 1 - j)
    total /= m + 1
    if total.denominator != 1:
        raise RuntimeError(f"power sum came out fractional: {total}")
    return int(total)


@dataclass(frozen=True)
class ParabolicRecord:
    """k alongside k^2 + 1, with the primality verdict and the independent
    unit-count check: k^2 + 1 is prime exactly when its totient is k^2."""

    k: int
    p: int
    is_parabolic: bool
    totient_check: bool

    def __post_init__(self) -> None:
        if self.k < 0 or self.p != self.k * self.k + 1:
            raise ValueError(f"{self.p} is not {self.k}^2 + 1")
        if self.is_parabolic != self.totient_check:
            raise ValueError(
                f"primality and totient disagree at k={self.k}: "
                f"prime={self.is_parabolic}, totient hit={self.totient_check}"
            )


def parabolic_primes(
    k_max: int, conv: PrimeConvention = DEFAULT_CONVENTION
) -> list[ParabolicRecord]:
    """Records for k = 1..k_max; construction re-verifies the totient
    equivalence on every row."""
    if k_max < 1:
        raise ValueError(f"needs k_max >= 1, got {k_max}")
    out = []
    for k in range(1, k_max + 1):
        p = k * k + 1
        out.append(ParabolicRecord(k, p, is_prime(p, conv), totient(p) == k * k))
    return out


# strict lower bound of pi^2/6 by a partial sum; far above any value the
# parabolic series can reach (1 + sum over even k of 1/k^2 < 1.42)
_ZETA2_FLOOR = sum((Fraction(1, j * j) for j in range(1, 33)), Fraction(0))


def zeta_partial(k_max: int) -> tuple[Fraction, float]:
    """(sum of 1/(p - 1) over parabolic p = k^2 + 1 with k <= k_max, pi^2/6).

    The sum is exact; it must stay strictly below a rational lower bound
    of pi^2/6 and, from k_max = 2 on, strictly above 1."""
    if k_max < 1:
        raise ValueError(f"needs k_max >= 1, got {k_max}")
    total = Fraction(0)
    for k in range(1, k_max + 1):
        if is_prime(k * k + 1, PrimeConvention.EXCLUDE1):
            total += Fraction(1, k * k)
    if total >= _ZETA2_FLOOR:
        raise RuntimeError(f"series estimate {total} escaped its ceiling")
    if k_max >= 2 and total <= 1:
        raise RuntimeError(f"series estimate {total} fell under 1")
    return total, math.pi * math.pi / 6


class LineKind(Enum):
    METRIC_REGULAR = "metric-regular"
    GHOST = "ghost"


def ghost_classify(
    a: tuple[int, int], b: tuple[int, int]
) -> tuple[LineKind, int]:
    """Classify the segment between two lattice points by whether its
    Euclidean length is an integer; returns the kind and squared length."""
    d2 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
    r = math.isqrt(d2)
    kind = LineKind.METRIC_REGULAR if r * r == d2 else LineKind.GHOST
    return kind, d2

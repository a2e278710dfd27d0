"""Exact integer/rational primitives shared by the rest of the package.

Integers are plain Python ints and rationals are :class:`fractions.Fraction`,
which is always stored in lowest terms with a positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import List

Rational = Fraction

__all__ = [
    "Rational",
    "HarmonicTable",
    "binomial",
    "harmonic",
    "rising_factorial",
    "central_term",
]


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, with C(n, k) = 0 when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def harmonic(n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"harmonic needs n >= 0, got n={n}")
    # summing over a common denominator is far cheaper than n Fraction adds
    den = factorial(n)
    return Fraction(sum(den // j for j in range(1, n + 1)), den)


def rising_factorial(x: Fraction | int, k: int) -> Fraction:
    """Pochhammer symbol (x)_k = x (x+1) ... (x+k-1); (x)_0 = 1."""
    if k < 0:
        raise ValueError(f"rising_factorial needs k >= 0, got k={k}")
    x = Fraction(x)
    num, den = 1, 1
    for j in range(k):
        num *= x.numerator + j * x.denominator
        den *= x.denominator
    return Fraction(num, den)


def central_term(k: int) -> Fraction:
    """(3k)! / (3^{3k} k!^3), i.e. (1/3)_k (2/3)_k / (1)_k^2."""
    if k < 0:
        raise ValueError(f"central_term needs k >= 0, got k={k}")
    return Fraction(comb(3 * k, k) * comb(2 * k, k), 27**k)


@dataclass(frozen=True)
class HarmonicTable:
    """H_0 .. H_max_index, built once and then read-only."""

    max_index: int
    values: List[Fraction] = field(repr=False)

    @classmethod
    def build(cls, max_index: int) -> "HarmonicTable":
        if max_index < 0:
            raise ValueError("max_index must be >= 0")
        values = [Fraction(0)]
        # running numerator/denominator avoids a gcd per step
        num, den = 0, 1
        for j in range(1, max_index + 1):
            num, den = num * j + den, den * j
            values.append(Fraction(num, den))
        return cls(max_index, values)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError(f"negative harmonic index {n}")
        return self.values[n]

    def __len__(self) -> int:
        return self.max_index + 1

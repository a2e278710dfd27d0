"""High-precision check of sum_k (4k+1) gamma_k / 81^k = 3 sqrt(3) / (2 pi).

Reals are fixed-point: an integer scaled by 10^digits.  Partial sums are
accumulated as exact fractions and rounded once at the end.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence

from .sequences import gamma_table

__all__ = [
    "HighPrecisionReal",
    "ConvergenceRecord",
    "pi_digits",
    "pi_machin",
    "pi_gauss",
    "target_value",
    "chan_verrill_partial",
    "convergence_report",
    "monotone_start",
]

MIN_DIGITS = 20
MAX_DIGITS = 1000
GUARD = 10


@dataclass(frozen=True, order=True)
class HighPrecisionReal:
    """The real number ``scaled / 10**digits``."""

    scaled: int
    digits: int

    @classmethod
    def from_fraction(cls, x: Fraction, digits: int) -> "HighPrecisionReal":
        return cls(round(x * 10**digits), digits)

    def to_fraction(self) -> Fraction:
        return Fraction(self.scaled, 10**self.digits)

    def _same(self, other: "HighPrecisionReal") -> None:
        if other.digits != self.digits:
            raise ValueError(f"precision mismatch: {self.digits} vs {other.digits}")

    def __sub__(self, other: "HighPrecisionReal") -> "HighPrecisionReal":
        self._same(other)
        return HighPrecisionReal(self.scaled - other.scaled, self.digits)

    def __add__(self, other: "HighPrecisionReal") -> "HighPrecisionReal":
        self._same(other)
        return HighPrecisionReal(self.scaled + other.scaled, self.digits)

    def __abs__(self) -> "HighPrecisionReal":
        return HighPrecisionReal(abs(self.scaled), self.digits)

    def __float__(self) -> float:
        return self.scaled / 10**self.digits

    def truncate(self, digits: int) -> "HighPrecisionReal":
        if digits > self.digits:
            raise ValueError("cannot add precision by truncation")
        return HighPrecisionReal(self.scaled // 10 ** (self.digits - digits), digits)

    def __str__(self) -> str:
        sign = "-" if self.scaled < 0 else ""
        whole, frac = divmod(abs(self.scaled), 10**self.digits)
        return f"{sign}{whole}.{frac:0{self.digits}d}"


def _check_digits(D: int) -> None:
    if not MIN_DIGITS <= D <= MAX_DIGITS:
        raise ValueError(f"digits must be in [{MIN_DIGITS}, {MAX_DIGITS}], got {D}")


def _arctan_inv(x: int, one: int) -> int:
    """arctan(1/x) * one in fixed point, by the alternating Taylor series."""
    power = one // x
    total = power
    x2 = x * x
    k = 1
    while power:
        power //= x2
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        k += 1
    return total


def _scaled_pi(formula: Sequence[tuple], digits: int) -> int:
    one = 10 ** (digits + GUARD)
    raw = sum(c * _arctan_inv(x, one) for c, x in formula)
    return raw // 10**GUARD


_MACHIN = ((16, 5), (-4, 239))
_GAUSS = ((48, 18), (32, 57), (-20, 239))


def pi_machin(D: int) -> HighPrecisionReal:
    return HighPrecisionReal(_scaled_pi(_MACHIN, D), D)


def pi_gauss(D: int) -> HighPrecisionReal:
    return HighPrecisionReal(_scaled_pi(_GAUSS, D), D)


def pi_digits(D: int) -> HighPrecisionReal:
    """pi truncated to D decimals, cross-checked between two arctangent formulas."""
    _check_digits(D)
    a, b = pi_machin(D), pi_gauss(D)
    if abs(a.scaled - b.scaled) > 1:
        raise ArithmeticError(f"pi formulas disagree at {D} digits")
    return a


def target_value(D: int) -> HighPrecisionReal:
    """3 sqrt(3) / (2 pi) truncated to D decimals."""
    _check_digits(D)
    W = D + GUARD
    one = 10**W
    sqrt3 = isqrt(3 * one * one)
    pi = pi_digits(W).scaled
    return HighPrecisionReal(3 * sqrt3 * one // (2 * pi) // 10**GUARD, D)


@dataclass(frozen=True)
class ConvergenceRecord:
    terms_used: int
    partial_sum: HighPrecisionReal
    target: HighPrecisionReal
    abs_error: HighPrecisionReal

    def to_record(self) -> dict:
        return {
            "terms": self.terms_used,
            "digits": self.partial_sum.digits,
            "partial_sum": str(self.partial_sum),
            "target": str(self.target),
            "abs_error": str(self.abs_error),
        }


def _exact_partial(N: int, gamma: Sequence[int]) -> Fraction:
    num = 0
    for k in range(N):
        num = num * 81 + (4 * k + 1) * gamma[k]
    return Fraction(num, 81 ** (N - 1))


def chan_verrill_partial(N: int, D: int, gamma: Optional[Sequence[int]] = None,
                         target: Optional[HighPrecisionReal] = None) -> ConvergenceRecord:
    """First N terms of the series, rounded once to D decimals."""
    if N < 1:
        raise ValueError(f"need at least one term, got N={N}")
    _check_digits(D)
    if gamma is None or len(gamma) < N:
        gamma = gamma_table(N - 1).values
    if target is None:
        target = target_value(D)
    partial = HighPrecisionReal.from_fraction(_exact_partial(N, gamma), D)
    return ConvergenceRecord(N, partial, target, abs(partial - target))


def convergence_report(D: int = 250, terms: Sequence[int] = range(10, 201, 10)) -> List[ConvergenceRecord]:
    terms = list(terms)
    gamma = gamma_table(max(terms) - 1).values
    target = target_value(D)
    return [chan_verrill_partial(N, D, gamma, target) for N in terms]


def monotone_start(errors: Sequence[HighPrecisionReal], start: int = 1) -> Optional[int]:
    """Smallest N0 with errors[N] strictly decreasing for N0 <= N < len(errors).

    ``errors[j]`` is the error after ``start + j`` terms.  Returns None if even
    the last step does not decrease.
    """
    scaled = [e.scaled for e in errors]
    j = len(scaled) - 1
    while j > 0 and scaled[j] < scaled[j - 1]:
        j -= 1
    if j == len(scaled) - 1:
        return None
    return start + j

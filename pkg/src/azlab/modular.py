"""Residues mod p^m, Legendre symbols, Fermat quotients and prime ranges."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List

__all__ = [
    "NotPIntegral",
    "PrimeModulus",
    "Residue",
    "is_prime",
    "legendre_symbol",
    "fermat_quotient",
    "mod_inverse",
    "reduce_rational",
    "prime_range",
]


class NotPIntegral(ArithmeticError):
    """Raised when a rational with p in its denominator is reduced mod p^m."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int
    m: int

    def __post_init__(self):
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"expected a prime p >= 5, got {self.p}")
        if self.m not in (1, 2, 3):
            raise ValueError(f"exponent must be 1, 2 or 3, got {self.m}")

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def residue(self, value: int) -> "Residue":
        return Residue(value % self.modulus, self)


@dataclass(frozen=True)
class Residue:
    value: int
    modulus_ref: PrimeModulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus_ref.modulus:
            raise ValueError(f"{self.value} not in [0, {self.modulus_ref.modulus})")

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus_ref != self.modulus_ref:
                raise ValueError("residues live in different rings")
            return other.value
        return int(other)

    def __add__(self, other):
        return self.modulus_ref.residue(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.modulus_ref.residue(self.value - self._coerce(other))

    def __mul__(self, other):
        return self.modulus_ref.residue(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.modulus_ref.residue(-self.value)

    def __int__(self) -> int:
        return self.value


def legendre_symbol(a: int, p: int) -> int:
    """(a/p) by Euler's criterion; returns -1, 0 or 1."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"legendre_symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def fermat_quotient(a: int, p: int, k: int = 1) -> Residue:
    """q_p(a) = (a^{p-1} - 1)/p reduced mod p^k, k in {1, 2}."""
    if k not in (1, 2):
        raise ValueError(f"fermat_quotient supports k in (1, 2), got {k}")
    if a % p == 0:
        raise ValueError(f"{p} divides {a}; Fermat quotient undefined")
    pm = PrimeModulus(p, k)
    top = pow(a, p - 1, p ** (k + 1))
    return pm.residue((top - 1) // p)


def mod_inverse(a: int, n: int) -> int:
    """Inverse of a mod n by the extended Euclidean algorithm."""
    r0, r1 = a % n, n
    s0, s1 = 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {n}")
    return s0 % n


def reduce_rational(r: Fraction | int, pm: PrimeModulus) -> Residue:
    r = Fraction(r)
    if r.denominator % pm.p == 0:
        raise NotPIntegral(f"{pm.p} divides the denominator of {r}")
    n = pm.modulus
    return pm.residue(r.numerator * mod_inverse(r.denominator, n))


def prime_range(lo: int, hi: int) -> List[int]:
    """Primes in [lo, hi], ascending (sieve of Eratosthenes)."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for q in range(2, isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(range(q * q, hi + 1, q)))
    return [q for q in range(max(lo, 2), hi + 1) if sieve[q]]

from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import assume, given, strategies as st

from azlab.modular import (
    NotPIntegral,
    PrimeModulus,
    Residue,
    fermat_quotient,
    legendre_symbol,
    mod_inverse,
    prime_range,
    reduce_rational,
)


def trial_primes(lo, hi):
    return [n for n in range(max(lo, 2), hi + 1) if all(n % d for d in range(2, isqrt(n) + 1))]


def test_legendre_examples():
    assert legendre_symbol(-3, 7) == 1
    assert legendre_symbol(-3, 5) == -1
    assert legendre_symbol(-3, 13) == 1
    assert legendre_symbol(21, 7) == 0
    with pytest.raises(ValueError):
        legendre_symbol(2, 9)


def test_legendre_against_squares():
    for p in prime_range(5, 100):
        squares = {x * x % p for x in range(1, p)}
        for a in range(-10, 11):
            expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
            assert legendre_symbol(a, p) == expected


def test_minus_three_character():
    for p in prime_range(5, 1000):
        chi = legendre_symbol(-3, p)
        assert (chi == 1) == (p % 3 == 1)
        assert chi == (-1) ** (p // 3)


def test_fermat_quotient_examples():
    assert fermat_quotient(3, 5, 1).value == 1
    assert fermat_quotient(3, 5, 2).value == 16
    assert fermat_quotient(2, 7, 1).value == 2
    with pytest.raises(ValueError):
        fermat_quotient(10, 5, 1)


def test_fermat_quotient_relation():
    for p in prime_range(5, 500):
        for a in (2, 3):
            q = fermat_quotient(a, p, 1).value
            assert pow(a, p - 1, p * p) == (1 + p * q) % (p * p)
            q2 = fermat_quotient(a, p, 2).value
            assert q2 == ((a ** (p - 1) - 1) // p) % (p * p)


def test_reduce_examples():
    assert reduce_rational(Fraction(11, 6), PrimeModulus(5, 2)).value == 6
    assert reduce_rational(Fraction(0), PrimeModulus(7, 3)).value == 0
    assert reduce_rational(Fraction(1, 81), PrimeModulus(5, 3)).value == 71
    assert reduce_rational(Fraction(-1, 2), PrimeModulus(5, 1)).value == 2


def test_reduce_rejects_p_in_denominator():
    with pytest.raises(NotPIntegral):
        reduce_rational(Fraction(1, 10), PrimeModulus(5, 1))


def test_mod_inverse_extended_euclid():
    assert mod_inverse(81, 125) == 71
    with pytest.raises(ZeroDivisionError):
        mod_inverse(10, 125)


def test_prime_modulus_validation():
    assert PrimeModulus(7, 3).modulus == 343
    for bad in [(4, 1), (3, 1), (9, 2), (7, 4), (7, 0)]:
        with pytest.raises(ValueError):
            PrimeModulus(*bad)


def test_residue_range_and_mixing():
    pm = PrimeModulus(5, 2)
    with pytest.raises(ValueError):
        Residue(25, pm)
    r = pm.residue(-1)
    assert r.value == 24
    assert (r + 1).value == 0 and (r * r).value == 1
    with pytest.raises(ValueError):
        r + PrimeModulus(7, 1).residue(1)


def test_prime_range_examples():
    assert prime_range(5, 20) == [5, 7, 11, 13, 17, 19]
    assert prime_range(24, 28) == []
    assert len(prime_range(5, 500)) == len(trial_primes(5, 500)) == 93
    assert prime_range(0, 1000) == trial_primes(0, 1000)


PRIMES = st.sampled_from(prime_range(5, 200))
RATS = st.fractions(max_denominator=10**6)


@given(PRIMES, st.integers(1, 3), RATS, RATS)
def test_reduce_is_ring_homomorphism(p, m, a, b):
    assume(a.denominator % p and b.denominator % p)
    pm = PrimeModulus(p, m)
    ra, rb = reduce_rational(a, pm), reduce_rational(b, pm)
    assert reduce_rational(a + b, pm) == ra + rb
    assert reduce_rational(a * b, pm) == ra * rb

"""Executable registry of the exact identities and congruences.

Identities are checked by evaluating both sides as exact rationals.
Congruence left-hand sides are evaluated exactly first and only then reduced
mod p^m, so partial cancellation of p-factors needs no valuation bookkeeping.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .exactnum import HarmonicTable, binomial, central_term, rising_factorial
from .modular import (
    PrimeModulus,
    Residue,
    fermat_quotient,
    is_prime,
    legendre_symbol,
    prime_range,
    reduce_rational,
)
from .sequences import g_table, gamma_table

__all__ = [
    "IdentityName",
    "IdentityResult",
    "CongruenceTarget",
    "CongruenceCheck",
    "Tables",
    "get_tables",
    "verify_identity",
    "identity_indices",
    "identity_sweep",
    "verify_congruence",
    "sweep",
    "PAPER_TARGETS",
]


# ---------------------------------------------------------------------------
# shared tables


@dataclass(frozen=True)
class Tables:
    """gamma_0..gamma_N, g_0..g_N and H_0..H_{3N}, read-only once built."""

    max_index: int
    gamma: Sequence[int] = field(repr=False)
    g: Sequence[int] = field(repr=False)
    H: HarmonicTable = field(repr=False)

    @classmethod
    def build(cls, max_index: int) -> "Tables":
        return cls(
            max_index,
            gamma_table(max_index).values,
            g_table(max_index).values,
            HarmonicTable.build(3 * max_index + 3),
        )

    def with_gamma_offset(self, index: int, delta: int) -> "Tables":
        """Copy with gamma_index shifted by delta; used for failure injection."""
        gamma = list(self.gamma)
        gamma[index] += delta
        return replace(self, gamma=gamma)

    def covers(self, p: int) -> bool:
        return self.max_index >= p


_shared: Optional[Tables] = None


def get_tables(p: int) -> Tables:
    """Shared tables large enough for prime p, grown (doubling) on demand."""
    global _shared
    if _shared is None or not _shared.covers(p):
        size = p if _shared is None else max(p, 2 * _shared.max_index)
        _shared = Tables.build(size)
    return _shared


# ---------------------------------------------------------------------------
# exact identities


class IdentityName(enum.Enum):
    BB1 = "bb1"
    BB2 = "bb2"
    BB3 = "bb3"
    TAURASO_BB6 = "tauraso_bb6"
    CC3 = "cc3"
    DD3 = "dd3"
    EE3 = "ee3"
    REMARK_ALT = "remark_alt"
    RED_CC4 = "red_cc4"
    RED_DD = "red_dd"
    RED_EE = "red_ee"
    RED_REMARK = "red_remark"

    @property
    def indexed(self) -> bool:
        return self in _INDEXED


_INDEXED = frozenset(
    {IdentityName.CC3, IdentityName.DD3, IdentityName.EE3, IdentityName.REMARK_ALT}
)


class IdentityResult(NamedTuple):
    name: IdentityName
    n: int
    i: Optional[int]
    lhs: Fraction
    rhs: Fraction
    holds: bool

    def to_record(self) -> dict:
        return {
            "name": self.name.value,
            "n": self.n,
            "i": self.i,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "holds": self.holds,
        }


def _alt_core(n: int, i: int) -> int:
    # (-1)^i C(n,i) C(n+i,i)
    v = comb(n, i) * comb(n + i, i)
    return -v if i % 2 else v


def _neg3_pow(e: int) -> Fraction:
    return Fraction(-3) ** e


def _quartic(i: int) -> int:
    return comb(2 * i, i) ** 2 * comb(4 * i, 2 * i)


def _sides(name: IdentityName, n: int, i: Optional[int], gamma: Sequence[int], H) -> Tuple[Fraction, Fraction]:
    sign_n = -1 if n % 2 else 1
    if name is IdentityName.BB1:
        return Fraction(sum(_alt_core(n, j) for j in range(n + 1))), Fraction(sign_n)
    if name is IdentityName.BB2:
        lhs = sum((_alt_core(n, j) * H[j] for j in range(n + 1)), Fraction(0))
        return lhs, 2 * sign_n * H[n]
    if name is IdentityName.BB3:
        lhs = sum((_alt_core(n, j) * H[n + j] for j in range(n + 1)), Fraction(0))
        return lhs, 2 * sign_n * H[n]
    if name is IdentityName.TAURASO_BB6:
        k = n
        third, two_thirds = Fraction(1, 3), Fraction(2, 3)

        def poch(j):
            return rising_factorial(third, j) * rising_factorial(two_thirds, j) / rising_factorial(1, j) ** 2

        inner = sum((1 / (third + j) + 1 / (two_thirds + j) for j in range(k)), Fraction(0))
        rhs = sum((poch(j) / (k - j) for j in range(k)), Fraction(0))
        return poch(k) * inner, rhs
    if name is IdentityName.CC3:
        lhs = sum(((4 * k + 1) * _neg3_pow(-k) * binomial(k + 3 * i, 4 * i) for k in range(i, n)), Fraction(0))
        return lhs, (n - i) * binomial(n + 3 * i, 4 * i) * _neg3_pow(1 - n)
    if name is IdentityName.DD3:
        lhs = sum(((-3) ** k * (4 * k + 3) * binomial(k + i, 4 * i) for k in range(i, n)))
        return Fraction(lhs), 3 * (n - 3 * i) * binomial(n + i, 4 * i) * _neg3_pow(n - 1)
    if name is IdentityName.EE3:
        c = comb(2 * i, i)
        lhs = sum((2 * k + 1) * binomial(k + i, 2 * i) * c for k in range(i, n))
        return Fraction(lhs), Fraction(n * n, i + 1) * binomial(n - 1, i) * binomial(n + i, i)
    if name is IdentityName.REMARK_ALT:
        c = comb(2 * i, i)
        lhs = sum((-1) ** k * (2 * k + 1) * binomial(k + i, 2 * i) * c for k in range(i, n))
        return Fraction(lhs), Fraction(-sign_n * n * binomial(n - 1, i) * binomial(n + i, i))
    if name is IdentityName.RED_CC4:
        lhs = sum((Fraction(4 * k + 1, 81**k) * gamma[k] for k in range(n)), Fraction(0))
        rhs = sum(
            ((n - j) * _neg3_pow(-3 * j) * _quartic(j) * binomial(n + 3 * j, 4 * j) for j in range(n)),
            Fraction(0),
        )
        # (-3)^{1-n}; the sign drops out only for odd n
        return lhs, _neg3_pow(1 - n) * rhs
    if name is IdentityName.RED_DD:
        lhs = Fraction(sum((4 * k + 3) * gamma[k] for k in range(n)))
        rhs = sum(
            ((n - 3 * j) * _neg3_pow(-3 * j) * _quartic(j) * binomial(n + j, 4 * j) for j in range(n // 3 + 1)),
            Fraction(0),
        )
        return lhs, 3 * _neg3_pow(n - 1) * rhs
    if name is IdentityName.RED_EE:
        lhs = sum((Fraction(2 * k + 1) * _nine_pow(-k, True) * gamma[k] for k in range(n)), Fraction(0))
        g = _g_list(n)
        rhs = sum(
            (Fraction(g[j], j + 1) * _nine_pow(-j, True) * comb(n - 1, j) * comb(n + j, j) for j in range(n)),
            Fraction(0),
        )
        return lhs, n * n * rhs
    if name is IdentityName.RED_REMARK:
        lhs = sum((Fraction(2 * k + 1, 9**k) * gamma[k] for k in range(n)), Fraction(0))
        g = _g_list(n)
        rhs = sum(
            (Fraction((-1) ** j * g[j], 9**j) * comb(n - 1, j) * comb(n + j, j) for j in range(n)),
            Fraction(0),
        )
        return lhs, -sign_n * n * rhs
    raise ValueError(f"unknown identity {name!r}")


def _nine_pow(e: int, negative: bool) -> Fraction:
    return Fraction(-9 if negative else 9) ** e


def _g_list(n: int) -> Sequence[int]:
    return get_tables(max(n, 5)).g


def identity_indices(name: IdentityName, n: int) -> List[Optional[int]]:
    """Admissible second indices for ``name`` at ``n``."""
    return list(range(n)) if name.indexed else [None]


def verify_identity(name: IdentityName, n: int, i: Optional[int] = None,
                    tables: Optional[Tables] = None) -> IdentityResult:
    name = IdentityName(name)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if name.indexed:
        if i is None or not 0 <= i <= n - 1:
            raise ValueError(f"{name.name} needs 0 <= i <= n-1, got i={i}, n={n}")
    elif i is not None:
        raise ValueError(f"{name.name} takes no index i")
    if tables is None or tables.max_index < n:
        tables = get_tables(max(n, 5))
    H = tables.H if len(tables.H) > 2 * n else HarmonicTable.build(2 * n)
    lhs, rhs = _sides(name, n, i, tables.gamma, H)
    return IdentityResult(name, n, i, lhs, rhs, lhs == rhs)


def identity_sweep(names: Iterable[IdentityName], max_n: int,
                   min_n: int = 0) -> Iterator[IdentityResult]:
    """Every (name, n, i) with min_n <= n <= max_n, ordered by (name, n, i)."""
    tables = get_tables(max(max_n, 5))
    for name in sorted(set(IdentityName(x) for x in names), key=_ID_ORDER.index):
        for n in range(min_n, max_n + 1):
            for i in identity_indices(name, n):
                yield verify_identity(name, n, i, tables)


_ID_ORDER = list(IdentityName)


# ---------------------------------------------------------------------------
# congruences


class CongruenceTarget(enum.Enum):
    THM1 = "thm1"
    THM2 = "thm2"
    THM3 = "thm3"
    CONJ_EE6 = "conj_ee6"
    LEMMA_BB4 = "lemma_bb4"
    MORTENSON = "mortenson"
    LEHMER_BB11 = "lehmer_bb11"
    SIGN_BB10 = "sign_bb10"
    BB9 = "bb9"
    DD5 = "dd5"
    DD7 = "dd7"
    H_REFLECT = "h_reflect"
    BINOM_PM1 = "binom_pm1"
    STEP_CC = "step_cc"
    STEP_DD = "step_dd"
    JV_REFLECT = "jv_reflect"
    SUM_G_OVER_I = "sum_g_over_i"
    EE5_VANISH = "ee5_vanish"
    SUN_G_PM1 = "sun_g_pm1"
    # sum_{i<p} g_i/9^i = (-3/p) mod p^2, equivalent to CONJ_EE6
    SUM_G_NINE = "sum_g_nine"

    @property
    def exponent(self) -> int:
        return _EXPONENT[self]

    @property
    def conjecture(self) -> bool:
        return self in (CongruenceTarget.CONJ_EE6, CongruenceTarget.SUM_G_NINE)


_EXPONENT = {
    CongruenceTarget.THM1: 3,
    CongruenceTarget.THM2: 3,
    CongruenceTarget.THM3: 3,
    CongruenceTarget.CONJ_EE6: 3,
    CongruenceTarget.LEMMA_BB4: 1,
    CongruenceTarget.MORTENSON: 2,
    CongruenceTarget.LEHMER_BB11: 2,
    CongruenceTarget.SIGN_BB10: 1,
    CongruenceTarget.BB9: 1,
    CongruenceTarget.DD5: 2,
    CongruenceTarget.DD7: 1,
    CongruenceTarget.H_REFLECT: 1,
    CongruenceTarget.BINOM_PM1: 2,
    CongruenceTarget.STEP_CC: 3,
    CongruenceTarget.STEP_DD: 3,
    CongruenceTarget.JV_REFLECT: 1,
    CongruenceTarget.SUM_G_OVER_I: 1,
    CongruenceTarget.EE5_VANISH: 1,
    CongruenceTarget.SUN_G_PM1: 2,
    CongruenceTarget.SUM_G_NINE: 2,
}

# the nineteen targets stated in the source; SUM_G_NINE is an extra
PAPER_TARGETS = tuple(t for t in CongruenceTarget if t is not CongruenceTarget.SUM_G_NINE)
_TARGET_ORDER = list(CongruenceTarget)


@dataclass(frozen=True)
class CongruenceCheck:
    target: CongruenceTarget
    p: int
    m: int
    lhs: Residue
    rhs: Residue
    holds: bool
    first_failing_index: Optional[int] = None

    @property
    def conjecture(self) -> bool:
        return self.target.conjecture

    def to_record(self) -> dict:
        return {
            "target": self.target.value,
            "p": self.p,
            "m": self.m,
            "lhs": str(self.lhs.value),
            "rhs": str(self.rhs.value),
            "holds": self.holds,
            "first_failing_index": self.first_failing_index,
            "conjecture": self.conjecture,
        }


def _power_sum(coeffs: Iterable[int], base: int, count: int) -> Fraction:
    """sum_{k<count} c_k / base^k for c_0, c_1, ... given in order, exactly."""
    num = 0
    for c in coeffs:
        num = num * base + c
    return Fraction(num, base ** (count - 1))


def _desc(seq: List[int]) -> List[int]:
    return seq[::-1]


def _single(p, pm, lhs, rhs) -> Tuple[Residue, Residue, bool, None]:
    a, b = reduce_rational(lhs, pm), reduce_rational(rhs, pm)
    return a, b, a == b, None


def _indexed(pm, pairs: Iterable[Tuple[int, Callable[[], Fraction], Callable[[], Fraction]]]):
    a = b = None
    for idx, lhs, rhs in pairs:
        a, b = reduce_rational(lhs(), pm), reduce_rational(rhs(), pm)
        if a != b:
            return a, b, False, idx
    return a, b, True, None


def _evaluate(target: CongruenceTarget, p: int, t: Tables):
    pm = PrimeModulus(p, target.exponent)
    chi = legendre_symbol(-3, p)
    m = p // 3
    H, gamma, g = t.H, t.gamma, t.g
    T = CongruenceTarget

    if target is T.THM1:
        lhs = _power_sum(((4 * k + 1) * gamma[k] for k in range(p)), 81, p)
        return _single(p, pm, lhs, chi * p)
    if target is T.THM2:
        return _single(p, pm, sum((4 * k + 3) * gamma[k] for k in range(p)), 3 * chi * p)
    if target is T.THM3:
        lhs = _power_sum(((2 * k + 1) * gamma[k] for k in range(p)), -9, p)
        return _single(p, pm, lhs, chi * p)
    if target is T.CONJ_EE6:
        lhs = _power_sum(((2 * k + 1) * gamma[k] for k in range(p)), 9, p)
        return _single(p, pm, lhs, chi * p)
    if target is T.SUM_G_NINE:
        return _single(p, pm, _power_sum((g[i] for i in range(p)), 9, p), chi)
    if target is T.LEMMA_BB4:
        lhs = sum((central_term(k) * (H[3 * k] - H[k]) for k in range(p)), Fraction(0))
        return _single(p, pm, lhs, chi * fermat_quotient(3, p, 1).value)
    if target is T.MORTENSON:
        lhs = _power_sum((comb(3 * i, i) * comb(2 * i, i) for i in range(p)), 27, p)
        return _single(p, pm, lhs, chi)
    if target is T.LEHMER_BB11:
        q = fermat_quotient(3, p, 2).value
        return _single(p, pm, H[m], Fraction(-3 * q, 2))
    if target is T.SIGN_BB10:
        lhs = -1 if m % 2 else 1
        a, b = pm.residue(lhs), pm.residue(chi)
        return a, b, lhs == chi, None
    if target is T.BB9:
        return _indexed(pm, (
            (k, lambda k=k: central_term(k), lambda k=k: Fraction(_alt_core(m, k)))
            for k in range(m + 1)))
    if target is T.DD5:
        return _indexed(pm, (
            (i, lambda i=i: central_term(i),
             lambda i=i: _alt_core(m, i) * (1 - Fraction(p, 3) * (H[m + i] - H[m - i])))
            for i in range(m + 1)))
    if target is T.DD7:
        return _indexed(pm, (
            (i, lambda i=i: H[3 * i],
             lambda i=i: (H[i] + H[m + i] + H[m - i] - 2 * H[m]) / 3)
            for i in range(m + 1)))
    if target is T.H_REFLECT:
        return _indexed(pm, ((j, lambda j=j: H[p - 1 - j], lambda j=j: H[j]) for j in range(p)))
    if target is T.BINOM_PM1:
        return _indexed(pm, (
            (i, lambda i=i: Fraction(comb(p - 1, i) * comb(p + i, i)), lambda i=i: Fraction((-1) ** i))
            for i in range(p)))
    if target is T.STEP_CC:
        return _indexed(pm, (
            (i,
             lambda i=i: Fraction((-1) ** i * (p - i) * _quartic(i) * comb(p + 3 * i, 4 * i)),
             lambda i=i: p * comb(3 * i, i) * comb(2 * i, i) * (1 + p * (H[3 * i] - H[i])))
            for i in range(p)))
    if target is T.STEP_DD:
        return _indexed(pm, (
            (i,
             lambda i=i: Fraction((-1) ** i * (p - 3 * i) * _quartic(i) * comb(p + i, 4 * i)),
             lambda i=i: p * comb(3 * i, i) * comb(2 * i, i) * (1 - p * (H[3 * i] - H[i])))
            for i in range(m + 1)))
    if target is T.JV_REFLECT:
        return _indexed(pm, (
            (i, lambda i=i: Fraction(g[i], 9**i), lambda i=i: Fraction(chi * g[p - 1 - i]))
            for i in range(p)))
    if target is T.SUM_G_OVER_I:
        den = factorial(p - 1)
        return _single(p, pm, Fraction(sum(g[i] * (den // i) for i in range(1, p)), den), 0)
    if target is T.EE5_VANISH:
        den = factorial(p - 1)
        lhs = _power_sum((g[i] * (den // (i + 1)) for i in range(p - 1)), 9, p - 1)
        return _single(p, pm, lhs / den, 0)
    if target is T.SUN_G_PM1:
        return _single(p, pm, g[p - 1], chi * (2 * 3 ** (p - 1) - 1))
    raise ValueError(f"unknown target {target!r}")


def verify_congruence(target: CongruenceTarget, p: int,
                      tables: Optional[Tables] = None) -> CongruenceCheck:
    """Check one target at one prime p >= 5.

    For targets quantified over an index range, ``holds`` means every index
    passed; the residues reported are those of the first failing index, or of
    the last index when all pass.
    """
    target = CongruenceTarget(target)
    if p < 5 or not is_prime(p):
        raise ValueError(f"congruences are checked for primes p >= 5, got {p}")
    if tables is None:
        tables = get_tables(p)
    elif not tables.covers(p):
        raise ValueError(f"tables cover indices <= {tables.max_index}, need {p}")
    lhs, rhs, holds, bad = _evaluate(target, p, tables)
    return CongruenceCheck(target, p, target.exponent, lhs, rhs, holds, bad)


_worker_tables: Optional[Tables] = None


def _init_worker(tables: Tables) -> None:
    global _worker_tables
    _worker_tables = tables


def _run_task(task: Tuple[CongruenceTarget, int]) -> CongruenceCheck:
    return verify_congruence(task[0], task[1], _worker_tables)


def sweep(targets: Iterable[CongruenceTarget], lo: int, hi: int,
          tables: Optional[Tables] = None, jobs: int = 1) -> List[CongruenceCheck]:
    """One check per (target, prime), ordered by target then ascending prime."""
    targets = sorted({CongruenceTarget(t) for t in targets}, key=_TARGET_ORDER.index)
    primes = prime_range(max(lo, 5), hi)
    if not targets or not primes:
        return []
    if tables is None:
        tables = get_tables(primes[-1])
    tasks = [(t, p) for t in targets for p in primes]
    if jobs <= 1:
        return [verify_congruence(t, p, tables) for t, p in tasks]
    with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(tables,)) as pool:
        results = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    results.sort(key=lambda c: (_TARGET_ORDER.index(c.target), c.p))
    return results
